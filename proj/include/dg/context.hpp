#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dg {

struct Coordinate {
    std::string name;
    int degree = 0;
};

/// Ordered chart of graded coordinates. Declaration order is the canonical
/// monomial ordering; the object is immutable after construction and cheap to
/// copy (shared storage).
class Context {
public:
    Context() = default;
    explicit Context(std::vector<Coordinate> coords);

    int size() const { return static_cast<int>(data_->coords.size()); }
    const Coordinate& coord(int i) const { return data_->coords[static_cast<size_t>(i)]; }
    const std::string& name(int i) const { return coord(i).name; }
    int degree(int i) const { return coord(i).degree; }
    /// 0 for even coordinates, 1 for odd ones (degree mod 2, sign-safe).
    int parity(int i) const { return ((coord(i).degree % 2) + 2) % 2; }

    std::optional<int> index_of(std::string_view name) const;

    bool same_as(const Context& other) const;

    /// Doubled chart {x_i} ∪ {dx_i} with |dx_i| = |x_i| + 1, used for forms.
    /// The first size() coordinates are the originals, then the differentials.
    Context with_differentials() const;

    /// True if some nonzero polynomial of the given degree exists in this
    /// chart (odd coordinates contribute at most once, even ones freely).
    bool degree_realizable(int target) const;

    /// All coordinates of strictly positive degree (finite slices guarantee).
    bool all_positive_degrees() const;

private:
    struct Data {
        std::vector<Coordinate> coords;
    };
    std::shared_ptr<const Data> data_ = std::make_shared<Data>();
};

}  // namespace dg
