#include "dg/context.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dg {

namespace {

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; };
    if (!alpha(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), alnum);
}

}  // namespace

Context::Context(std::vector<Coordinate> coords) {
    std::set<std::string> seen;
    for (const auto& c : coords) {
        if (!valid_name(c.name))
            throw std::invalid_argument("invalid coordinate name '" + c.name + "'");
        if (!seen.insert(c.name).second)
            throw std::invalid_argument("duplicate coordinate name '" + c.name + "'");
    }
    auto d = std::make_shared<Data>();
    d->coords = std::move(coords);
    data_ = std::move(d);
}

std::optional<int> Context::index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
        if (data_->coords[static_cast<size_t>(i)].name == name) return i;
    return std::nullopt;
}

bool Context::same_as(const Context& other) const {
    if (data_ == other.data_) return true;
    if (size() != other.size()) return false;
    for (int i = 0; i < size(); ++i)
        if (coord(i).name != other.coord(i).name || coord(i).degree != other.coord(i).degree)
            return false;
    return true;
}

Context Context::with_differentials() const {
    std::vector<Coordinate> coords = data_->coords;
    for (int i = 0; i < size(); ++i)
        coords.push_back({"d" + name(i), degree(i) + 1});
    return Context(std::move(coords));  // ctor rejects name collisions
}

bool Context::all_positive_degrees() const {
    for (int i = 0; i < size(); ++i)
        if (degree(i) <= 0) return false;
    return size() > 0 || true;
}

// Decides whether target = sum e_i * degree(i) with e_i >= 0 and e_i <= 1 on
// odd coordinates. Odd coordinates are finitely many on/off choices; even
// nonzero degrees form an unbounded knapsack, which collapses to a gcd
// divisibility test when both signs are present.
bool Context::degree_realizable(int target) const {
    std::vector<int> odd, even;
    bool has_zero_degree = false;
    for (int i = 0; i < size(); ++i) {
        int d = degree(i);
        if (parity(i) == 1)
            odd.push_back(d);
        else if (d == 0)
            has_zero_degree = true;
        else
            even.push_back(d);
    }
    (void)has_zero_degree;  // degree-0 coordinates never change reachability

    // Subset sums of the odd degrees.
    std::set<int> odd_sums = {0};
    for (int d : odd) {
        std::set<int> next = odd_sums;
        for (int s : odd_sums) next.insert(s + d);
        odd_sums = next;
    }

    bool any_pos = std::any_of(even.begin(), even.end(), [](int d) { return d > 0; });
    bool any_neg = std::any_of(even.begin(), even.end(), [](int d) { return d < 0; });

    for (int s : odd_sums) {
        int rest = target - s;
        if (rest == 0) return true;
        if (even.empty()) continue;
        if (any_pos && any_neg) {
            int g = 0;
            for (int d : even) g = std::gcd(g, d);
            if (rest % g == 0) return true;
            continue;
        }
        // Single-signed generators: bounded DP.
        int sign = any_pos ? 1 : -1;
        if (rest * sign < 0) continue;
        int r = rest * sign;
        std::vector<char> reach(static_cast<size_t>(r) + 1, 0);
        reach[0] = 1;
        for (int d : even) {
            int step = d * sign;
            for (int v = step; v <= r; ++v)
                if (reach[static_cast<size_t>(v - step)]) reach[static_cast<size_t>(v)] = 1;
        }
        if (reach[static_cast<size_t>(r)]) return true;
    }
    return false;
}

}  // namespace dg
