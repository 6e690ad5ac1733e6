#pragma once

#include <optional>
#include <vector>

#include "dg/rational.hpp"

namespace dg {

/// Dense exact-rational matrix, row major.
class QMatrix {
public:
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Rational(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rational& at(int r, int c) const {
        return data_[static_cast<size_t>(r) * cols_ + static_cast<size_t>(c)];
    }
    Rational& at(int r, int c) {
        return data_[static_cast<size_t>(r) * cols_ + static_cast<size_t>(c)];
    }

    int rank() const;

    /// One solution of A x = b, if any.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

    std::vector<Rational> apply(const std::vector<Rational>& x) const;

    static QMatrix compose(const QMatrix& a, const QMatrix& b);  // a * b

private:
    int rows_, cols_;
    std::vector<Rational> data_;
};

}  // namespace dg
