#include "dg/linalg.hpp"

#include <stdexcept>

namespace dg {

namespace {

// Row echelon form in place; returns pivot column per pivot row.
std::vector<int> echelon(std::vector<std::vector<Rational>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = -1;
        for (int r = row; r < rows; ++r)
            if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(m[static_cast<size_t>(row)], m[static_cast<size_t>(p)]);
        Rational inv = Rational(1) / m[static_cast<size_t>(row)][static_cast<size_t>(col)];
        for (int c = col; c < cols; ++c) m[static_cast<size_t>(row)][static_cast<size_t>(c)] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            Rational f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < cols; ++c)
                m[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * m[static_cast<size_t>(row)][static_cast<size_t>(c)];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int QMatrix::rank() const {
    std::vector<std::vector<Rational>> m(static_cast<size_t>(rows_),
                                         std::vector<Rational>(static_cast<size_t>(cols_)));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m[static_cast<size_t>(r)][static_cast<size_t>(c)] = at(r, c);
    return static_cast<int>(echelon(m).size());
}

std::optional<std::vector<Rational>> QMatrix::solve(const std::vector<Rational>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("solve: shape mismatch");
    std::vector<std::vector<Rational>> m(static_cast<size_t>(rows_),
                                         std::vector<Rational>(static_cast<size_t>(cols_) + 1));
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) m[static_cast<size_t>(r)][static_cast<size_t>(c)] = at(r, c);
        m[static_cast<size_t>(r)][static_cast<size_t>(cols_)] = b[static_cast<size_t>(r)];
    }
    auto pivots = echelon(m);
    // Inconsistent iff a pivot lands in the augmented column.
    for (int col : pivots)
        if (col == cols_) return std::nullopt;
    std::vector<Rational> x(static_cast<size_t>(cols_), Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = m[r][static_cast<size_t>(cols_)];
    return x;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("apply: shape mismatch");
    std::vector<Rational> y(static_cast<size_t>(rows_), Rational(0));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (at(r, c) != 0) y[static_cast<size_t>(r)] += at(r, c) * x[static_cast<size_t>(c)];
    return y;
}

QMatrix QMatrix::compose(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("compose: shape mismatch");
    QMatrix out(a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(r, k) == 0) continue;
            for (int c = 0; c < b.cols(); ++c)
                if (b.at(k, c) != 0) out.at(r, c) += a.at(r, k) * b.at(k, c);
        }
    return out;
}

}  // namespace dg
