#include "dg/connection.hpp"

#include <stdexcept>

#include "dg/atiyah.hpp"

namespace dg {

Connection::Connection(const Context& ctx) : ctx_(ctx) {
    size_t n = static_cast<size_t>(ctx.size());
    gamma_.assign(n * n * n, Polynomial::zero(ctx));
}

size_t Connection::idx(int i, int j, int k) const {
    size_t n = static_cast<size_t>(ctx_.size());
    return (static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k);
}

int Connection::required_degree(int i, int j, int k) const {
    return ctx_.degree(k) - ctx_.degree(i) - ctx_.degree(j);
}

Connection::Connection(const Context& ctx,
                       const std::map<std::tuple<int, int, int>, Polynomial>& gamma)
    : Connection(ctx) {
    for (const auto& [key, p] : gamma) {
        auto [k, i, j] = key;
        set_gamma(i, j, k, p);
    }
}

void Connection::set_gamma(int i, int j, int k, Polynomial p) {
    require_same_context(ctx_, p.context(), "Connection::set_gamma");
    if (i < 0 || j < 0 || k < 0 || i >= ctx_.size() || j >= ctx_.size() || k >= ctx_.size())
        throw std::invalid_argument("Christoffel index out of range");
    if (!p.is_zero()) {
        int want = required_degree(i, j, k);
        if (!p.is_homogeneous_of_degree(want))
            throw std::invalid_argument(
                "Gamma^" + ctx_.name(k) + "_{" + ctx_.name(i) + "," + ctx_.name(j) +
                "} must be homogeneous of degree " + std::to_string(want) + ", got " +
                p.to_string());
        if (!ctx_.degree_realizable(want))
            throw std::invalid_argument("Gamma^" + ctx_.name(k) + "_{" + ctx_.name(i) + "," +
                                        ctx_.name(j) + "} has unrealizable degree " +
                                        std::to_string(want) + " and must vanish");
    }
    gamma_[idx(i, j, k)] = std::move(p);
}

const Polynomial& Connection::gamma(int i, int j, int k) const { return gamma_[idx(i, j, k)]; }

bool Connection::is_trivial() const {
    for (const auto& p : gamma_)
        if (!p.is_zero()) return false;
    return true;
}

VectorField Connection::nabla(const VectorField& X, const VectorField& Y) const {
    require_same_context(ctx_, X.context(), "Connection::nabla");
    require_same_context(ctx_, Y.context(), "Connection::nabla");
    const int n = ctx_.size();
    VectorField out(ctx_);
    for (int i = 0; i < n; ++i) {
        const Polynomial& xi = X.coeff(i);
        if (xi.is_zero()) continue;
        VectorField di(ctx_);  // nabla_{d/dx_i} Y
        for (int j = 0; j < n; ++j) {
            const Polynomial& yj = Y.coeff(j);
            if (yj.is_zero()) continue;
            di.set_coeff(j, di.coeff(j) + yj.partial(i));
            auto [ye, yo] = yj.parity_split();
            for (int k = 0; k < n; ++k) {
                const Polynomial& g = gamma(i, j, k);
                if (g.is_zero()) continue;
                Polynomial c = ye * g;
                if (!yo.is_zero()) {
                    Polynomial oc = yo * g;
                    if (ctx_.parity(i) == 1) oc = -oc;
                    c += oc;
                }
                di.set_coeff(k, di.coeff(k) + c);
            }
        }
        out += di.mul_left(xi);
    }
    return out;
}

FrameTensor torsion(const Connection& nabla) {
    const Context& ctx = nabla.context();
    const int n = ctx.size();
    FrameTensor t(ctx, Frame::tangent(ctx), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Polynomial swapped = nabla.gamma(j, i, k);
                if ((ctx.parity(i) & ctx.parity(j)) == 1) swapped = -swapped;
                t.set_entry(i, k, j, nabla.gamma(i, j, k) - swapped);
            }
    return t;
}

bool is_torsion_free(const Connection& nabla) { return torsion(nabla).is_zero(); }

Connection opposite(const Connection& nabla) {
    const Context& ctx = nabla.context();
    const int n = ctx.size();
    Connection out(ctx);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Polynomial g = nabla.gamma(j, i, k);
                if ((ctx.parity(i) & ctx.parity(j)) == 1) g = -g;
                out.set_gamma(i, j, k, g);
            }
    return out;
}

Connection symmetrize(const Connection& nabla) {
    const Context& ctx = nabla.context();
    const int n = ctx.size();
    Connection op = opposite(nabla);
    Connection out(ctx);
    Rational half(1, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out.set_gamma(i, j, k, (nabla.gamma(i, j, k) + op.gamma(i, j, k)) * half);
    return out;
}

bool only_trivial_connection(const Context& ctx) {
    const int n = ctx.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (ctx.degree_realizable(ctx.degree(k) - ctx.degree(i) - ctx.degree(j)))
                    return false;
    return true;
}

}  // namespace dg
