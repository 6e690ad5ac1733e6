#include "dg/polynomial.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dg {

void require_same_context(const Context& a, const Context& b, const char* where) {
    if (!a.same_as(b))
        throw std::invalid_argument(std::string(where) + ": operands live in different charts");
}

bool Monomial::is_one() const {
    for (int e : exps_)
        if (e != 0) return false;
    return true;
}

int Monomial::total_exponent() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

int Monomial::degree(const Context& ctx) const {
    int d = 0;
    for (int i = 0; i < n_coords(); ++i) d += exp(i) * ctx.degree(i);
    return d;
}

int Monomial::parity(const Context& ctx) const {
    int p = 0;
    for (int i = 0; i < n_coords(); ++i) p += exp(i) * ctx.parity(i);
    return p & 1;
}

bool Monomial::operator<(const Monomial& rhs) const {
    int ta = total_exponent(), tb = rhs.total_exponent();
    if (ta != tb) return ta < tb;
    return exps_ < rhs.exps_;
}

std::optional<std::pair<Monomial, int>> Monomial::mul(const Monomial& a, const Monomial& b,
                                                      const Context& ctx) {
    const int n = a.n_coords();
    Monomial out(n);
    // Count transpositions: each odd factor x_i of b crosses every odd factor
    // x_j of a with j > i.
    long crossings = 0;
    long odd_tail = 0;  // odd factors of a with index > current i
    for (int i = 0; i < n; ++i)
        if (ctx.parity(i) == 1) odd_tail += a.exp(i);
    for (int i = 0; i < n; ++i) {
        if (ctx.parity(i) == 1) {
            odd_tail -= a.exp(i);
            if (b.exp(i) > 0) {
                if (a.exp(i) + b.exp(i) > 1) return std::nullopt;  // odd square
                crossings += odd_tail;
            }
        }
        out.set_exp(i, a.exp(i) + b.exp(i));
    }
    return std::make_pair(out, (crossings & 1) ? -1 : 1);
}

Polynomial Polynomial::constant(const Context& ctx, const Rational& c) {
    Polynomial p(ctx);
    p.add_term(Monomial(ctx.size()), c);
    return p;
}

Polynomial Polynomial::coordinate(const Context& ctx, int i, int power) {
    if (i < 0 || i >= ctx.size()) throw std::invalid_argument("coordinate index out of range");
    if (power < 0) throw std::invalid_argument("negative exponent");
    if (ctx.parity(i) == 1 && power > 1)
        throw std::invalid_argument("exponent >= 2 on odd coordinate '" + ctx.name(i) + "'");
    Polynomial p(ctx);
    if (power == 0) return constant(ctx, 1);
    Monomial m(ctx.size());
    m.set_exp(i, power);
    p.add_term(m, 1);
    return p;
}

Polynomial Polynomial::monomial(const Context& ctx, const Monomial& m, const Rational& c) {
    Polynomial p(ctx);
    p.add_term(m, c);
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    Polynomial out = *this;
    out += rhs;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (ctx_.size() == 0 && terms_.empty()) ctx_ = rhs.ctx_;
    require_same_context(ctx_, rhs.ctx_, "add");
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (ctx_.size() == 0 && terms_.empty()) ctx_ = rhs.ctx_;
    require_same_context(ctx_, rhs.ctx_, "sub");
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    Polynomial out = *this;
    out -= rhs;
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(ctx_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    require_same_context(ctx_, rhs.ctx_, "mul");
    Polynomial out(ctx_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : rhs.terms_) {
            auto prod = Monomial::mul(ma, mb, ctx_);
            if (!prod) continue;
            out.add_term(prod->first, ca * cb * prod->second);
        }
    return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial out(ctx_);
    if (c == 0) return out;
    for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
    return out;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    if (!ctx_.same_as(rhs.ctx_)) return false;
    return terms_ == rhs.terms_;
}

Polynomial Polynomial::partial(int i) const {
    if (i < 0 || i >= ctx_.size()) throw std::invalid_argument("coordinate index out of range");
    Polynomial out(ctx_);
    const int pi = ctx_.parity(i);
    for (const auto& [m, c] : terms_) {
        int e = m.exp(i);
        if (e == 0) continue;
        // Sign: one occurrence of x_i crosses everything to its left.
        int sign = 1;
        if (pi == 1) {
            long left = 0;
            for (int j = 0; j < i; ++j) left += m.exp(j) * ctx_.parity(j);
            sign = (left & 1) ? -1 : 1;
        }
        Monomial d = m;
        d.set_exp(i, e - 1);
        out.add_term(d, c * e * sign);
    }
    return out;
}

Polynomial::Degree Polynomial::degree_of() const {
    if (terms_.empty()) return {Degree::Kind::zero, 0};
    bool first = true;
    int deg = 0;
    for (const auto& [m, c] : terms_) {
        int d = m.degree(ctx_);
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return {Degree::Kind::inhomogeneous, 0};
        }
    }
    return {Degree::Kind::homogeneous, deg};
}

bool Polynomial::is_homogeneous_of_degree(int d) const {
    auto dg = degree_of();
    return dg.kind == Degree::Kind::zero ||
           (dg.kind == Degree::Kind::homogeneous && dg.value == d);
}

std::pair<Polynomial, Polynomial> Polynomial::parity_split() const {
    Polynomial even(ctx_), odd(ctx_);
    for (const auto& [m, c] : terms_)
        (m.parity(ctx_) == 0 ? even : odd).terms_.emplace(m, c);
    return {even, odd};
}

std::vector<std::pair<int, Polynomial>> Polynomial::homogeneous_components() const {
    std::map<int, Polynomial> by_degree;
    for (const auto& [m, c] : terms_) {
        auto [it, inserted] = by_degree.try_emplace(m.degree(ctx_), ctx_);
        it->second.terms_.emplace(m, c);
    }
    std::vector<std::pair<int, Polynomial>> out;
    out.reserve(by_degree.size());
    for (auto& [d, p] : by_degree) out.emplace_back(d, std::move(p));
    return out;
}

Polynomial Polynomial::component(int degree) const {
    Polynomial out(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.degree(ctx_) == degree) out.terms_.emplace(m, c);
    return out;
}

Polynomial Polynomial::truncate_total_exponent(int max_total) const {
    Polynomial out(ctx_);
    for (const auto& [m, c] : terms_)
        if (m.total_exponent() <= max_total) out.terms_.emplace(m, c);
    return out;
}

std::string to_string(const Monomial& m, const Context& ctx) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < m.n_coords(); ++i) {
        if (m.exp(i) == 0) continue;
        if (!first) os << "*";
        os << ctx.name(i);
        if (m.exp(i) > 1) os << "^" << m.exp(i);
        first = false;
    }
    return os.str();
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Largest term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        std::string mono = dg::to_string(m, ctx_);
        if (mono.empty())
            os << a.str();
        else if (a == 1)
            os << mono;
        else
            os << a.str() << "*" << mono;
        first = false;
    }
    return os.str();
}

}  // namespace dg
