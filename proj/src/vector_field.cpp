#include "dg/vector_field.hpp"

#include <sstream>
#include <stdexcept>

namespace dg {

VectorField::VectorField(const Context& ctx) : ctx_(ctx) {
    coeffs_.assign(static_cast<size_t>(ctx.size()), Polynomial::zero(ctx));
}

VectorField VectorField::coordinate(const Context& ctx, int k) {
    VectorField X(ctx);
    X.set_coeff(k, Polynomial::constant(ctx, 1));
    return X;
}

void VectorField::set_coeff(int k, Polynomial p) {
    require_same_context(ctx_, p.context(), "VectorField::set_coeff");
    coeffs_[static_cast<size_t>(k)] = std::move(p);
}

bool VectorField::is_zero() const {
    for (const auto& p : coeffs_)
        if (!p.is_zero()) return false;
    return true;
}

Polynomial VectorField::apply(const Polynomial& f) const {
    require_same_context(ctx_, f.context(), "VectorField::apply");
    Polynomial out(ctx_);
    for (int k = 0; k < ctx_.size(); ++k) {
        if (coeffs_[static_cast<size_t>(k)].is_zero()) continue;
        out += coeffs_[static_cast<size_t>(k)] * f.partial(k);
    }
    return out;
}

VectorField VectorField::operator+(const VectorField& rhs) const {
    VectorField out = *this;
    out += rhs;
    return out;
}

VectorField& VectorField::operator+=(const VectorField& rhs) {
    if (ctx_.size() == 0 && coeffs_.empty()) *this = VectorField(rhs.ctx_);
    require_same_context(ctx_, rhs.ctx_, "VectorField::add");
    for (int k = 0; k < ctx_.size(); ++k) coeffs_[static_cast<size_t>(k)] += rhs.coeff(k);
    return *this;
}

VectorField VectorField::operator-(const VectorField& rhs) const {
    VectorField out = *this;
    for (int k = 0; k < ctx_.size(); ++k) out.coeffs_[static_cast<size_t>(k)] -= rhs.coeff(k);
    return out;
}

VectorField VectorField::operator-() const {
    VectorField out(ctx_);
    for (int k = 0; k < ctx_.size(); ++k) out.coeffs_[static_cast<size_t>(k)] = -coeff(k);
    return out;
}

VectorField VectorField::operator*(const Rational& c) const {
    VectorField out(ctx_);
    for (int k = 0; k < ctx_.size(); ++k) out.coeffs_[static_cast<size_t>(k)] = coeff(k) * c;
    return out;
}

bool VectorField::operator==(const VectorField& rhs) const {
    if (!ctx_.same_as(rhs.ctx_)) return false;
    for (int k = 0; k < ctx_.size(); ++k)
        if (!(coeff(k) == rhs.coeff(k))) return false;
    return true;
}

VectorField VectorField::mul_left(const Polynomial& f) const {
    VectorField out(ctx_);
    for (int k = 0; k < ctx_.size(); ++k) out.coeffs_[static_cast<size_t>(k)] = f * coeff(k);
    return out;
}

Polynomial::Degree VectorField::degree_of() const {
    bool seen = false;
    int deg = 0;
    for (int k = 0; k < ctx_.size(); ++k) {
        auto d = coeff(k).degree_of();
        if (d.kind == Polynomial::Degree::Kind::zero) continue;
        if (d.kind == Polynomial::Degree::Kind::inhomogeneous)
            return {Polynomial::Degree::Kind::inhomogeneous, 0};
        int dd = d.value - ctx_.degree(k);
        if (!seen) {
            deg = dd;
            seen = true;
        } else if (dd != deg) {
            return {Polynomial::Degree::Kind::inhomogeneous, 0};
        }
    }
    if (!seen) return {Polynomial::Degree::Kind::zero, 0};
    return {Polynomial::Degree::Kind::homogeneous, deg};
}

std::pair<VectorField, VectorField> VectorField::parity_split() const {
    VectorField even(ctx_), odd(ctx_);
    for (int k = 0; k < ctx_.size(); ++k) {
        auto [pe, po] = coeff(k).parity_split();
        // Derivation parity flips when |x_k| is odd.
        if (ctx_.parity(k) == 0) {
            even.coeffs_[static_cast<size_t>(k)] = pe;
            odd.coeffs_[static_cast<size_t>(k)] = po;
        } else {
            even.coeffs_[static_cast<size_t>(k)] = po;
            odd.coeffs_[static_cast<size_t>(k)] = pe;
        }
    }
    return {even, odd};
}

std::vector<std::pair<int, VectorField>> VectorField::homogeneous_components() const {
    std::map<int, VectorField> by_degree;
    for (int k = 0; k < ctx_.size(); ++k) {
        for (const auto& [d, part] : coeff(k).homogeneous_components()) {
            auto [it, inserted] = by_degree.try_emplace(d - ctx_.degree(k), ctx_);
            it->second.coeffs_[static_cast<size_t>(k)] += part;
        }
    }
    std::vector<std::pair<int, VectorField>> out;
    for (auto& [d, X] : by_degree)
        if (!X.is_zero()) out.emplace_back(d, std::move(X));
    return out;
}

std::string VectorField::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < ctx_.size(); ++k) {
        if (coeff(k).is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << coeff(k).to_string() << ")*d/d" << ctx_.name(k);
        first = false;
    }
    if (first) return "0";
    return os.str();
}

VectorField bracket(const VectorField& X, const VectorField& Y) {
    require_same_context(X.context(), Y.context(), "bracket");
    const Context& ctx = X.context();
    auto [Xe, Xo] = X.parity_split();
    auto [Ye, Yo] = Y.parity_split();
    VectorField out(ctx);
    auto add_part = [&](const VectorField& A, const VectorField& B, int pa, int pb) {
        if (A.is_zero() || B.is_zero()) return;
        int sign = (pa * pb) & 1 ? -1 : 1;
        for (int k = 0; k < ctx.size(); ++k) {
            Polynomial c = A.apply(B.coeff(k));
            Polynomial d = B.apply(A.coeff(k)) * Rational(sign);
            out.set_coeff(k, out.coeff(k) + c - d);
        }
    };
    add_part(Xe, Ye, 0, 0);
    add_part(Xe, Yo, 0, 1);
    add_part(Xo, Ye, 1, 0);
    add_part(Xo, Yo, 1, 1);
    return out;
}

HomologicalReport validate_homological(const DgManifold& m) {
    HomologicalReport report;
    const Context& ctx = m.ctx;
    for (int k = 0; k < ctx.size(); ++k) {
        const Polynomial& qk = m.Q.coeff(k);
        if (!qk.is_homogeneous_of_degree(ctx.degree(k) + 1)) {
            report.pass = false;
            report.violations.emplace_back(
                ctx.name(k), "Q coefficient is not homogeneous of degree " +
                                 std::to_string(ctx.degree(k) + 1) + ": " + qk.to_string());
        }
    }
    // [Q,Q] = 2 Q∘Q for odd Q; zero iff Q(Q_k) = 0 for all k.
    for (int k = 0; k < ctx.size(); ++k) {
        Polynomial sq = m.Q.apply(m.Q.coeff(k));
        if (!sq.is_zero()) {
            report.pass = false;
            report.violations.emplace_back(ctx.name(k),
                                           "[Q,Q] has nonzero coefficient " + sq.to_string());
        }
    }
    return report;
}

VectorField lie_derivative(const DgManifold& m, const VectorField& X) {
    return bracket(m.Q, X);
}

}  // namespace dg
