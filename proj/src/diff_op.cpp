#include "dg/diff_op.hpp"

#include <sstream>

namespace dg {

namespace {

std::string word_to_string(const Monomial& w, const Context& ctx, const char* sep) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < w.n_coords(); ++i)
        for (int e = 0; e < w.exp(i); ++e) {
            if (!first) os << sep;
            os << "d/d" << ctx.name(i);
            first = false;
        }
    return os.str();
}

}  // namespace

DiffOperator DiffOperator::from_polynomial(const Polynomial& f) {
    DiffOperator d(f.context());
    d.add_term(Monomial(f.context().size()), f);
    return d;
}

DiffOperator DiffOperator::from_vector_field(const VectorField& x) {
    const Context& ctx = x.context();
    DiffOperator d(ctx);
    for (int k = 0; k < ctx.size(); ++k) {
        Monomial w(ctx.size());
        w.set_exp(k, 1);
        d.add_term(w, x.coeff(k));
    }
    return d;
}

int DiffOperator::order() const {
    int r = 0;
    for (const auto& [w, f] : terms_) r = std::max(r, w.total_exponent());
    return r;
}

void DiffOperator::add_term(const Monomial& word, const Polynomial& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(word);
    if (it == terms_.end()) {
        terms_.emplace(word, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffOperator DiffOperator::operator+(const DiffOperator& rhs) const {
    DiffOperator out = *this;
    out += rhs;
    return out;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& rhs) {
    if (ctx_.size() == 0 && terms_.empty()) ctx_ = rhs.ctx_;
    for (const auto& [w, f] : rhs.terms_) add_term(w, f);
    return *this;
}

DiffOperator DiffOperator::operator-(const DiffOperator& rhs) const {
    DiffOperator out = *this;
    for (const auto& [w, f] : rhs.terms_) out.add_term(w, -f);
    return out;
}

DiffOperator DiffOperator::operator*(const Rational& c) const {
    DiffOperator out(ctx_);
    if (c == 0) return out;
    for (const auto& [w, f] : terms_) out.terms_.emplace(w, f * c);
    return out;
}

bool DiffOperator::operator==(const DiffOperator& rhs) const {
    return ctx_.same_as(rhs.ctx_) && terms_ == rhs.terms_;
}

Polynomial DiffOperator::apply(const Polynomial& p) const {
    Polynomial out(ctx_);
    for (const auto& [w, f] : terms_) {
        Polynomial v = p;
        // Word d_{i1}...d_{in} (ascending) acts rightmost-first.
        for (int i = ctx_.size() - 1; i >= 0 && !v.is_zero(); --i)
            for (int e = 0; e < w.exp(i); ++e) v = v.partial(i);
        if (!v.is_zero()) out += f * v;
    }
    return out;
}

DiffOperator DiffOperator::compose(const DiffOperator& rhs) const {
    require_same_context(ctx_, rhs.ctx_, "DiffOperator::compose");
    DiffOperator out(ctx_);
    for (const auto& [alpha, f] : terms_) {
        for (const auto& [beta, g] : rhs.terms_) {
            // W := d^alpha ∘ g, built by peeling partials from the right.
            DiffOperator w(ctx_);
            w.add_term(Monomial(ctx_.size()), g);
            for (int i = ctx_.size() - 1; i >= 0; --i) {
                for (int e = 0; e < alpha.exp(i); ++e) {
                    DiffOperator next(ctx_);
                    Monomial unit(ctx_.size());
                    unit.set_exp(i, 1);
                    for (const auto& [gamma, h] : w.terms_) {
                        next.add_term(gamma, h.partial(i));
                        auto [he, ho] = h.parity_split();
                        Polynomial moved = he;
                        if (!ho.is_zero()) moved += (ctx_.parity(i) == 1) ? -ho : ho;
                        if (!moved.is_zero()) {
                            auto ins = Monomial::mul(unit, gamma, ctx_);
                            if (ins) next.add_term(ins->first, moved * Rational(ins->second));
                        }
                    }
                    w = std::move(next);
                }
            }
            // (d^alpha ∘ g) ∘ d^beta, Koszul-merging the words.
            for (const auto& [gamma, h] : w.terms_) {
                auto merged = Monomial::mul(gamma, beta, ctx_);
                if (!merged) continue;
                out.add_term(merged->first, f * h * Rational(merged->second));
            }
        }
    }
    return out;
}

std::pair<DiffOperator, DiffOperator> DiffOperator::parity_split() const {
    DiffOperator even(ctx_), odd(ctx_);
    for (const auto& [w, f] : terms_) {
        int wp = w.parity(ctx_);
        auto [fe, fo] = f.parity_split();
        // operator parity = coefficient parity + word parity
        if (wp == 0) {
            even.add_term(w, fe);
            odd.add_term(w, fo);
        } else {
            even.add_term(w, fo);
            odd.add_term(w, fe);
        }
    }
    return {even, odd};
}

SymTensor DiffOperator::top_symbol() const {
    SymTensor s(ctx_);
    int r = order();
    for (const auto& [w, f] : terms_)
        if (w.total_exponent() == r) s.add_term(w, f);
    return s;
}

std::string DiffOperator::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        os << "(" << it->second.to_string() << ")";
        std::string w = word_to_string(it->first, ctx_, " ");
        if (!w.empty()) os << " " << w;
        first = false;
    }
    return os.str();
}

SymTensor SymTensor::from_polynomial(const Polynomial& f) {
    SymTensor s(f.context());
    s.add_term(Monomial(f.context().size()), f);
    return s;
}

SymTensor SymTensor::from_vector_field(const VectorField& x) {
    const Context& ctx = x.context();
    SymTensor s(ctx);
    for (int k = 0; k < ctx.size(); ++k) {
        Monomial w(ctx.size());
        w.set_exp(k, 1);
        s.add_term(w, x.coeff(k));
    }
    return s;
}

int SymTensor::order() const {
    int r = 0;
    for (const auto& [w, f] : terms_) r = std::max(r, w.total_exponent());
    return r;
}

void SymTensor::add_term(const Monomial& word, const Polynomial& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(word);
    if (it == terms_.end()) {
        terms_.emplace(word, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymTensor SymTensor::operator+(const SymTensor& rhs) const {
    SymTensor out = *this;
    out += rhs;
    return out;
}

SymTensor& SymTensor::operator+=(const SymTensor& rhs) {
    if (ctx_.size() == 0 && terms_.empty()) ctx_ = rhs.ctx_;
    for (const auto& [w, f] : rhs.terms_) add_term(w, f);
    return *this;
}

SymTensor SymTensor::operator-(const SymTensor& rhs) const {
    SymTensor out = *this;
    for (const auto& [w, f] : rhs.terms_) out.add_term(w, -f);
    return out;
}

SymTensor SymTensor::operator*(const Rational& c) const {
    SymTensor out(ctx_);
    if (c == 0) return out;
    for (const auto& [w, f] : terms_) out.terms_.emplace(w, f * c);
    return out;
}

bool SymTensor::operator==(const SymTensor& rhs) const {
    return ctx_.same_as(rhs.ctx_) && terms_ == rhs.terms_;
}

SymTensor SymTensor::mul_left(const Polynomial& f) const {
    SymTensor out(ctx_);
    for (const auto& [w, g] : terms_) out.add_term(w, f * g);
    return out;
}

SymTensor SymTensor::component(int n) const {
    SymTensor out(ctx_);
    for (const auto& [w, f] : terms_)
        if (w.total_exponent() == n) out.terms_.emplace(w, f);
    return out;
}

VectorField SymTensor::field_part() const {
    VectorField x(ctx_);
    for (const auto& [w, f] : terms_) {
        if (w.total_exponent() != 1) continue;
        for (int k = 0; k < ctx_.size(); ++k)
            if (w.exp(k) == 1) x.set_coeff(k, x.coeff(k) + f);
    }
    return x;
}

Polynomial SymTensor::function_part() const {
    Polynomial out(ctx_);
    for (const auto& [w, f] : terms_)
        if (w.total_exponent() == 0) out += f;
    return out;
}

std::string SymTensor::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        os << "(" << it->second.to_string() << ")";
        std::string w = word_to_string(it->first, ctx_, "⊙");
        if (!w.empty()) os << " " << w;
        first = false;
    }
    return os.str();
}

DiffOperator lq_diffop(const DgManifold& m, const DiffOperator& d) {
    DiffOperator q = DiffOperator::from_vector_field(m.Q);
    auto [de, dodd] = d.parity_split();
    DiffOperator out = q.compose(de) - de.compose(q);
    out += q.compose(dodd) + dodd.compose(q);
    return out;
}

}  // namespace dg
