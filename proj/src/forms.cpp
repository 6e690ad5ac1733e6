#include "dg/forms.hpp"

#include <stdexcept>

#include "dg/series.hpp"

namespace dg {

int FormContext::wedge_degree(const Monomial& w) const {
    int k = 0;
    for (int i = 0; i < n(); ++i) k += w.exp(dx_index(i));
    return k;
}

bool FormContext::wedge_homogeneous(const Polynomial& form, int* degree_out) const {
    bool first = true;
    int deg = 0;
    for (const auto& [w, c] : form.terms()) {
        int k = wedge_degree(w);
        if (first) {
            deg = k;
            first = false;
        } else if (k != deg) {
            return false;
        }
    }
    if (degree_out && !first) *degree_out = deg;
    if (degree_out && first) *degree_out = 0;
    return true;
}

Polynomial FormContext::wedge_component(const Polynomial& form, int k) const {
    Polynomial out(total);
    for (const auto& [w, c] : form.terms())
        if (wedge_degree(w) == k) out.add_term(w, c);
    return out;
}

Polynomial FormContext::truncate_wedge(const Polynomial& form, int max_wedge) const {
    Polynomial out(total);
    for (const auto& [w, c] : form.terms())
        if (wedge_degree(w) <= max_wedge) out.add_term(w, c);
    return out;
}

Polynomial FormContext::embed(const Polynomial& base_poly) const {
    require_same_context(base, base_poly.context(), "FormContext::embed");
    Polynomial out(total);
    for (const auto& [w, c] : base_poly.terms()) {
        Monomial m(total.size());
        for (int i = 0; i < n(); ++i) m.set_exp(i, w.exp(i));
        out.add_term(m, c);
    }
    return out;
}

Polynomial FormContext::dx_coefficient(const Polynomial& form, int i) const {
    Polynomial out(base);
    const int di = dx_index(i);
    for (const auto& [w, c] : form.terms()) {
        if (wedge_degree(w) != 1 || w.exp(di) != 1) continue;
        Monomial m(base.size());
        int xpar = 0;
        for (int j = 0; j < n(); ++j) {
            m.set_exp(j, w.exp(j));
            xpar += w.exp(j) * base.parity(j);
        }
        // canonical monomial is (x-part)*dx_i; moving dx_i forward crosses
        // the x-part once per odd factor when dx_i is odd
        int sign = ((total.parity(di) * xpar) % 2) ? -1 : 1;
        out.add_term(m, c * sign);
    }
    return out;
}

VectorField FormContext::de_rham() const {
    VectorField d(total);
    for (int i = 0; i < n(); ++i) d.set_coeff(i, dx(i));
    return d;
}

VectorField FormContext::contraction(const VectorField& q) const {
    VectorField iota(total);
    for (int i = 0; i < n(); ++i) iota.set_coeff(dx_index(i), embed(q.coeff(i)));
    return iota;
}

VectorField FormContext::lie_q(const DgManifold& m) const {
    return bracket(contraction(m.Q), de_rham());
}

EndForm::EndForm(const FormContext& fc, const Frame& frame) : fc_(fc), frame_(frame) {
    size_t f = static_cast<size_t>(frame.size());
    entries_.assign(f * f, Polynomial::zero(fc.total));
}

EndForm EndForm::identity(const FormContext& fc, const Frame& frame) {
    EndForm out(fc, frame);
    for (int a = 0; a < frame.size(); ++a)
        out.set_entry(a, a, Polynomial::constant(fc.total, 1));
    return out;
}

const Polynomial& EndForm::entry(int a, int b) const {
    return entries_[static_cast<size_t>(a) * frame_.size() + static_cast<size_t>(b)];
}

void EndForm::set_entry(int a, int b, Polynomial p) {
    entries_[static_cast<size_t>(a) * frame_.size() + static_cast<size_t>(b)] = std::move(p);
}

EndForm EndForm::operator+(const EndForm& rhs) const {
    EndForm out = *this;
    for (size_t t = 0; t < entries_.size(); ++t) out.entries_[t] += rhs.entries_[t];
    return out;
}

EndForm EndForm::operator-(const EndForm& rhs) const {
    EndForm out = *this;
    for (size_t t = 0; t < entries_.size(); ++t) out.entries_[t] -= rhs.entries_[t];
    return out;
}

EndForm EndForm::operator*(const Rational& c) const {
    EndForm out = *this;
    for (auto& p : out.entries_) p = p * c;
    return out;
}

EndForm EndForm::operator*(const EndForm& rhs) const {
    const int f = frame_.size();
    EndForm out(fc_, frame_);
    for (int a = 0; a < f; ++a)
        for (int b = 0; b < f; ++b) {
            Polynomial acc(fc_.total);
            for (int c = 0; c < f; ++c) {
                const Polynomial& mac = entry(a, c);
                const Polynomial& ncb = rhs.entry(c, b);
                if (mac.is_zero() || ncb.is_zero()) continue;
                auto [ne, no] = ncb.parity_split();
                int flip = (frame_.parity(a) + frame_.parity(c)) & 1;
                Polynomial adjusted = ne;
                if (!no.is_zero()) adjusted += flip ? -no : no;
                acc += mac * adjusted;
            }
            out.set_entry(a, b, std::move(acc));
        }
    return out;
}

bool EndForm::operator==(const EndForm& rhs) const {
    if (!frame_.same_as(rhs.frame_)) return false;
    return entries_ == rhs.entries_;
}

bool EndForm::is_zero() const {
    for (const auto& p : entries_)
        if (!p.is_zero()) return false;
    return true;
}

EndForm EndForm::pow(int k) const {
    if (k < 0) throw std::invalid_argument("EndForm::pow: negative exponent");
    EndForm out = identity(fc_, frame_);
    for (int t = 0; t < k; ++t) out = out * (*this);
    return out;
}

EndForm EndForm::truncate_wedge(int max_wedge) const {
    EndForm out = *this;
    for (auto& p : out.entries_) p = fc_.truncate_wedge(p, max_wedge);
    return out;
}

std::optional<int> EndForm::operator_parity() const {
    std::optional<int> parity;
    for (int a = 0; a < frame_.size(); ++a)
        for (int b = 0; b < frame_.size(); ++b) {
            auto [pe, po] = entry(a, b).parity_split();
            int fp = (frame_.parity(a) + frame_.parity(b)) & 1;
            if (!pe.is_zero()) {
                int p = fp;  // even entry: operator parity = frame parity sum
                if (parity && *parity != p) return std::nullopt;
                parity = p;
            }
            if (!po.is_zero()) {
                int p = (fp + 1) & 1;
                if (parity && *parity != p) return std::nullopt;
                parity = p;
            }
        }
    return parity ? parity : std::optional<int>(0);
}

Polynomial supertrace(const EndForm& m) {
    Polynomial out(m.form_context().total);
    for (int a = 0; a < m.frame().size(); ++a) {
        if (m.frame().parity(a) == 1)
            out -= m.entry(a, a);
        else
            out += m.entry(a, a);
    }
    return out;
}

EndForm graded_commutator(const EndForm& a, const EndForm& b) {
    auto pa = a.operator_parity();
    auto pb = b.operator_parity();
    if (!pa || !pb)
        throw std::invalid_argument("graded_commutator needs parity-homogeneous operators");
    EndForm ba = b * a;
    if ((*pa * *pb) % 2) return a * b + ba;
    return a * b - ba;
}

EndForm as_end_valued_form(const FrameTensor& at, const FormContext& fc) {
    require_same_context(at.context(), fc.base, "as_end_valued_form");
    EndForm out(fc, at.frame());
    for (int a = 0; a < at.frame().size(); ++a)
        for (int b = 0; b < at.frame().size(); ++b) {
            Polynomial acc(fc.total);
            for (int i = 0; i < fc.n(); ++i) {
                const Polynomial& e = at.entry(i, a, b);
                if (e.is_zero()) continue;
                acc += fc.dx(i) * fc.embed(e);
            }
            out.set_entry(a, b, std::move(acc));
        }
    return out;
}

Polynomial scalar_atiyah_of(const FrameTensor& at, const FormContext& fc, int k) {
    if (k < 1) throw std::invalid_argument("scalar_atiyah: k must be >= 1");
    EndForm alpha = as_end_valued_form(at, fc);
    return supertrace(alpha.pow(k)) * (Rational(1) / factorial(static_cast<unsigned>(k)));
}

Polynomial scalar_atiyah(const DgManifold& m, const Connection& nabla, int k) {
    FormContext fc(m.ctx);
    return scalar_atiyah_of(atiyah_tangent(m, nabla), fc, k);
}

Polynomial todd_of(const FrameTensor& at, const FormContext& fc, int max_wedge) {
    if (max_wedge < 0) throw std::invalid_argument("todd: negative truncation");
    EndForm alpha = as_end_valued_form(at, fc);
    PowerSeries a = PowerSeries::todd_log_series(max_wedge);
    // str log((1-e^{-alpha})/alpha) = sum_r a_r str(alpha^r): all powers of a
    // single matrix commute, so the scalar series applies verbatim.
    Polynomial logber(fc.total);
    EndForm power = alpha;
    for (int r = 1; r <= max_wedge; ++r) {
        if (power.is_zero()) break;
        if (a.coeff(r) != 0) logber += supertrace(power) * a.coeff(r);
        if (r < max_wedge) power = power * alpha;
    }
    // exp, truncated at the wedge bound; logber has wedge degree >= 1.
    Polynomial result = Polynomial::constant(fc.total, 1);
    Polynomial term = Polynomial::constant(fc.total, 1);
    for (int j = 1; j <= max_wedge; ++j) {
        term = fc.truncate_wedge(term * logber, max_wedge) * (Rational(1, j));
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

Polynomial todd(const DgManifold& m, const Connection& nabla, int max_wedge) {
    FormContext fc(m.ctx);
    return todd_of(atiyah_tangent(m, nabla), fc, max_wedge);
}

}  // namespace dg
