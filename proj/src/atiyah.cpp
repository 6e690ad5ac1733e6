#include "dg/atiyah.hpp"

#include <sstream>
#include <stdexcept>

#include "dg/pbw.hpp"

namespace dg {

namespace {
int parity_of(int degree) { return ((degree % 2) + 2) % 2; }
}  // namespace

bool Frame::same_as(const Frame& other) const {
    if (size() != other.size()) return false;
    for (int a = 0; a < size(); ++a)
        if (name(a) != other.name(a) || degree(a) != other.degree(a)) return false;
    return true;
}

Frame Frame::tangent(const Context& ctx) {
    Frame f;
    for (int k = 0; k < ctx.size(); ++k) f.elements.push_back({ctx.name(k), -ctx.degree(k)});
    return f;
}

Section::Section(const Context& ctx, const Frame& f) : frame(f) {
    comps.assign(static_cast<size_t>(f.size()), Polynomial::zero(ctx));
}

Section Section::operator+(const Section& rhs) const {
    Section out = *this;
    for (size_t a = 0; a < comps.size(); ++a) out.comps[a] += rhs.comps[a];
    return out;
}

Section Section::operator-(const Section& rhs) const {
    Section out = *this;
    for (size_t a = 0; a < comps.size(); ++a) out.comps[a] -= rhs.comps[a];
    return out;
}

Section Section::operator*(const Rational& c) const {
    Section out = *this;
    for (auto& p : out.comps) p = p * c;
    return out;
}

Section Section::mul_left(const Polynomial& f) const {
    Section out = *this;
    for (auto& p : out.comps) p = f * p;
    return out;
}

bool Section::is_zero() const {
    for (const auto& p : comps)
        if (!p.is_zero()) return false;
    return true;
}

bool Section::operator==(const Section& rhs) const {
    if (!frame.same_as(rhs.frame) || comps.size() != rhs.comps.size()) return false;
    for (size_t a = 0; a < comps.size(); ++a)
        if (!(comps[a] == rhs.comps[a])) return false;
    return true;
}

DgVectorBundle::DgVectorBundle(DgManifold base, Frame frame, std::vector<Polynomial> q_matrix)
    : base_(std::move(base)), frame_(std::move(frame)), q_(std::move(q_matrix)) {
    size_t f = static_cast<size_t>(frame_.size());
    if (q_.size() != f * f) throw std::invalid_argument("q_matrix has wrong shape");
}

DgVectorBundle DgVectorBundle::tangent(const DgManifold& m) {
    const Context& ctx = m.ctx;
    const int n = ctx.size();
    std::vector<Polynomial> q(static_cast<size_t>(n) * n, Polynomial::zero(ctx));
    // Q(d/dx_k) = L_Q d/dx_k = -(-1)^{|x_k|} sum_l partial_k(Q_l) d/dx_l.
    for (int k = 0; k < n; ++k) {
        int sign = ctx.parity(k) == 1 ? 1 : -1;
        for (int l = 0; l < n; ++l)
            q[static_cast<size_t>(l) * n + k] = m.Q.coeff(l).partial(k) * Rational(sign);
    }
    return DgVectorBundle(m, Frame::tangent(ctx), std::move(q));
}

const Polynomial& DgVectorBundle::q_entry(int a, int b) const {
    return q_[static_cast<size_t>(a) * frame_.size() + static_cast<size_t>(b)];
}

Section DgVectorBundle::q_apply(const Section& s) const {
    const int f = frame_.size();
    Section out(context(), frame_);
    for (int b = 0; b < f; ++b) {
        const Polynomial& sb = s.comps[static_cast<size_t>(b)];
        if (sb.is_zero()) continue;
        out.comps[static_cast<size_t>(b)] += base_.Q.apply(sb);
        auto [se, so] = sb.parity_split();
        for (int a = 0; a < f; ++a) {
            const Polynomial& q = q_entry(a, b);
            if (q.is_zero()) continue;
            out.comps[static_cast<size_t>(a)] += se * q - so * q;
        }
    }
    return out;
}

DgVectorBundle::Report DgVectorBundle::validate() const {
    Report report;
    const int f = frame_.size();
    for (int a = 0; a < f; ++a)
        for (int b = 0; b < f; ++b) {
            int want = frame_.degree(b) + 1 - frame_.degree(a);
            if (!q_entry(a, b).is_homogeneous_of_degree(want)) {
                report.pass = false;
                report.violations.push_back("q[" + frame_.name(a) + "," + frame_.name(b) +
                                            "] not homogeneous of degree " +
                                            std::to_string(want));
            }
        }
    // (Q^2)^c_b = Q(q^c_b) + sum_a (-1)^{|q^a_b|} q^a_b q^c_a.
    for (int c = 0; c < f; ++c)
        for (int b = 0; b < f; ++b) {
            Polynomial acc = base_.Q.apply(q_entry(c, b));
            for (int a = 0; a < f; ++a) {
                auto [qe, qo] = q_entry(a, b).parity_split();
                acc += (qe - qo) * q_entry(c, a);
            }
            if (!acc.is_zero()) {
                report.pass = false;
                report.violations.push_back("Q^2[" + frame_.name(c) + "," + frame_.name(b) +
                                            "] = " + acc.to_string());
            }
        }
    return report;
}

Section DgVectorBundle::section_from_field(const VectorField& X) const {
    if (!frame_.same_as(Frame::tangent(context())))
        throw std::invalid_argument("section_from_field requires the tangent frame");
    Section s(context(), frame_);
    for (int k = 0; k < context().size(); ++k) s.comps[static_cast<size_t>(k)] = X.coeff(k);
    return s;
}

VectorField DgVectorBundle::field_from_section(const Section& s) const {
    VectorField X(context());
    for (int k = 0; k < context().size(); ++k) X.set_coeff(k, s.comps[static_cast<size_t>(k)]);
    return X;
}

BundleConnection::BundleConnection(const Context& ctx, const Frame& frame)
    : ctx_(ctx), frame_(frame) {
    size_t n = static_cast<size_t>(ctx.size());
    size_t f = static_cast<size_t>(frame.size());
    gamma_.assign(n * f * f, Polynomial::zero(ctx));
}

size_t BundleConnection::idx(int i, int a, int b) const {
    size_t f = static_cast<size_t>(frame_.size());
    return (static_cast<size_t>(i) * f + static_cast<size_t>(a)) * f + static_cast<size_t>(b);
}

BundleConnection::BundleConnection(const Context& ctx, const Frame& frame,
                                   const std::map<std::tuple<int, int, int>, Polynomial>& gamma)
    : BundleConnection(ctx, frame) {
    for (const auto& [key, p] : gamma) {
        auto [a, i, b] = key;
        if (!p.is_zero()) {
            int want = frame_.degree(b) - frame_.degree(a) - ctx_.degree(i);
            if (!p.is_homogeneous_of_degree(want))
                throw std::invalid_argument("bundle Gamma^" + frame_.name(a) + "_{" +
                                            ctx_.name(i) + "," + frame_.name(b) +
                                            "} must be homogeneous of degree " +
                                            std::to_string(want));
            if (!ctx_.degree_realizable(want))
                throw std::invalid_argument("bundle Gamma^" + frame_.name(a) + "_{" +
                                            ctx_.name(i) + "," + frame_.name(b) +
                                            "} has unrealizable degree and must vanish");
        }
        gamma_[idx(i, a, b)] = p;
    }
}

BundleConnection BundleConnection::of_affine(const Connection& nabla) {
    const Context& ctx = nabla.context();
    BundleConnection out(ctx, Frame::tangent(ctx));
    const int n = ctx.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out.gamma_[out.idx(i, k, j)] = nabla.gamma(i, j, k);
    return out;
}

const Polynomial& BundleConnection::gamma(int i, int a, int b) const { return gamma_[idx(i, a, b)]; }

Section BundleConnection::nabla(const VectorField& X, const Section& s) const {
    const int n = ctx_.size();
    const int f = frame_.size();
    Section out(ctx_, frame_);
    for (int i = 0; i < n; ++i) {
        const Polynomial& xi = X.coeff(i);
        if (xi.is_zero()) continue;
        Section di(ctx_, frame_);
        for (int b = 0; b < f; ++b) {
            const Polynomial& sb = s.comps[static_cast<size_t>(b)];
            if (sb.is_zero()) continue;
            di.comps[static_cast<size_t>(b)] += sb.partial(i);
            auto [se, so] = sb.parity_split();
            for (int a = 0; a < f; ++a) {
                const Polynomial& g = gamma(i, a, b);
                if (g.is_zero()) continue;
                Polynomial c = se * g;
                if (!so.is_zero()) c += (ctx_.parity(i) == 1 ? -(so * g) : so * g);
                di.comps[static_cast<size_t>(a)] += c;
            }
        }
        out = out + di.mul_left(xi);
    }
    return out;
}

FrameTensor::FrameTensor(const Context& ctx, const Frame& frame, int degree)
    : ctx_(ctx), frame_(frame), degree_(degree) {
    size_t n = static_cast<size_t>(ctx.size());
    size_t f = static_cast<size_t>(frame.size());
    entries_.assign(n * f * f, Polynomial::zero(ctx));
}

size_t FrameTensor::idx(int i, int a, int b) const {
    size_t f = static_cast<size_t>(frame_.size());
    return (static_cast<size_t>(i) * f + static_cast<size_t>(a)) * f + static_cast<size_t>(b);
}

const Polynomial& FrameTensor::entry(int i, int a, int b) const { return entries_[idx(i, a, b)]; }

void FrameTensor::set_entry(int i, int a, int b, Polynomial p) {
    entries_[idx(i, a, b)] = std::move(p);
}

FrameTensor FrameTensor::operator+(const FrameTensor& rhs) const {
    FrameTensor out = *this;
    for (size_t t = 0; t < entries_.size(); ++t) out.entries_[t] += rhs.entries_[t];
    return out;
}

FrameTensor FrameTensor::operator-(const FrameTensor& rhs) const {
    FrameTensor out = *this;
    for (size_t t = 0; t < entries_.size(); ++t) out.entries_[t] -= rhs.entries_[t];
    return out;
}

FrameTensor FrameTensor::operator*(const Rational& c) const {
    FrameTensor out = *this;
    for (auto& p : out.entries_) p = p * c;
    return out;
}

bool FrameTensor::operator==(const FrameTensor& rhs) const {
    if (!ctx_.same_as(rhs.ctx_) || !frame_.same_as(rhs.frame_)) return false;
    return entries_ == rhs.entries_;
}

bool FrameTensor::is_zero() const {
    for (const auto& p : entries_)
        if (!p.is_zero()) return false;
    return true;
}

Section FrameTensor::eval(const VectorField& X, const Section& s) const {
    const int n = ctx_.size();
    const int f = frame_.size();
    Section out(ctx_, frame_);
    for (int i = 0; i < n; ++i) {
        const Polynomial& xi = X.coeff(i);
        if (xi.is_zero()) continue;
        // phi(f d/dx_i, s) = (-1)^{|phi||f|} f phi(d/dx_i, s)
        auto [xe, xo] = xi.parity_split();
        for (int b = 0; b < f; ++b) {
            const Polynomial& sb = s.comps[static_cast<size_t>(b)];
            if (sb.is_zero()) continue;
            // phi(d/dx_i, g e_b) = (-1)^{(|phi|+|x_i|)|g|} g phi(d/dx_i, e_b)
            auto [ge, go] = sb.parity_split();
            int slot2 = parity_of(degree_ + ctx_.parity(i));
            Polynomial coeff_even_x = ge + (slot2 == 1 ? -go : go);
            // Now multiply by xi with the slot-1 sign.
            Polynomial pre = xe * coeff_even_x;
            if (!xo.is_zero()) {
                Polynomial pox = xo * coeff_even_x;
                if (parity_of(degree_) == 1) pox = -pox;
                pre += pox;
            }
            if (pre.is_zero()) continue;
            for (int a = 0; a < f; ++a) {
                const Polynomial& e = entry(i, a, b);
                if (e.is_zero()) continue;
                out.comps[static_cast<size_t>(a)] += pre * e;
            }
        }
    }
    return out;
}

VectorField FrameTensor::eval_fields(const VectorField& X, const VectorField& Y) const {
    Section s(ctx_, frame_);
    for (int k = 0; k < ctx_.size(); ++k) s.comps[static_cast<size_t>(k)] = Y.coeff(k);
    Section r = eval(X, s);
    VectorField out(ctx_);
    for (int k = 0; k < ctx_.size(); ++k) out.set_coeff(k, r.comps[static_cast<size_t>(k)]);
    return out;
}

bool FrameTensor::degrees_consistent() const {
    for (int i = 0; i < ctx_.size(); ++i)
        for (int a = 0; a < frame_.size(); ++a)
            for (int b = 0; b < frame_.size(); ++b) {
                int want = degree_ - ctx_.degree(i) + frame_.degree(b) - frame_.degree(a);
                if (!entry(i, a, b).is_homogeneous_of_degree(want)) return false;
            }
    return true;
}

std::string FrameTensor::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < ctx_.size(); ++i)
        for (int b = 0; b < frame_.size(); ++b)
            for (int a = 0; a < frame_.size(); ++a) {
                if (entry(i, a, b).is_zero()) continue;
                if (!first) os << "; ";
                os << "(" << ctx_.name(i) << "," << frame_.name(b) << ")->" << frame_.name(a)
                   << ": " << entry(i, a, b).to_string();
                first = false;
            }
    if (first) return "0";
    return os.str();
}

FrameTensor atiyah_tangent(const DgManifold& m, const Connection& nabla) {
    const Context& ctx = m.ctx;
    const int n = ctx.size();
    FrameTensor at(ctx, Frame::tangent(ctx), 1);
    for (int i = 0; i < n; ++i) {
        VectorField di = VectorField::coordinate(ctx, i);
        VectorField lq_di = lie_derivative(m, di);
        for (int j = 0; j < n; ++j) {
            VectorField dj = VectorField::coordinate(ctx, j);
            VectorField value = lie_derivative(m, nabla.nabla(di, dj));
            value = value - nabla.nabla(lq_di, dj);
            VectorField third = nabla.nabla(di, lie_derivative(m, dj));
            if (ctx.parity(i) == 1)
                value += third;
            else
                value = value - third;
            for (int k = 0; k < n; ++k) at.set_entry(i, k, j, value.coeff(k));
        }
    }
    return at;
}

FrameTensor atiyah_bundle(const DgVectorBundle& e, const BundleConnection& nabla_e) {
    const Context& ctx = e.context();
    const DgManifold& m = e.base();
    const int n = ctx.size();
    const int f = e.frame().size();
    auto check = e.validate();
    if (!check.pass)
        throw std::invalid_argument("invalid dg-vector bundle: " + check.violations.front());
    FrameTensor at(ctx, e.frame(), 1);
    for (int i = 0; i < n; ++i) {
        VectorField di = VectorField::coordinate(ctx, i);
        VectorField lq_di = lie_derivative(m, di);
        for (int b = 0; b < f; ++b) {
            Section eb(ctx, e.frame());
            eb.comps[static_cast<size_t>(b)] = Polynomial::constant(ctx, 1);
            Section value = e.q_apply(nabla_e.nabla(di, eb));
            value = value - nabla_e.nabla(lq_di, eb);
            Section third = nabla_e.nabla(di, e.q_apply(eb));
            value = (ctx.parity(i) == 1) ? value + third : value - third;
            for (int a = 0; a < f; ++a) at.set_entry(i, a, b, value.comps[static_cast<size_t>(a)]);
        }
    }
    return at;
}

FrameTensor atiyah_flat_chart(const DgManifold& m) {
    const Context& ctx = m.ctx;
    const int n = ctx.size();
    FrameTensor at(ctx, Frame::tangent(ctx), 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int sign = ((ctx.parity(i) + ctx.parity(j)) & 1) ? -1 : 1;
            for (int k = 0; k < n; ++k)
                at.set_entry(i, k, j, m.Q.coeff(k).partial(j).partial(i) * Rational(sign));
        }
    return at;
}

FrameTensor complex_differential(const FrameTensor& phi, const DgVectorBundle& e) {
    const Context& ctx = phi.context();
    const DgManifold& m = e.base();
    if (!phi.frame().same_as(e.frame()))
        throw std::invalid_argument("complex_differential: tensor frame does not match bundle");
    const int n = ctx.size();
    const int f = phi.frame().size();
    const int k = phi.degree();
    FrameTensor out(ctx, phi.frame(), k + 1);
    for (int i = 0; i < n; ++i) {
        VectorField di = VectorField::coordinate(ctx, i);
        VectorField lq_di = lie_derivative(m, di);
        for (int b = 0; b < f; ++b) {
            Section phib(ctx, phi.frame());
            for (int a = 0; a < f; ++a) phib.comps[static_cast<size_t>(a)] = phi.entry(i, a, b);
            Section value = e.q_apply(phib);

            Section slot1 = phi.eval(lq_di, [&] {
                Section eb(ctx, phi.frame());
                eb.comps[static_cast<size_t>(b)] = Polynomial::constant(ctx, 1);
                return eb;
            }());
            value = (parity_of(k) == 1) ? value + slot1 : value - slot1;

            Section qeb(ctx, phi.frame());
            for (int a = 0; a < f; ++a) qeb.comps[static_cast<size_t>(a)] = e.q_entry(a, b);
            Section slot2 = phi.eval(di, qeb);
            value = (parity_of(k + ctx.parity(i)) == 1) ? value + slot2 : value - slot2;

            for (int a = 0; a < f; ++a) out.set_entry(i, a, b, value.comps[static_cast<size_t>(a)]);
        }
    }
    return out;
}

FrameTensor complex_differential(const FrameTensor& phi, const DgManifold& m) {
    return complex_differential(phi, DgVectorBundle::tangent(m));
}

FrameTensor connection_difference(const Connection& a, const Connection& b) {
    require_same_context(a.context(), b.context(), "connection_difference");
    const Context& ctx = a.context();
    const int n = ctx.size();
    FrameTensor out(ctx, Frame::tangent(ctx), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out.set_entry(i, k, j, a.gamma(i, j, k) - b.gamma(i, j, k));
    return out;
}

CheckReport antisymmetrization_check(const DgManifold& m, const Connection& nabla) {
    CheckReport report;
    const Context& ctx = m.ctx;
    const int n = ctx.size();
    FrameTensor at = atiyah_tangent(m, nabla);
    FrameTensor t = torsion(nabla);
    FrameTensor lqt = complex_differential(t, m);
    bool tf = t.is_zero();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Polynomial swapped = at.entry(j, k, i);
                if ((ctx.parity(i) & ctx.parity(j)) == 1) swapped = -swapped;
                Polynomial alt = at.entry(i, k, j) - swapped;
                if (alt != lqt.entry(i, k, j)) {
                    report.pass = false;
                    report.witnesses.push_back("Alt(At) != L_Q T at (" + ctx.name(i) + "," +
                                               ctx.name(j) + ") -> " + ctx.name(k));
                }
                if (tf && !alt.is_zero()) {
                    report.pass = false;
                    report.witnesses.push_back("At not graded symmetric at (" + ctx.name(i) +
                                               "," + ctx.name(j) + ") -> " + ctx.name(k));
                }
            }
    report.info = tf ? "torsion-free connection: graded symmetry verified" : "torsionful case";
    return report;
}

namespace {

/// (1,3)-tensor with vector-field values, used for nabla(At) and its L_Q.
class Tensor13 {
public:
    Tensor13(const Context& ctx, int degree)
        : ctx_(ctx), degree_(degree),
          vals_(static_cast<size_t>(ctx.size() * ctx.size() * ctx.size()), VectorField(ctx)) {}

    VectorField& at(int w, int i, int j) {
        int n = ctx_.size();
        return vals_[static_cast<size_t>((w * n + i) * n + j)];
    }
    const VectorField& at(int w, int i, int j) const {
        int n = ctx_.size();
        return vals_[static_cast<size_t>((w * n + i) * n + j)];
    }
    int degree() const { return degree_; }

    /// Trilinear evaluation with Koszul signs for coefficient extraction.
    VectorField eval(const VectorField& X, const VectorField& Y, const VectorField& Z) const {
        const int n = ctx_.size();
        VectorField out(ctx_);
        for (int w = 0; w < n; ++w) {
            auto [xe, xo] = X.coeff(w).parity_split();
            if (xe.is_zero() && xo.is_zero()) continue;
            for (int i = 0; i < n; ++i) {
                auto [ye, yo] = Y.coeff(i).parity_split();
                if (ye.is_zero() && yo.is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    auto [ze, zo] = Z.coeff(j).parity_split();
                    if (ze.is_zero() && zo.is_zero()) continue;
                    const VectorField& v = at(w, i, j);
                    if (v.is_zero()) continue;
                    // psi(fX, gY, hZ) = ± f g h psi(X,Y,Z) with signs
                    // (-1)^{|psi||f| + (|psi|+|x_w|)|g| + (|psi|+|x_w|+|x_i|)|h|}.
                    int p1 = parity_of(degree_);
                    int p2 = parity_of(degree_ + ctx_.parity(w));
                    int p3 = parity_of(degree_ + ctx_.parity(w) + ctx_.parity(i));
                    Polynomial fx = xe + (p1 ? -xo : xo);
                    Polynomial gy = ye + (p2 ? -yo : yo);
                    Polynomial hz = ze + (p3 ? -zo : zo);
                    Polynomial c = fx * gy * hz;
                    if (c.is_zero()) continue;
                    out += v.mul_left(c);
                }
            }
        }
        return out;
    }

private:
    Context ctx_;
    int degree_;
    std::vector<VectorField> vals_;
};

}  // namespace

JacobiatorReport jacobiator_check(const DgManifold& m, const Connection& nabla) {
    if (!is_torsion_free(nabla))
        throw std::invalid_argument("jacobiator_check requires a torsion-free connection");
    JacobiatorReport report;
    const Context& ctx = m.ctx;
    const int n = ctx.size();
    FrameTensor at = atiyah_tangent(m, nabla);

    // Ternary transferred bracket on coordinate triples.
    PbwMap pbw_map(nabla);
    Tensor13 lambda3(ctx, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                lambda3.at(i, j, k) =
                    pbw_map.lambda(m, {VectorField::coordinate(ctx, i),
                                       VectorField::coordinate(ctx, j),
                                       VectorField::coordinate(ctx, k)});

    // nabla At as a (1,3)-tensor of degree 1:
    // (nabla At)(W;Y,Z) = nabla_W(At(Y,Z)) - (-1)^{|W|} At(nabla_W Y, Z)
    //                     - (-1)^{|W|(1+|Y|)} At(Y, nabla_W Z).
    Tensor13 nat(ctx, 1);
    for (int w = 0; w < n; ++w) {
        VectorField dw = VectorField::coordinate(ctx, w);
        for (int i = 0; i < n; ++i) {
            VectorField di = VectorField::coordinate(ctx, i);
            for (int j = 0; j < n; ++j) {
                VectorField dj = VectorField::coordinate(ctx, j);
                VectorField v = nabla.nabla(dw, at.eval_fields(di, dj));
                VectorField t2 = at.eval_fields(nabla.nabla(dw, di), dj);
                v = (ctx.parity(w) == 1) ? v + t2 : v - t2;
                VectorField t3 = at.eval_fields(di, nabla.nabla(dw, dj));
                int s3 = (ctx.parity(w) * ((1 + ctx.parity(i)) & 1)) & 1;
                v = s3 ? v + t3 : v - t3;
                nat.at(w, i, j) = v;
            }
        }
    }

    // dg-module differential of a degree-1 (1,3)-tensor.
    auto differential = [&](const Tensor13& psi) {
        Tensor13 out(ctx, 2);
        for (int w = 0; w < n; ++w) {
            VectorField dw = VectorField::coordinate(ctx, w);
            VectorField lq_dw = lie_derivative(m, dw);
            for (int i = 0; i < n; ++i) {
                VectorField di = VectorField::coordinate(ctx, i);
                VectorField lq_di = lie_derivative(m, di);
                for (int j = 0; j < n; ++j) {
                    VectorField dj = VectorField::coordinate(ctx, j);
                    VectorField lq_dj = lie_derivative(m, dj);
                    VectorField v = lie_derivative(m, psi.at(w, i, j));
                    VectorField t1 = psi.eval(lq_dw, di, dj);
                    v = v + t1;  // -(-1)^{|psi|} with |psi| = 1
                    VectorField t2 = psi.eval(dw, lq_di, dj);
                    v = ((1 + ctx.parity(w)) & 1) ? v + t2 : v - t2;
                    VectorField t3 = psi.eval(dw, di, lq_dj);
                    v = ((1 + ctx.parity(w) + ctx.parity(i)) & 1) ? v + t3 : v - t3;
                    out.at(w, i, j) = v;
                }
            }
        }
        return out;
    };
    Tensor13 lq_nat = differential(nat);
    Tensor13 d_lambda3 = differential(lambda3);

    // Jacobiator J(X,Y,Z) = At(X, At(Y,Z))
    //   - { (-1)^{|X|+1} At(At(X,Y), Z) + (-1)^{(|X|+1)(|Y|+1)} At(Y, At(X,Z)) }.
    int resolved = 0;
    for (int i = 0; i < n; ++i) {
        VectorField di = VectorField::coordinate(ctx, i);
        for (int j = 0; j < n; ++j) {
            VectorField dj = VectorField::coordinate(ctx, j);
            for (int k = 0; k < n; ++k) {
                VectorField dk = VectorField::coordinate(ctx, k);
                VectorField jac = at.eval_fields(di, at.eval_fields(dj, dk));
                // minus (-1)^{|X|+1} At(At(X,Y),Z), |X| = |d/dx_i| of parity |x_i|
                VectorField t2 = at.eval_fields(at.eval_fields(di, dj), dk);
                int s2 = (ctx.parity(i) + 1) & 1;
                jac = s2 ? jac + t2 : jac - t2;
                // minus (-1)^{(|X|+1)(|Y|+1)} At(Y, At(X,Z))
                VectorField t3 = at.eval_fields(dj, at.eval_fields(di, dk));
                int s3 = (((ctx.parity(i) + 1) & 1) * ((ctx.parity(j) + 1) & 1)) & 1;
                jac = s3 ? jac + t3 : jac - t3;

                // exact identity: J = -(-1)^{|X|} (delta lambda_3)
                VectorField transfer = d_lambda3.at(i, j, k);
                if (ctx.parity(i) == 0) transfer = -transfer;
                if (!(jac == transfer)) {
                    report.transfer_identity = false;
                    report.witnesses.push_back("transfer identity fails at (" + ctx.name(i) + "," +
                                               ctx.name(j) + "," + ctx.name(k) + ")");
                }

                const VectorField& rhs = lq_nat.at(i, j, k);
                if (jac.is_zero() && rhs.is_zero()) continue;
                if (jac == rhs) {
                    if (resolved == -1) {
                        report.pass = false;
                        report.witnesses.push_back("sign flips at triple (" + ctx.name(i) + "," +
                                                   ctx.name(j) + "," + ctx.name(k) + ")");
                    }
                    resolved = 1;
                } else if (jac == -rhs) {
                    if (resolved == 1) {
                        report.pass = false;
                        report.witnesses.push_back("sign flips at triple (" + ctx.name(i) + "," +
                                                   ctx.name(j) + "," + ctx.name(k) + ")");
                    }
                    resolved = -1;
                } else {
                    report.pass = false;
                    report.witnesses.push_back("Jacobiator != ±L_Q(nabla At) at (" + ctx.name(i) +
                                               "," + ctx.name(j) + "," + ctx.name(k) + ")");
                }
            }
        }
    }
    report.sign = resolved;
    return report;
}

}  // namespace dg
