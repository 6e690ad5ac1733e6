#include "dg/lie.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dg/series.hpp"

namespace dg {

LieAlgebra::LieAlgebra(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("LieAlgebra: dimension must be positive");
    size_t n = static_cast<size_t>(dim);
    c_.assign(n * n * n, Rational(0));
}

const Rational& LieAlgebra::c(int i, int j, int k) const {
    size_t n = static_cast<size_t>(dim_);
    return c_[(static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k)];
}

void LieAlgebra::set_c(int i, int j, int k, const Rational& v) {
    if (i == j && v != 0) throw std::invalid_argument("structure constants: c^k_{ii} must vanish");
    size_t n = static_cast<size_t>(dim_);
    c_[(static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k)] = v;
    c_[(static_cast<size_t>(j) * n + static_cast<size_t>(i)) * n + static_cast<size_t>(k)] = -v;
}

std::optional<LieAlgebra::JacobiWitness> LieAlgebra::jacobi_violation() const {
    // [[E_i,E_j],E_k] + [[E_j,E_k],E_i] + [[E_k,E_i],E_j] = 0
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            for (int k = j + 1; k < dim_; ++k)
                for (int l = 0; l < dim_; ++l) {
                    Rational acc(0);
                    for (int m = 0; m < dim_; ++m)
                        acc += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) +
                               c(k, i, m) * c(m, j, l);
                    if (acc != 0) return JacobiWitness{i, j, k};
                }
    return std::nullopt;
}

LieAlgebra LieAlgebra::catalog(const std::string& name) {
    if (name.rfind("abelian", 0) == 0) {
        std::string arg = name.substr(7);
        if (!arg.empty() && arg.front() == '(') arg = arg.substr(1, arg.size() - 2);
        int n = arg.empty() ? 2 : std::stoi(arg);
        return LieAlgebra(n);
    }
    if (name == "solvable2") {
        LieAlgebra g(2);
        g.set_c(0, 1, 1, 1);  // [E1,E2] = E2
        return g;
    }
    if (name == "sl2") {
        LieAlgebra g(3);
        g.set_c(0, 1, 2, 1);   // [e,f] = h
        g.set_c(2, 0, 0, 2);   // [h,e] = 2e
        g.set_c(2, 1, 1, -2);  // [h,f] = -2f
        return g;
    }
    if (name == "heisenberg3") {
        LieAlgebra g(3);
        g.set_c(0, 1, 2, 1);  // [E1,E2] = E3
        return g;
    }
    throw std::invalid_argument("unknown Lie algebra '" + name + "'");
}

DgManifold ce_manifold_unchecked(const LieAlgebra& g) {
    std::vector<Coordinate> coords;
    for (int i = 0; i < g.dim(); ++i) coords.push_back({"xi" + std::to_string(i + 1), 1});
    Context ctx(std::move(coords));
    VectorField q(ctx);
    for (int k = 0; k < g.dim(); ++k) {
        Polynomial qk(ctx);
        for (int i = 0; i < g.dim(); ++i)
            for (int j = i + 1; j < g.dim(); ++j) {
                if (g.c(i, j, k) == 0) continue;
                // -1/2 c^k_{ij} xi^i xi^j summed over both orders
                qk += Polynomial::coordinate(ctx, i) * Polynomial::coordinate(ctx, j) *
                      (-g.c(i, j, k));
            }
        q.set_coeff(k, qk);
    }
    return DgManifold{ctx, q};
}

DgManifold ce_manifold(const LieAlgebra& g) {
    if (auto w = g.jacobi_violation())
        throw std::invalid_argument("Jacobi identity fails on triple (" +
                                    std::to_string(w->i + 1) + "," + std::to_string(w->j + 1) +
                                    "," + std::to_string(w->k + 1) + ")");
    return ce_manifold_unchecked(g);
}

namespace {

void enumerate_monomials(const Context& ctx, int coord, int remaining, Monomial& cur,
                         std::vector<Monomial>& out) {
    if (remaining == 0) {
        // pad the rest with exponent 0
        out.push_back(cur);
        return;
    }
    if (coord >= ctx.size()) return;
    int d = ctx.degree(coord);
    int max_e = ctx.parity(coord) == 1 ? 1 : remaining / d;
    for (int e = 0; e <= max_e && e * d <= remaining; ++e) {
        cur.set_exp(coord, e);
        enumerate_monomials(ctx, coord + 1, remaining - e * d, cur, out);
    }
    cur.set_exp(coord, 0);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const Context& ctx, int degree) {
    if (!ctx.all_positive_degrees())
        throw std::invalid_argument(
            "finite slices require all coordinate degrees positive (unbounded slice)");
    std::vector<Monomial> out;
    if (degree < 0) return out;
    Monomial cur(ctx.size());
    enumerate_monomials(ctx, 0, degree, cur, out);
    return out;
}

int EndoBasis::index_of(int i, int a, int b, const Monomial& m) const {
    for (size_t t = 0; t < elems.size(); ++t) {
        const Elem& e = elems[t];
        if (e.i == i && e.a == a && e.b == b && e.mono == m) return static_cast<int>(t);
    }
    return -1;
}

std::vector<Rational> EndoBasis::coordinates(const FrameTensor& t) const {
    std::vector<Rational> v(elems.size(), Rational(0));
    const int n = ctx.size();
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (const auto& [m, coeff] : t.entry(i, a, b).terms()) {
                    int idx = index_of(i, a, b, m);
                    if (idx < 0)
                        throw std::invalid_argument(
                            "tensor does not lie in the degree-" + std::to_string(degree) +
                            " slice");
                    v[static_cast<size_t>(idx)] = coeff;
                }
    return v;
}

FrameTensor EndoBasis::tensor(const std::vector<Rational>& coords) const {
    FrameTensor t(ctx, Frame::tangent(ctx), degree);
    for (size_t idx = 0; idx < elems.size(); ++idx) {
        if (coords[idx] == 0) continue;
        const Elem& e = elems[idx];
        Polynomial p = t.entry(e.i, e.a, e.b);
        p += Polynomial::monomial(ctx, e.mono, coords[idx]);
        t.set_entry(e.i, e.a, e.b, p);
    }
    return t;
}

EndoBasis endo_basis(const DgManifold& m, int degree) {
    EndoBasis basis;
    basis.ctx = m.ctx;
    basis.degree = degree;
    const int n = m.ctx.size();
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                // entry degree forced by the tensor degree
                int want = degree - m.ctx.degree(i) - m.ctx.degree(b) + m.ctx.degree(a);
                for (const auto& mono : monomials_of_degree(m.ctx, want))
                    basis.elems.push_back({i, a, b, mono});
            }
    return basis;
}

QMatrix endo_differential(const DgManifold& m, int degree) {
    EndoBasis from = endo_basis(m, degree);
    EndoBasis to = endo_basis(m, degree + 1);
    QMatrix d(to.dim(), from.dim());
    DgVectorBundle tangent = DgVectorBundle::tangent(m);
    for (int col = 0; col < from.dim(); ++col) {
        std::vector<Rational> unit(static_cast<size_t>(from.dim()), Rational(0));
        unit[static_cast<size_t>(col)] = 1;
        FrameTensor t = from.tensor(unit);
        FrameTensor dt = complex_differential(t, tangent);
        std::vector<Rational> v = to.coordinates(dt);
        for (int row = 0; row < to.dim(); ++row) d.at(row, col) = v[static_cast<size_t>(row)];
    }
    return d;
}

std::vector<Monomial> omega_basis(const FormContext& fc, int wedge_k, int degree) {
    std::vector<Monomial> out;
    for (const auto& m : monomials_of_degree(fc.total, degree + wedge_k))
        if (fc.wedge_degree(m) == wedge_k) out.push_back(m);
    return out;
}

QMatrix omega_differential(const DgManifold& m, const FormContext& fc, int wedge_k, int degree) {
    std::vector<Monomial> from = omega_basis(fc, wedge_k, degree);
    std::vector<Monomial> to = omega_basis(fc, wedge_k, degree + 1);
    std::map<Monomial, int> to_index;
    for (size_t t = 0; t < to.size(); ++t) to_index[to[t]] = static_cast<int>(t);
    VectorField lq = fc.lie_q(m);
    QMatrix d(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (size_t col = 0; col < from.size(); ++col) {
        Polynomial img = lq.apply(Polynomial::monomial(fc.total, from[col], 1));
        for (const auto& [mono, coeff] : img.terms()) {
            auto it = to_index.find(mono);
            if (it == to_index.end())
                throw std::logic_error("omega differential leaves the expected slice");
            d.at(it->second, static_cast<int>(col)) = coeff;
        }
    }
    return d;
}

int cohomology_dim(const DgManifold& m, const SliceSpec& spec) {
    if (spec.space == SliceSpec::Space::endo) {
        QMatrix out = endo_differential(m, spec.degree);
        QMatrix in = endo_differential(m, spec.degree - 1);
        int dim_mid = out.cols();
        return dim_mid - out.rank() - in.rank();
    }
    FormContext fc(m.ctx);
    QMatrix out = omega_differential(m, fc, spec.wedge_k, spec.degree);
    QMatrix in = omega_differential(m, fc, spec.wedge_k, spec.degree - 1);
    return out.cols() - out.rank() - in.rank();
}

ExactnessResult is_exact_endo(const DgManifold& m, const FrameTensor& cocycle) {
    ExactnessResult result;
    const int degree = cocycle.degree();
    EndoBasis mid = endo_basis(m, degree);
    std::vector<Rational> v = mid.coordinates(cocycle);
    QMatrix out = endo_differential(m, degree);
    for (const auto& y : out.apply(v))
        if (y != 0) {
            result.is_cocycle = false;
            return result;
        }
    QMatrix in = endo_differential(m, degree - 1);
    auto x = in.solve(v);
    if (x) {
        result.exact = true;
        EndoBasis lower = endo_basis(m, degree - 1);
        result.primitive = lower.tensor(*x);
    }
    return result;
}

FrameTensor structure_tensor(const LieAlgebra& g, const DgManifold& m) {
    FrameTensor t(m.ctx, Frame::tangent(m.ctx), 1);
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
            for (int k = 0; k < g.dim(); ++k)
                if (g.c(i, j, k) != 0)
                    t.set_entry(i, k, j, Polynomial::constant(m.ctx, g.c(i, j, k)));
    return t;
}

BracketClassReport bracket_class_check(const LieAlgebra& g, const Connection& nabla) {
    BracketClassReport report;
    DgManifold m = ce_manifold(g);
    require_same_context(m.ctx, nabla.context(), "bracket_class_check");
    FrameTensor at = atiyah_tangent(m, nabla);
    FrameTensor bracket_t = structure_tensor(g, m);

    if (!complex_differential(at, m).is_zero()) {
        report.pass = false;
        report.witnesses.push_back("Atiyah tensor is not a cocycle");
    }
    if (!complex_differential(bracket_t, m).is_zero()) {
        report.pass = false;
        report.witnesses.push_back("structure tensor is not a cocycle");
    }
    report.literal_match = (at == bracket_t);
    if (report.literal_match) {
        report.notes.push_back(
            "At(d/dxi_i, d/dxi_j) = sum_k c^k_{ij} d/dxi_k exactly (index convention: "
            "value index up, arguments in order)");
    }
    ExactnessResult diff = is_exact_endo(m, at - bracket_t);
    if (!diff.is_cocycle || !diff.exact) {
        report.pass = false;
        report.witnesses.push_back("At - bracket tensor is not exact");
    }
    return report;
}

int invariant_dim_oracle(const LieAlgebra& g, int k) {
    const int n = g.dim();
    // commutative monomials of degree k in x^1..x^n
    std::vector<Coordinate> coords;
    for (int i = 0; i < n; ++i) coords.push_back({"x" + std::to_string(i + 1), 2});
    Context ctx(std::move(coords));  // degree 2: even, positive, finite slices
    std::vector<Monomial> basis = monomials_of_degree(ctx, 2 * k);
    std::map<Monomial, int> index;
    for (size_t t = 0; t < basis.size(); ++t) index[basis[t]] = static_cast<int>(t);

    const int dim = static_cast<int>(basis.size());
    QMatrix action(n * dim, dim);
    for (int col = 0; col < dim; ++col) {
        const Monomial& mono = basis[static_cast<size_t>(col)];
        for (int i = 0; i < n; ++i) {
            // E_i . x^e = -sum_{j,l} e_j c^j_{il} x^{e - d_j + d_l}
            for (int j = 0; j < n; ++j) {
                if (mono.exp(j) == 0) continue;
                for (int l = 0; l < n; ++l) {
                    const Rational& cc = g.c(i, l, j);  // c^j_{il}
                    if (cc == 0) continue;
                    Monomial target = mono;
                    target.set_exp(j, target.exp(j) - 1);
                    target.set_exp(l, target.exp(l) + 1);
                    action.at(i * dim + index[target], col) += Rational(-mono.exp(j)) * cc;
                }
            }
        }
    }
    return dim - action.rank();
}

namespace {

// Basis bookkeeping for the CE complex with coefficients in W = g^v⊗g^v⊗g.
struct CeBasis {
    int n;
    int p;
    std::vector<std::vector<int>> subsets;  // sorted index sets, |S| = p

    explicit CeBasis(int n_, int p_) : n(n_), p(p_) {
        std::vector<int> cur;
        build(0, cur);
    }
    void build(int start, std::vector<int>& cur) {
        if (static_cast<int>(cur.size()) == p) {
            subsets.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            build(v + 1, cur);
            cur.pop_back();
        }
    }
    int wdim() const { return n * n * n; }
    int dim() const { return static_cast<int>(subsets.size()) * wdim(); }
    int windex(int a, int b, int r) const { return (a * n + b) * n + r; }
    int index(int subset_idx, int w) const { return subset_idx * wdim() + w; }
};

// E_i . w for w = x^a ⊗ x^b ⊗ E_r, as coefficients on the W basis.
void module_action(const LieAlgebra& g, int i, int a, int b, int r,
                   std::vector<std::pair<int, Rational>>& out, const CeBasis& basis) {
    const int n = g.dim();
    for (int l = 0; l < n; ++l) {
        // (ad*_i x^a) = -sum_l c^a_{il} x^l
        if (g.c(i, l, a) != 0) out.emplace_back(basis.windex(l, b, r), -g.c(i, l, a));
        if (g.c(i, l, b) != 0) out.emplace_back(basis.windex(a, l, r), -g.c(i, l, b));
        if (g.c(i, r, l) != 0) out.emplace_back(basis.windex(a, b, l), g.c(i, r, l));
    }
}

QMatrix ce_differential(const LieAlgebra& g, int p) {
    const int n = g.dim();
    CeBasis from(n, p), to(n, p + 1);
    QMatrix d(to.dim(), from.dim());
    for (size_t s_idx = 0; s_idx < from.subsets.size(); ++s_idx) {
        const auto& s = from.subsets[s_idx];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int r = 0; r < n; ++r) {
                    int col = from.index(static_cast<int>(s_idx), from.windex(a, b, r));
                    // omega = e_S ⊗ w; evaluate d omega on each (p+1)-subset U.
                    for (size_t u_idx = 0; u_idx < to.subsets.size(); ++u_idx) {
                        const auto& u = to.subsets[u_idx];
                        // first sum: (-1)^t E_{u_t} . omega(U \ u_t)
                        for (size_t t = 0; t < u.size(); ++t) {
                            std::vector<int> rest;
                            for (size_t q = 0; q < u.size(); ++q)
                                if (q != t) rest.push_back(u[q]);
                            if (rest != s) continue;
                            std::vector<std::pair<int, Rational>> acts;
                            module_action(g, u[t], a, b, r, acts, to);
                            int sign = (t % 2) ? -1 : 1;
                            for (const auto& [w, v] : acts)
                                d.at(to.index(static_cast<int>(u_idx), w), col) += v * sign;
                        }
                        // second sum: (-1)^{t+q} omega([E_{u_t},E_{u_q}], U \ {u_t,u_q})
                        for (size_t t = 0; t < u.size(); ++t)
                            for (size_t q = t + 1; q < u.size(); ++q) {
                                std::vector<int> rest;
                                for (size_t z = 0; z < u.size(); ++z)
                                    if (z != t && z != q) rest.push_back(u[z]);
                                for (int l = 0; l < n; ++l) {
                                    const Rational& cc = g.c(u[t], u[q], l);
                                    if (cc == 0) continue;
                                    // omega(E_l, rest) with E_l sorted into rest
                                    if (std::find(rest.begin(), rest.end(), l) != rest.end())
                                        continue;
                                    std::vector<int> args = rest;
                                    size_t pos = 0;
                                    while (pos < args.size() && args[pos] < l) ++pos;
                                    args.insert(args.begin() + static_cast<long>(pos), l);
                                    if (args != s) continue;
                                    int sign = ((t + q) % 2) ? -1 : 1;
                                    // moving E_l from front across `pos` args
                                    if (pos % 2) sign = -sign;
                                    int w = to.windex(a, b, r);
                                    d.at(to.index(static_cast<int>(u_idx), w), col) += cc * sign;
                                }
                            }
                    }
                }
    }
    return d;
}

}  // namespace

int ce_cohomology_dim(const LieAlgebra& g, int p) {
    if (p < 0) return 0;
    QMatrix out = ce_differential(g, p);
    int rank_in = 0;
    if (p >= 1) rank_in = ce_differential(g, p - 1).rank();
    return out.cols() - out.rank() - rank_in;
}

std::pair<int, int> endo_lemma_dims(const LieAlgebra& g, int k) {
    DgManifold m = ce_manifold(g);
    SliceSpec spec;
    spec.space = SliceSpec::Space::endo;
    spec.degree = k;
    return {cohomology_dim(m, spec), ce_cohomology_dim(g, k - 1)};
}

namespace {

// Plain commutative polynomial matrices for the Duflo oracle.
struct PolyMat {
    int n;
    std::vector<Polynomial> e;

    PolyMat(int n_, const Context& ctx) : n(n_) {
        e.assign(static_cast<size_t>(n) * static_cast<size_t>(n), Polynomial::zero(ctx));
    }
    Polynomial& at(int r, int c) { return e[static_cast<size_t>(r) * n + static_cast<size_t>(c)]; }
    const Polynomial& at(int r, int c) const {
        return e[static_cast<size_t>(r) * n + static_cast<size_t>(c)];
    }
    static PolyMat mul(const PolyMat& a, const PolyMat& b, int max_total) {
        PolyMat out(a.n, a.e.front().context());
        for (int r = 0; r < a.n; ++r)
            for (int k = 0; k < a.n; ++k) {
                if (a.at(r, k).is_zero()) continue;
                for (int c = 0; c < a.n; ++c)
                    if (!b.at(k, c).is_zero())
                        out.at(r, c) += (a.at(r, k) * b.at(k, c)).truncate_total_exponent(max_total);
            }
        return out;
    }
    Polynomial trace() const {
        Polynomial t = Polynomial::zero(e.front().context());
        for (int r = 0; r < n; ++r) t += at(r, r);
        return t;
    }
};

Polynomial truncated_inverse(const Polynomial& p, int max_total) {
    // p = 1 + u with u of positive exponent order: inverse = sum (-u)^j
    const Context& ctx = p.context();
    Polynomial one = Polynomial::constant(ctx, 1);
    Polynomial u = p - one;
    Polynomial acc = one;
    Polynomial power = one;
    for (int j = 1; j <= max_total; ++j) {
        power = (power * u).truncate_total_exponent(max_total);
        if (power.is_zero()) break;
        acc += (j % 2) ? -power : power;
    }
    return acc;
}

}  // namespace

DufloReport duflo_compare(const LieAlgebra& g, int order) {
    DufloReport report;
    const int n = g.dim();
    DgManifold m = ce_manifold(g);
    FormContext fc(m.ctx);

    // Oracle side: det-series of (1 - e^{-ad_x})/ad_x in S(g^v).
    std::vector<Coordinate> coords;
    for (int i = 0; i < n; ++i) coords.push_back({"x" + std::to_string(i + 1), 0});
    Context oc(std::move(coords));
    PolyMat ad(n, oc);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            Polynomial entry(oc);
            for (int mm = 0; mm < n; ++mm)
                if (g.c(mm, i, j) != 0)
                    entry += Polynomial::coordinate(oc, mm) * g.c(mm, i, j);
            ad.at(j, i) = entry;  // ad_x(E_i) = sum_j (sum_m c^j_{mi} x^m) E_j
        }
    PowerSeries f = PowerSeries::todd_arg_series(order);
    PolyMat fm(n, oc);
    for (int r = 0; r < n; ++r) fm.at(r, r) = Polynomial::constant(oc, f.coeff(0));
    PolyMat ad_pow(n, oc);
    for (int r = 0; r < n; ++r) ad_pow.at(r, r) = Polynomial::constant(oc, 1);
    for (int r = 1; r <= order; ++r) {
        ad_pow = PolyMat::mul(ad_pow, ad, order);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) fm.at(a, b) += ad_pow.at(a, b) * f.coeff(r);
    }
    // log then exp-of-trace
    PolyMat nm = fm;
    for (int r = 0; r < n; ++r) nm.at(r, r) -= Polynomial::constant(oc, 1);
    Polynomial log_tr(oc);
    PolyMat npow(n, oc);
    for (int r = 0; r < n; ++r) npow.at(r, r) = Polynomial::constant(oc, 1);
    for (int r = 1; r <= order; ++r) {
        npow = PolyMat::mul(npow, nm, order);
        Polynomial tr = npow.trace();
        if (!tr.is_zero()) log_tr += tr * Rational((r % 2) ? 1 : -1, r);
    }
    Polynomial oracle = Polynomial::constant(oc, 1);
    Polynomial term = Polynomial::constant(oc, 1);
    for (int j = 1; j <= order; ++j) {
        term = (term * log_tr).truncate_total_exponent(order) * Rational(1, j);
        if (term.is_zero()) break;
        oracle += term;
    }

    // Artifact side: todd to wedge order, dxi-monomials -> symmetric monomials.
    Polynomial todd_form = todd(m, Connection::trivial(m.ctx), order);
    Polynomial artifact(oc);
    for (const auto& [w, coeff] : todd_form.terms()) {
        Monomial target(n);
        for (int i = 0; i < n; ++i) {
            if (w.exp(i) != 0) {
                report.note = "todd component is not xi-free";
                return report;
            }
            target.set_exp(i, w.exp(fc.dx_index(i)));
        }
        artifact.add_term(target, coeff);
    }
    report.artifact = artifact.to_string();
    report.oracle = oracle.to_string();
    report.artifact_poly = artifact;
    report.oracle_poly = oracle;

    if (artifact == oracle) {
        report.pass = true;
        report.sigma = 1;
    } else if (artifact == truncated_inverse(oracle, order)) {
        report.pass = true;
        report.sigma = -1;
    } else {
        report.note = "todd does not match the det-series or its reciprocal";
    }
    return report;
}

}  // namespace dg
