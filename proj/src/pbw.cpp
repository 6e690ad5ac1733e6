#include "dg/pbw.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace dg {

namespace {

int field_parity(const VectorField& x) {
    auto [even, odd] = x.parity_split();
    if (!even.is_zero() && !odd.is_zero())
        throw std::logic_error("parity of parity-inhomogeneous vector field");
    return even.is_zero() && !odd.is_zero() ? 1 : 0;
}

/// nabla_X extended to a symmetric word as a derivation of degree |X|.
std::vector<std::pair<int, std::vector<VectorField>>> nabla_on_word(
    const Connection& nabla, const VectorField& x, int x_parity,
    const std::vector<VectorField>& word) {
    std::vector<std::pair<int, std::vector<VectorField>>> out;
    int passed = 0;
    for (size_t l = 0; l < word.size(); ++l) {
        int sign = ((x_parity * passed) % 2) ? -1 : 1;
        std::vector<VectorField> w = word;
        w[l] = nabla.nabla(x, word[l]);
        out.emplace_back(sign, std::move(w));
        passed += field_parity(word[l]);
    }
    return out;
}

}  // namespace

PbwMap::PbwMap(const Connection& nabla) : nabla_(nabla) {
    if (!is_torsion_free(nabla))
        throw std::invalid_argument("pbw requires a torsion-free connection");
}

// Recursion on parity-homogeneous entries; general entries are split first.
DiffOperator PbwMap::recurse(const std::vector<VectorField>& word) {
    const Context& ctx = nabla_.context();
    // parity-expand entries
    std::vector<std::vector<VectorField>> choices;
    for (const auto& x : word) {
        auto [xe, xo] = x.parity_split();
        std::vector<VectorField> parts;
        if (!xe.is_zero()) parts.push_back(xe);
        if (!xo.is_zero()) parts.push_back(xo);
        if (parts.empty()) return DiffOperator(ctx);
        choices.push_back(std::move(parts));
    }
    DiffOperator out(ctx);
    std::vector<size_t> pick(word.size(), 0);
    while (true) {
        std::vector<VectorField> w;
        w.reserve(word.size());
        for (size_t i = 0; i < word.size(); ++i) w.push_back(choices[i][pick[i]]);

        const size_t n = w.size();
        if (n == 1) {
            out += DiffOperator::from_vector_field(w[0]);
        } else {
            std::vector<int> parities(n);
            for (size_t k = 0; k < n; ++k) parities[k] = field_parity(w[k]);
            DiffOperator acc(ctx);
            int before = 0;
            for (size_t k = 0; k < n; ++k) {
                int sign = ((parities[k] * before) % 2) ? -1 : 1;
                std::vector<VectorField> rest;
                rest.reserve(n - 1);
                for (size_t l = 0; l < n; ++l)
                    if (l != k) rest.push_back(w[l]);
                DiffOperator term =
                    DiffOperator::from_vector_field(w[k]).compose(apply(word_tensor(rest)));
                for (const auto& [s2, w2] : nabla_on_word(nabla_, w[k], parities[k], rest)) {
                    DiffOperator inner = apply(word_tensor(w2));
                    term = (s2 < 0) ? term + inner : term - inner;
                }
                acc += (sign < 0) ? term * Rational(-1) : term;
                before += parities[k];
            }
            out += acc * Rational(1, static_cast<long>(n));
        }
        size_t i = 0;
        for (; i < word.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (i == word.size()) break;
    }
    return out;
}

DiffOperator PbwMap::word_operator(const Monomial& word) {
    auto it = basis_cache_.find(word);
    if (it != basis_cache_.end()) return it->second;
    const Context& ctx = nabla_.context();
    std::vector<VectorField> w;
    for (int i = 0; i < ctx.size(); ++i)
        for (int e = 0; e < word.exp(i); ++e) w.push_back(VectorField::coordinate(ctx, i));
    DiffOperator result;
    if (w.empty())
        result = DiffOperator::from_polynomial(Polynomial::constant(ctx, 1));
    else
        result = recurse(w);
    basis_cache_.emplace(word, result);
    return result;
}

DiffOperator PbwMap::apply(const SymTensor& s) {
    const Context& ctx = nabla_.context();
    require_same_context(ctx, s.context(), "pbw");
    DiffOperator out(ctx);
    for (const auto& [w, f] : s.terms()) {
        DiffOperator base = word_operator(w);
        for (const auto& [bw, bf] : base.terms()) out.add_term(bw, f * bf);
    }
    return out;
}

SymTensor PbwMap::inverse(const DiffOperator& d) {
    SymTensor out(d.context());
    DiffOperator rem = d;
    while (!rem.is_zero()) {
        int r = rem.order();
        SymTensor top = rem.top_symbol();
        out += top;
        if (r == 0) break;
        rem = rem - apply(top);
        if (!rem.is_zero() && rem.order() >= r)
            throw std::logic_error("pbw triangularity violated");
    }
    return out;
}

SymTensor PbwMap::word_tensor(const std::vector<VectorField>& word) {
    if (word.empty()) throw std::invalid_argument("empty symmetric word");
    const Context& ctx = word.front().context();
    SymTensor acc(ctx);
    acc.add_term(Monomial(ctx.size()), Polynomial::constant(ctx, 1));
    for (const auto& x : word) {
        SymTensor next(ctx);
        for (const auto& [w, g] : acc.terms()) {
            int wpar = w.parity(ctx);  // partial d/dx_i has parity |x_i|
            for (int a = 0; a < ctx.size(); ++a) {
                const Polynomial& fa = x.coeff(a);
                if (fa.is_zero()) continue;
                Monomial unit(ctx.size());
                unit.set_exp(a, 1);
                auto merged = Monomial::mul(w, unit, ctx);
                if (!merged) continue;
                // hop f_a leftwards across the word w
                auto [fe, fo] = fa.parity_split();
                Polynomial hopped = fe;
                if (!fo.is_zero()) hopped += (wpar == 1) ? -fo : fo;
                next.add_term(merged->first, g * hopped * Rational(merged->second));
            }
        }
        acc = std::move(next);
    }
    return acc;
}

SymTensor PbwMap::delta(const DgManifold& m, const SymTensor& s) {
    return inverse(lq_diffop(m, apply(s)));
}

VectorField PbwMap::lambda(const DgManifold& m, const std::vector<VectorField>& args) {
    if (args.empty()) throw std::invalid_argument("lambda needs at least one argument");
    SymTensor back = delta(m, word_tensor(args));
    VectorField v = back.field_part();
    // dual-side components carry (-1)^{k-1}
    if (args.size() % 2 == 0) v = -v;
    return v;
}

DiffOperator pbw(const SymTensor& s, const Connection& nabla) { return PbwMap(nabla).apply(s); }

SymTensor pbw_inverse(const DiffOperator& d, const Connection& nabla) {
    return PbwMap(nabla).inverse(d);
}

SymTensor delta(const DgManifold& m, const Connection& nabla, const SymTensor& s) {
    return PbwMap(nabla).delta(m, s);
}

VectorField lambda_bracket(const DgManifold& m, const Connection& nabla,
                           const std::vector<VectorField>& args) {
    return PbwMap(nabla).lambda(m, args);
}

VectorField linfty_residual(const DgManifold& m, PbwMap& map,
                            const std::vector<VectorField>& tuple) {
    const int arity = static_cast<int>(tuple.size());
    std::vector<int> parities(tuple.size());
    for (size_t k = 0; k < tuple.size(); ++k) parities[k] = field_parity(tuple[k]);

    VectorField residual(m.ctx);
    // Subsets S feed the inner bracket; the sorted complement follows.
    for (unsigned mask = 1; mask < (1u << arity); ++mask) {
        std::vector<VectorField> inner, outer_rest;
        // Koszul sign of the unshuffle: each unselected x_u crosses every
        // selected x_v with v > u.
        int sign_exp = 0;
        int selected_odd_tail = 0;
        for (int u = arity - 1; u >= 0; --u) {
            if (mask & (1u << u))
                selected_odd_tail += parities[static_cast<size_t>(u)];
            else
                sign_exp += parities[static_cast<size_t>(u)] * selected_odd_tail;
        }
        for (int u = 0; u < arity; ++u) {
            if (mask & (1u << u))
                inner.push_back(tuple[static_cast<size_t>(u)]);
            else
                outer_rest.push_back(tuple[static_cast<size_t>(u)]);
        }
        VectorField lam_inner = map.lambda(m, inner);
        std::vector<VectorField> outer;
        outer.push_back(lam_inner);
        for (auto& x : outer_rest) outer.push_back(x);
        VectorField v = map.lambda(m, outer);
        residual += (sign_exp & 1) ? -v : v;
    }
    return residual;
}

VectorField linfty_residual(const DgManifold& m, const Connection& nabla,
                            const std::vector<VectorField>& tuple) {
    PbwMap map(nabla);
    return linfty_residual(m, map, tuple);
}

LinftyReport linfty_check(const DgManifold& m, const Connection& nabla,
                          const std::vector<VectorField>& generators, const LinftyOptions& opt) {
    LinftyReport report;
    const size_t g = generators.size();
    PbwMap map(nabla);
    std::mt19937 rng(opt.seed);
    auto pick = [&](size_t bound) { return static_cast<size_t>(rng()) % bound; };

    for (int arity = 1; arity <= opt.max_arity; ++arity) {
        std::vector<std::vector<size_t>> tuples;
        long long count = 1;  // multisets: C(g + arity - 1, arity)
        for (int i = 0; i < arity; ++i) count = count * (static_cast<long long>(g) + i) / (i + 1);
        if (count <= opt.max_tuples_per_arity) {
            std::vector<size_t> cur(static_cast<size_t>(arity), 0);
            bool done = false;
            while (!done) {
                tuples.push_back(cur);
                int pos = arity - 1;
                while (pos >= 0 && cur[static_cast<size_t>(pos)] == g - 1) --pos;
                if (pos < 0) {
                    done = true;
                } else {
                    size_t v = ++cur[static_cast<size_t>(pos)];
                    for (int q = pos + 1; q < arity; ++q) cur[static_cast<size_t>(q)] = v;
                }
            }
        } else {
            for (int t = 0; t < opt.max_tuples_per_arity; ++t) {
                std::vector<size_t> tup(static_cast<size_t>(arity));
                for (auto& v : tup) v = pick(g);
                std::sort(tup.begin(), tup.end());
                tuples.push_back(std::move(tup));
            }
        }
        for (const auto& tup : tuples) {
            std::vector<VectorField> args;
            for (size_t idx : tup) args.push_back(generators[idx]);
            VectorField r = linfty_residual(m, map, args);
            ++report.tuples_checked;
            if (!r.is_zero()) {
                report.pass = false;
                std::ostringstream os;
                os << "arity " << arity << " tuple (";
                for (size_t q = 0; q < tup.size(); ++q)
                    os << (q ? ", " : "") << generators[tup[q]].to_string();
                os << ") residual " << r.to_string();
                report.failures.push_back(os.str());
            }
        }
    }
    return report;
}

}  // namespace dg
