#pragma once

#include <map>
#include <vector>

#include "dg/connection.hpp"
#include "dg/diff_op.hpp"

namespace dg {

/// Poincaré–Birkhoff–Witt map of a torsion-free connection, with a cache of
/// the map on pure coordinate words (the map is C^inf-linear, so every input
/// reduces to those; the cache behaves as if purely functional).
class PbwMap {
public:
    explicit PbwMap(const Connection& nabla);

    const Connection& connection() const { return nabla_; }

    /// pbw(f) = f, pbw(X) = X, and the averaged (n+1)-term recursion on
    /// longer words; filtration preserving with identity top symbol.
    DiffOperator apply(const SymTensor& s);
    /// Inverse by filtration induction: strip top symbol, subtract, recurse.
    SymTensor inverse(const DiffOperator& d);

    /// Canonical expansion of a symmetric word of vector fields into
    /// coefficient * coordinate-word terms (Koszul hops to the left).
    static SymTensor word_tensor(const std::vector<VectorField>& word);

    /// delta = pbw^{-1} ∘ [Q,-] ∘ pbw.
    SymTensor delta(const DgManifold& m, const SymTensor& s);

    /// k-ary bracket: word-length-1 component of delta on the word, with the
    /// dual-side sign (-1)^{k-1}. lambda_1 = L_Q, lambda_2 = Atiyah cocycle.
    VectorField lambda(const DgManifold& m, const std::vector<VectorField>& args);

private:
    DiffOperator word_operator(const Monomial& word);
    DiffOperator recurse(const std::vector<VectorField>& word);

    Connection nabla_;
    std::map<Monomial, DiffOperator> basis_cache_;
};

DiffOperator pbw(const SymTensor& s, const Connection& nabla);
SymTensor pbw_inverse(const DiffOperator& d, const Connection& nabla);
SymTensor delta(const DgManifold& m, const Connection& nabla, const SymTensor& s);
VectorField lambda_bracket(const DgManifold& m, const Connection& nabla,
                           const std::vector<VectorField>& args);

struct LinftyReport {
    bool pass = true;
    int tuples_checked = 0;
    std::vector<std::string> failures;  // tuple description per failing residual
};

struct LinftyOptions {
    int max_arity = 4;
    /// Exhaustive when the tuple count per arity stays below this bound,
    /// otherwise a deterministic seeded sample of this size is used.
    int max_tuples_per_arity = 200;
    unsigned seed = 20240801;
};

/// Generalized Jacobi residuals over (i, m-i)-unshuffles with Koszul signs,
/// for every total arity m <= max_arity on tuples from the generator list.
/// Generators must be parity-homogeneous.
LinftyReport linfty_check(const DgManifold& m, const Connection& nabla,
                          const std::vector<VectorField>& generators, const LinftyOptions& opt);

/// Single residual, exposed for tests.
VectorField linfty_residual(const DgManifold& m, const Connection& nabla,
                            const std::vector<VectorField>& tuple);
VectorField linfty_residual(const DgManifold& m, PbwMap& map,
                            const std::vector<VectorField>& tuple);

}  // namespace dg
