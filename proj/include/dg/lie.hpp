#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dg/atiyah.hpp"
#include "dg/forms.hpp"
#include "dg/linalg.hpp"

namespace dg {

/// Finite-dimensional Lie algebra over Q by structure constants,
/// [E_i, E_j] = sum_k c^k_{ij} E_k with c antisymmetric in (i, j).
class LieAlgebra {
public:
    explicit LieAlgebra(int dim);

    int dim() const { return dim_; }
    const Rational& c(int i, int j, int k) const;
    /// Sets c^k_{ij} and c^k_{ji} = -c^k_{ij}.
    void set_c(int i, int j, int k, const Rational& v);

    struct JacobiWitness {
        int i, j, k;
    };
    /// First failing triple of the Jacobi identity, if any.
    std::optional<JacobiWitness> jacobi_violation() const;

    /// Named catalog: abelian(n), solvable2, sl2, heisenberg3.
    static LieAlgebra catalog(const std::string& name);

private:
    int dim_;
    std::vector<Rational> c_;
};

/// The dg-manifold (g[1], d_CE): coordinates xi1..xin of degree 1 and
/// Q_k = -1/2 sum c^k_{ij} xi^i xi^j. Throws on a Jacobi violation, naming
/// the failing triple.
DgManifold ce_manifold(const LieAlgebra& g);
/// Same expansion without the Jacobi precheck (validation left to callers).
DgManifold ce_manifold_unchecked(const LieAlgebra& g);

/// All normal-form monomials of the given degree; requires every coordinate
/// degree positive so the set is finite.
std::vector<Monomial> monomials_of_degree(const Context& ctx, int degree);

/// Basis of the degree-d slice of Gamma(T^v M ⊗ End TM).
struct EndoBasis {
    struct Elem {
        int i, a, b;
        Monomial mono;
    };
    Context ctx;
    int degree = 0;
    std::vector<Elem> elems;

    int dim() const { return static_cast<int>(elems.size()); }
    int index_of(int i, int a, int b, const Monomial& m) const;  // -1 if absent
    std::vector<Rational> coordinates(const FrameTensor& t) const;
    FrameTensor tensor(const std::vector<Rational>& coords) const;
};

EndoBasis endo_basis(const DgManifold& m, int degree);
/// Matrix of the dg-module differential from the degree-d slice to d+1.
QMatrix endo_differential(const DgManifold& m, int degree);

/// Basis of wedge-degree-k forms of shifted degree d (the [k]-shift makes the
/// underlying doubled-chart degree d + k).
std::vector<Monomial> omega_basis(const FormContext& fc, int wedge_k, int degree);
QMatrix omega_differential(const DgManifold& m, const FormContext& fc, int wedge_k, int degree);

struct SliceSpec {
    enum class Space { endo, omega } space = Space::endo;
    int wedge_k = 0;  // omega only
    int degree = 0;
};

/// dim ker - dim im at the requested spot, all ranks exact over Q.
int cohomology_dim(const DgManifold& m, const SliceSpec& spec);

struct ExactnessResult {
    bool is_cocycle = true;
    bool exact = false;
    std::optional<FrameTensor> primitive;
};

/// Solves d(primitive) = cocycle in the endo slices; errors when the input is
/// not a cocycle.
ExactnessResult is_exact_endo(const DgManifold& m, const FrameTensor& cocycle);

struct BracketClassReport {
    bool pass = true;
    bool literal_match = false;  // At coefficients equal structure constants
    std::vector<std::string> notes;
    std::vector<std::string> witnesses;
};

/// At for the given connection versus the structure-constant tensor in the
/// same slice: both cocycles, difference exact; literal equality reported.
BracketClassReport bracket_class_check(const LieAlgebra& g, const Connection& nabla);

/// Structure constants as a degree-1 tangent tensor on g[1].
FrameTensor structure_tensor(const LieAlgebra& g, const DgManifold& m);

/// dim (S^k g^v)^g by solving the invariance equations directly; independent
/// of the xi-side cohomology machinery.
int invariant_dim_oracle(const LieAlgebra& g, int k);

/// Chevalley-Eilenberg cohomology dimension H^p(g; g^v ⊗ g^v ⊗ g) by direct
/// linear algebra on the wedge complex.
int ce_cohomology_dim(const LieAlgebra& g, int p);

/// Dimensions of H^k(Gamma(T^v M ⊗ End TM), Q) and H^{k-1}_CE(g, g^v⊗g^v⊗g).
std::pair<int, int> endo_lemma_dims(const LieAlgebra& g, int k);

struct DufloReport {
    bool pass = false;
    int sigma = 0;  // exponent: artifact = oracle^sigma
    std::string artifact;  // series in x1..xn, normal form
    std::string oracle;
    std::string note;
    Polynomial artifact_poly;  // same data, machine readable
    Polynomial oracle_poly;
};

/// Todd class of g[1] pushed through the degree-forced identification
/// (dxi-monomials to symmetric monomials) against the det-series of
/// (1 - e^{-ad_x})/ad_x, truncated at order K.
DufloReport duflo_compare(const LieAlgebra& g, int order);

}  // namespace dg
