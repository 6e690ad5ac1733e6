#pragma once

#include <map>
#include <tuple>

#include "dg/vector_field.hpp"

namespace dg {

/// Degree-0 affine connection in a global chart, stored as Christoffel
/// coefficients: nabla_{d/dx_i} d/dx_j = sum_k Gamma^k_{ij} d/dx_k. Each
/// nonzero Gamma^k_{ij} must be homogeneous of degree |x_k| - |x_i| - |x_j|;
/// entries whose required degree no polynomial can realize must vanish, which
/// the constructor enforces.
class Connection {
public:
    explicit Connection(const Context& ctx);  // trivial connection

    static Connection trivial(const Context& ctx) { return Connection(ctx); }

    /// Builds from an entry table keyed (k, i, j), validating degrees.
    Connection(const Context& ctx, const std::map<std::tuple<int, int, int>, Polynomial>& gamma);

    const Context& context() const { return ctx_; }
    const Polynomial& gamma(int i, int j, int k) const;  // Gamma^k_{ij}
    void set_gamma(int i, int j, int k, Polynomial p);   // validates

    bool is_trivial() const;

    /// nabla_X Y for arbitrary vector fields; C^inf-linear in X, graded
    /// Leibniz in Y.
    VectorField nabla(const VectorField& X, const VectorField& Y) const;

    int required_degree(int i, int j, int k) const;

private:
    size_t idx(int i, int j, int k) const;
    Context ctx_;
    std::vector<Polynomial> gamma_;
};

class FrameTensor;  // atiyah.hpp

/// T^k_{ij} = Gamma^k_{ij} - (-1)^{|x_i||x_j|} Gamma^k_{ji}; the bracket term
/// vanishes on coordinate fields. Returns a degree-0 tangent tensor.
FrameTensor torsion(const Connection& nabla);

bool is_torsion_free(const Connection& nabla);

/// nabla^op_X Y = nabla_X Y - T(X,Y); an involution.
Connection opposite(const Connection& nabla);

/// The torsion-free average (nabla + nabla^op)/2.
Connection symmetrize(const Connection& nabla);

/// True iff every Christoffel slot has unrealizable degree, i.e. the trivial
/// connection is the only one on this chart.
bool only_trivial_connection(const Context& ctx);

}  // namespace dg
