#pragma once

#include "dg/atiyah.hpp"

namespace dg {

/// Doubled chart {x_i} ∪ {dx_i} with |dx_i| = |x_i| + 1. A graded form is a
/// Polynomial over `total`; its wedge degree is the dx-exponent count.
struct FormContext {
    Context base;
    Context total;

    explicit FormContext(const Context& b) : base(b), total(b.with_differentials()) {}

    int n() const { return base.size(); }
    int dx_index(int i) const { return base.size() + i; }

    int wedge_degree(const Monomial& w) const;
    bool wedge_homogeneous(const Polynomial& form, int* degree_out = nullptr) const;
    Polynomial wedge_component(const Polynomial& form, int k) const;
    Polynomial truncate_wedge(const Polynomial& form, int max_wedge) const;

    Polynomial embed(const Polynomial& base_poly) const;
    Polynomial dx(int i) const { return Polynomial::coordinate(total, dx_index(i)); }

    /// Coefficient g_i in form = sum_i dx_i * g_i for wedge-degree-1 forms,
    /// as a base-chart polynomial.
    Polynomial dx_coefficient(const Polynomial& form, int i) const;

    /// De Rham vector field d = sum dx_k d/dx_k on the doubled chart.
    VectorField de_rham() const;
    /// Contraction iota_Q = sum Q_k d/d(dx_k).
    VectorField contraction(const VectorField& q) const;
    /// Lie derivative [iota_Q, d]; the differential on forms.
    VectorField lie_q(const DgManifold& m) const;
};

/// End-valued graded form: square matrix of forms over a homogeneous frame,
/// row-acts-on-frame m(e_b) = sum_a m_{ab} e_a with left coefficients.
class EndForm {
public:
    EndForm(const FormContext& fc, const Frame& frame);

    static EndForm identity(const FormContext& fc, const Frame& frame);

    const FormContext& form_context() const { return fc_; }
    const Frame& frame() const { return frame_; }
    const Polynomial& entry(int a, int b) const;
    void set_entry(int a, int b, Polynomial p);

    EndForm operator+(const EndForm& rhs) const;
    EndForm operator-(const EndForm& rhs) const;
    EndForm operator*(const Rational& c) const;
    /// Koszul matrix product:
    /// (MN)_{ab} = sum_c (-1)^{|N_{cb}|(|e_a|+|e_c|)} M_{ac} N_{cb}.
    EndForm operator*(const EndForm& rhs) const;
    bool operator==(const EndForm& rhs) const;
    bool is_zero() const;

    EndForm pow(int k) const;  // k >= 0, pow(0) = identity
    EndForm truncate_wedge(int max_wedge) const;

    /// Operator parity if entries are consistent with one (0 or 1).
    std::optional<int> operator_parity() const;

private:
    FormContext fc_;
    Frame frame_;
    std::vector<Polynomial> entries_;
};

/// str m = sum_a (-1)^{|e_a|} m_{aa}; vanishes on graded commutators.
Polynomial supertrace(const EndForm& m);

/// [A,B] = AB - (-1)^{|A||B|} BA for operator-parity-homogeneous arguments.
EndForm graded_commutator(const EndForm& a, const EndForm& b);

/// Repackages an Atiyah-type tensor as a wedge-degree-1 matrix
/// alpha_{ab} = sum_i dx_i * At^a_{ib}.
EndForm as_end_valued_form(const FrameTensor& at, const FormContext& fc);

/// Scalar Atiyah class representative str(alpha^k)/k!. The transcendental
/// prefactor (i/2pi)^k is reported as metadata, never expanded.
Polynomial scalar_atiyah(const DgManifold& m, const Connection& nabla, int k);
Polynomial scalar_atiyah_of(const FrameTensor& at, const FormContext& fc, int k);

/// Todd class representative to wedge degree K, computed as
/// exp(sum_r a_r str(alpha^r)) with a_r the todd-log series coefficients
/// (Ber(exp N) = exp(str N) on unipotent arguments).
Polynomial todd(const DgManifold& m, const Connection& nabla, int max_wedge);
Polynomial todd_of(const FrameTensor& at, const FormContext& fc, int max_wedge);

}  // namespace dg
