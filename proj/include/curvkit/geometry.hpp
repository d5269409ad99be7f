#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvkit/matcore.hpp"

// Curvature engine: Christoffel matrices of both kinds, two-index Riemann
// curvature matrices, Ricci, field-equation verification, and the
// identity/property suite.  Everything is computed in coordinate form from a
// metric field g(x); indices are 0-based throughout.
namespace geometry {

using matcore::ColumnVector;
using matcore::SquareMatrix;

// thrown when a computed quantity fails an internal consistency bound
// (e.g. the Ricci contraction comes out asymmetric beyond tolerance)
struct numeric_quality_error : std::runtime_error {
    double magnitude;
    numeric_quality_error(const std::string& what, double mag)
        : std::runtime_error(what), magnitude(mag) {}
};

// A metric field on a coordinate chart.  eval must return a symmetric matrix;
// d_eval, when provided, returns the analytic derivative matrix ∂_c g and is
// validated against central finite differences in the test suite.
struct MetricField {
    std::string name;
    int dim = 4;
    std::function<SquareMatrix(const ColumnVector&)> eval;
    std::function<SquareMatrix(const ColumnVector&, int)> d_eval;     // optional
    std::function<bool(const ColumnVector&)> singular_locus;          // optional
    std::string coordinate_chart;  // "spherical" | "rectilinear" | "conformal"
};

// One-index Christoffel matrices at a point:
//   first kind   (γ^c)_{ab} = ½(∂_c g_ab + ∂_b g_ac − ∂_a g_bc)
//   second kind  σ^m = g⁻¹ γ^m, entries (σ^m)_{μβ} = Γ^μ_{mβ}
struct ChristoffelSet {
    std::vector<SquareMatrix> first_kind;
    std::vector<SquareMatrix> second_kind;
    ColumnVector point;
};

// Two-index curvature matrices and their contractions at a point:
//   σ^{ab} = ∂_a σ^b − ∂_b σ^a + σ^a σ^b − σ^b σ^a
//   γ^{ab} = g σ^{ab}, entries R_{mkab} (Riemann, all indices down)
//   R_{mn} = Σ_β (σ^{mβ})_{βn}   (twice covariant Ricci)
struct CurvatureBundle {
    SquareMatrix g;
    ChristoffelSet chris;
    std::vector<std::vector<SquareMatrix>> sigma_ab;
    std::vector<std::vector<SquareMatrix>> gamma_ab;
    SquareMatrix ricci;
    double scalar = 0.0;      // trace(g⁻¹ R)
    matcore::EigenSet eigen;  // spectrum of the pencil (R, g)
};

struct FieldEqReport {
    double rho = 0.0;           // trace(g⁻¹R)/dim
    double max_residual = 0.0;  // ‖R − ρg‖∞ / (1 + ‖R‖∞)
};

struct IdentityCheck {
    std::string name;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// eigenvalues of (R, g) with their pairwise differences mu[i]-mu[j], i<j;
// used to tell the all-equal regime from the one-distinguished-value regime
struct EigenSplit {
    std::vector<double> mu;
    std::vector<double> gaps;
};

// analytic derivative if the field provides one, else 5-point central FD
// with relative step 1e-5·max(1,|x_axis|)
SquareMatrix d_metric(const MetricField& field, const ColumnVector& x, int axis);

ChristoffelSet christoffel(const MetricField& field, const ColumnVector& x);

// fills g, chris, sigma_ab, gamma_ab; the σ-field is differentiated by
// 5-point central FD with relative step 1e-4·max(1,|x_axis|)
CurvatureBundle riemann(const MetricField& field, const ColumnVector& x);

// completes the bundle: Ricci contraction, scalar, eigenvalues.  The raw
// contraction must be symmetric within 1e-6 (else numeric_quality_error);
// it is then symmetrized to strip FD noise before eigen-solving.
CurvatureBundle ricci(const MetricField& field, const ColumnVector& x);

// independent second route to the Ricci matrix (no σ^{ab} involved):
//   R_mn = ∂_m T_n − Σ_β ∂_β(σ^m)_{βn} + Σ_β (σ^m σ^β)_{βn} − Σ_λ T_λ (σ^m)_{λn}
// with T_n = Σ_β (σ^β)_{βn}; used as a cross-check against ricci()
SquareMatrix ricci_direct(const MetricField& field, const ColumnVector& x);

FieldEqReport verify_field_equation(const MetricField& field, const ColumnVector& x);

// property suite on the coordinate curvature images:
//   p1 antisymmetry        R_{mkab} = −R_{kmab}
//   p2 cyclic sum          R_{rkmn} + R_{rmnk} + R_{rnkm} = 0
//   p3 pair symmetry       R_{mkab} = R_{abmk}
//   p5 ricci symmetry      R = R̃ (raw contraction)
//   p6 contracted bianchi  ∇_μ R^μ_ν = ½ ∂_ν trace(g⁻¹R)
//   p7 second bianchi      ∇_k R_{rsmn} + ∇_m R_{rsnk} + ∇_n R_{rskm} = 0
// (the check names skip p4, whose content is an index-exchange restatement
// equivalent to p3; names are stable identifiers, not a count)
IdentityReport identity_suite(const MetricField& field, const ColumnVector& x,
                              double tol = 1e-7);

EigenSplit eigen_split(const MetricField& field, const ColumnVector& x);

}  // namespace geometry
