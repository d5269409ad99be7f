#pragma once

#include <functional>
#include <string>

#include "curvkit/geometry.hpp"
#include "curvkit/matcore.hpp"

// Catalog of closed-form metric models with analytic derivatives, the
// flat-space frame construction, and physical-unit conversions.
namespace metrics {

using geometry::MetricField;
using matcore::ColumnVector;
using matcore::SquareMatrix;

// Parameters of the spherically symmetric solution family:
//   c5 — length scale of the moving mass (gravitational-radius type)
//   c6 — 3·r_M for the concentrated central mass
//   c7 — ρ/3, the cosmological density term
//   c8 — ±1, time-reversal branch
struct SphericalSolutionParams {
    double c5 = 0.0;
    double c6 = 0.0;
    double c7 = 0.0;
    double c8 = 1.0;
};

// Spherical chart (x1=ϑ, x2=φ, x3=r, x4=ct), with w0 = x3³−c5³ and
// h = w0^{1/3}/x3:
//   g11 = −w0^{2/3},  g22 = −w0^{2/3} sin²x1,  g33 = −w0^{2/3}/x3²,
//   g34 = −h·f,       g44 = 1/h⁶ − f²,
//   f   = c8·sqrt(S)/w0 with S = c5³(2x3³−c5³) + ⅔c6·w0^{5/3} + c7·w0^{8/3}
// Singular locus: x3 ≤ c5, sin x1 ≈ 0, or negative radicand S.
MetricField general_spherical(const SphericalSolutionParams& p);

// Weak-field form (c5 = 0):
//   g = diag(−x3², −x3² sin²x1, −1, ·) with
//   g34 = −c8·sqrt(2 r_M/x3 + c7 x3²),  g44 = 1 − 2 r_M/x3 − c7 x3²
MetricField weak_spherical(double r_M, double c7, double c8);

// One-arbitrary-function family of the weak (c5 = 0) solution:
//   g33 = g33_fn(x3) (must stay negative),
//   g44 = 1 − 2 r_M/x3 − (rho/3) x3²,   g34 = c8·sqrt(1 + g33·g44)
// Analytic derivatives are provided only when dg33_fn is supplied.
MetricField general_weak(std::function<double(double)> g33_fn, double r_M, double rho,
                         double c8, std::function<double(double)> dg33_fn = nullptr);

// Diagonal vacuum form: g = diag(−x3², −x3² sin²x1, −1/A, A), A = 1 − 2 r_M/x3.
// Singular locus x3 ≤ 2 r_M.
MetricField schwarzschild(double r_M);

// Rectilinear chart (x1,x2,x3 spatial, x4 = ct), r = |x_spatial|,
// w = (r³−c5³)^{2/3}/r²:
//   g_ii = −w,  g_i4 = f·x_i,  g44 = 1/w³ − r²f²/w,
//   f = (c8/r²)·sqrt(w0^{1/3}·(c5³(2r³−c5³)/w0^{5/3} + 2c6 + r³c7))
MetricField rectilinear_spherical(const SphericalSolutionParams& p);

// Conformal metric over the signature matrix G = diag(−1,−1,−1,1):
//   g = f²(s)·G with s = sqrt(x̃Gx) (timelike region only).
// df_fn, when given, enables the analytic derivative ∂_c g = 2ff′(Gx)_c/s·G.
MetricField friedmann_lobachevsky(std::function<double(double)> f_fn,
                                  std::function<double(double)> df_fn = nullptr);

// first closed-form solution of the conformal family: f = 1/(1 − rho·s²/12)
MetricField fl_first_solution(double rho);

// Flat-space frame construction: a frame field that is curved-looking but has
// identically zero curvature.
//   e0(x) = I + F_a(x_k)·(Px)·ẽ_k with P = I − i(k)ẽ_k,  g = ẽ0·e0
struct FlatFrameSpec {
    int dim = 4;
    int k = 0;  // distinguished axis
    std::function<SquareMatrix(double)> F_a;  // antisymmetric for all t
    SquareMatrix omega0 = SquareMatrix::identity(4);
};

struct FlatFrameConstruction {
    FlatFrameSpec spec;
    MetricField metric;
    // Ω(t): solution of dΩ/dx_k = Ω·F_a(x_k), Ω(0) = omega0 (fixed-step RK4,
    // re-orthonormalized periodically)
    std::function<SquareMatrix(double)> omega;
    // Q(x) = ∫₀^{x_k} Ω(t)·i(k) dt + Ω(x_k)·P·x  (flat image of the point)
    std::function<ColumnVector(const ColumnVector&)> q_flat;
};

FlatFrameConstruction flat_frame(const FlatFrameSpec& spec);
MetricField flat_frame_metric(const FlatFrameSpec& spec);

// physical constants, SI; loaded from a key=value file and never inlined
struct PhysicalConstants {
    double G_g = 0.0;   // gravitational constant
    double c = 0.0;     // speed of light
    double eps0 = 0.0;  // electric constant
    double q = 0.0;     // elementary charge
    double m_p = 0.0;   // proton rest mass
    double m_e = 0.0;   // electron rest mass
    double hbar = 0.0;  // reduced Planck constant
    double M_sun = 0.0; // solar mass
};

// parses key=value lines ('#' comments allowed); requires the key set to be
// exactly {G_g, c, eps0, q, m_p, m_e, hbar, M_sun}, all values positive
PhysicalConstants load_constants(const std::string& path);

// r_M = G_g·M/c²  (mass expressed as a length)
double mass_to_length(double mass, const PhysicalConstants& k);

// classical charge radius r_c = q²/(4π ε₀ m c²)
double charge_radius(double charge, double mass, const PhysicalConstants& k);

// electromagnetic-to-gravitational force ratio for two protons:
// q²/(4π ε₀ G_g m_p²)
double force_ratio(const PhysicalConstants& k);

// r_a = 4π ε₀ ħ²/(m_e q²)  (the length scale the charge-radius ratio is
// quoted against)
double bohr_radius(const PhysicalConstants& k);

}  // namespace metrics
