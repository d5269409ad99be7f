#pragma once

#include <string>
#include <vector>

#include "curvkit/geometry.hpp"
#include "curvkit/matcore.hpp"
#include "curvkit/metrics.hpp"

// Motion machinery: coordinate geodesics, closed-form 4-velocities, orbit
// constants, perihelion precession (closed form and two numerical routes),
// extreme transverse velocities, radial infall profiles, and the per-planet
// observable table.
namespace dynamics {

using matcore::ColumnVector;
using matcore::SquareMatrix;

// coordinate state: u = dx/dτ, normalized so that ũ g(x) u = 1
struct GeodesicState {
    ColumnVector x;
    ColumnVector u;
    double tau = 0.0;
};

// constants of motion of the spherical closed-form velocities;
// c3 is the sign of the radial branch, c1 = 0 for plane orbits
struct MotionConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 1.0;
    double c4 = 1.0;
};

// a bound orbit given by perihelion p, aphelion a and the central-mass
// length r_M, all in the same length unit
struct OrbitSpec {
    double p = 0.0;
    double a = 0.0;
    double r_M = 0.0;
};

struct PlanetRecord {
    std::string name;
    double perihelion_km = 0.0;
    double aphelion_km = 0.0;
    double period_days = 0.0;
};

enum class IntegrationStatus { completed, step_underflow, singular_boundary, max_steps };

struct Trajectory {
    std::vector<GeodesicState> samples;
    double max_norm_drift = 0.0;  // max |ũgu − 1| seen along the way
    IntegrationStatus status = IntegrationStatus::completed;
    std::string reason;  // filled in when the run is truncated
};

// du/dτ = −(Σ_m u_m σ^m) u, plus g⁻¹ P_a u when a forcing matrix is given;
// P_a must be antisymmetric within 1e-12
ColumnVector geodesic_rhs(const geometry::MetricField& field, const GeodesicState& state,
                          const SquareMatrix* P_a = nullptr);

// adaptive RKF45 with per-component error control rel_tol·|y| + abs_tol;
// the trajectory records step endpoints and the worst normalization drift
Trajectory integrate_geodesic(const geometry::MetricField& field, GeodesicState state0,
                              double tau_end, double rel_tol = 1e-10,
                              double abs_tol = 1e-12, const SquareMatrix* P_a = nullptr);

// closed-form 4-velocity of the general spherical solution:
//   u1 = −sqrt(c1² − c2²·cot²x1)/g11,   u2 = −c2/g22,
//   u3 = c3·sqrt(g44·g33·((c1²+c2²)/x3² − g33) + c4²·g33²),
//   u4 = −(c4 + g34·u3)/g44
// evaluated on g = general_spherical(params) at x; ũgu = 1 by construction
ColumnVector four_velocity_general(const metrics::SphericalSolutionParams& params,
                                   const MotionConstants& consts, const ColumnVector& x);

// same closed forms on an explicitly supplied metric matrix (any member of
// the spherical family)
ColumnVector four_velocity_from_metric(const SquareMatrix& g, const MotionConstants& consts,
                                       const ColumnVector& x);

// orbit intermediates (f1 depends on the running radius, the rest are fixed):
//   f1(x3) = sqrt((a−x3)(x3−p)(a(p·x3 − 2r_M(x3+p)) − 2r_M·p·x3))
//   f2 = sqrt(a·p(a+p) − 2r_M(a² + ap + p²))
//   f3 = sqrt((a+p)(a − 2r_M)(p − 2r_M))
//   f4 = a²p²(a² − p²) + 4(a² + ap + p²)·r_M·(a·p² − r_M(a² + ap + p²))
//   f5 = a²p²(a − p)(a·p − 2r_M(2a + p))
struct OrbitFactors {
    double f2 = 0.0, f3 = 0.0, f4 = 0.0, f5 = 0.0;
};
OrbitFactors orbit_factors(const OrbitSpec& spec);
double orbit_f1(const OrbitSpec& spec, double x3);

// plane-orbit constants: c1 = 0, c2 = −a·p·sqrt(2 r_M)/f2, c4 = f3/f2
MotionConstants orbit_constants(const OrbitSpec& spec);

// closed-form equatorial velocities (0, u2, u3, u4) of the bound orbit:
//   u2 = sqrt(2r_M)·a·p/(f2·x3²),  u3 = sqrt(2r_M)·f1/(f2·x3^{3/2}),
//   u4 = f3·x3/(f2(x3 − 2r_M)) + 2r_M·f1/((x3 − 2r_M)·f2·x3)
// the static-variant counterpart drops the second u4 term — the two famously
// differ by exactly that term
ColumnVector orbit_velocity_weak(const OrbitSpec& spec, double x3);
ColumnVector orbit_velocity_schwarzschild(const OrbitSpec& spec, double x3);

// perihelion advance per revolution, radians: 3π·r_M·f4/f5
double precession(const OrbitSpec& spec);

// same quantity from the orbit equation d²k/dx2² (k = 1/x3), integrated from
// perihelion to the next perihelion (second dk/dx2 = 0 crossing, located by
// bisection); returns x2 at return minus 2π
double precession_numeric(const OrbitSpec& spec, double tol = 1e-10);

// same quantity once more, this time from a full geodesic revolution in the
// weak metric with u3-turning-point detection
double precession_from_geodesic(const OrbitSpec& spec, double rel_tol = 1e-10);

// right-hand sides of d²k/dx2²:
//   weak field: −k + 3k²r_M + r_M/c2² − c7/(k³c2²)
//   general spherical family: the long closed form with d ≡ (1/k³ − c5³)^{2/3}
double orbit_ode_rhs_weak(double k, double r_M, double c2, double c7 = 0.0);
double orbit_ode_rhs_general(double k, const metrics::SphericalSolutionParams& params,
                             double c2, double c4);

// extreme dimensionless transverse speeds of the bound orbit:
//   β2max = (a/p)·sqrt(2r_M(p − 2r_M)/((a+p)(a − 2r_M)))   (at perihelion)
//   β2min = (p/a)·sqrt(2r_M(a − 2r_M)/((a+p)(p − 2r_M)))   (at aphelion)
struct ExtremeVelocities {
    double beta_min = 0.0;
    double beta_max = 0.0;
};
ExtremeVelocities extreme_velocities(const OrbitSpec& spec);

// dimensionless radial infall speed in the static spherical field, negative
// branch: β3 = −((y3 − 2r_M)/(c4·y3))·sqrt(c4² − 1 + 2r_M/y3)
double radial_velocity_schwarzschild(double y3, double c4, double r_M);

// where |β3| peaks and its value there:
//   y3m = 2r_M/(1 − 2c4²/3),  |β3m| = 2c4²/(3√3)
struct RadialExtremum {
    double y3m = 0.0;
    double beta3m = 0.0;
};
RadialExtremum radial_extremum(double c4, double r_M);

// radial infall in the mixed-entry spherical field, launched from radius y30
// with speed beta30:
//   α = (1 − 2r_M/y30 − β30·b0)/sqrt(1 − 2r_M/y30 − 2β30·b0 − β30²), b0 = sqrt(2r_M/y30)
//   β3r(y3) = A·sqrt(α² − A)/(b·sqrt(α² − A) − α), A = 1 − 2r_M/y3, b = sqrt(2r_M/y3)
// from rest at infinity (α = 1) this is exactly −sqrt(2r_M/y3)
double radial_velocity_paper(double y3, double y30, double beta30, double r_M);

// reads "name,perihelion_km,aphelion_km,period_days" rows; '#' starts a comment
std::vector<PlanetRecord> load_planets_csv(const std::string& path);

struct PlanetRow {
    std::string name;
    double dphi_per_rev_arcsec = 0.0;
    double dphi_per_century_arcsec = 0.0;
    double v_min_km_s = 0.0;
    double v_max_km_s = 0.0;
    std::string error;  // non-empty if this row failed; other rows still compute
};

// one row per record: precession in arcsec (per revolution and per Julian
// century, 36525 days) and extreme speeds in km/s
std::vector<PlanetRow> planet_table(const std::vector<PlanetRecord>& records,
                                    const metrics::PhysicalConstants& consts);

inline double to_arcsec(double radians) { return radians * 648000.0 / 3.14159265358979323846; }

}  // namespace dynamics
