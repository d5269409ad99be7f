#include "curvkit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dynamics {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_forcing(const SquareMatrix& P_a) {
    if (matcore::max_abs(P_a + matcore::transpose(P_a)) >
        1e-12 * (1.0 + matcore::max_abs(P_a)))
        throw std::invalid_argument("geodesic_rhs: forcing matrix is not antisymmetric");
}

// ---- shared RKF45 machinery on a flat state vector ----

struct StepResult {
    std::vector<double> y;
    double err = 0.0;  // max component error scaled by abs+rel tolerance
};

template <typename Rhs>
StepResult rkf45_step(const Rhs& rhs, const std::vector<double>& y, double t, double h,
                      double rel_tol, double abs_tol) {
    const size_t n = y.size();
    auto axpy = [n](const std::vector<double>& base,
                    std::initializer_list<std::pair<double, const std::vector<double>*>> terms,
                    double h) {
        std::vector<double> out = base;
        for (const auto& term : terms)
            for (size_t i = 0; i < out.size(); ++i)
                out[i] += h * term.first * (*term.second)[i];
        (void)n;
        return out;
    };
    const std::vector<double> k1 = rhs(t, y);
    const std::vector<double> k2 = rhs(t + h / 4.0, axpy(y, {{1.0 / 4.0, &k1}}, h));
    const std::vector<double> k3 =
        rhs(t + 3.0 * h / 8.0, axpy(y, {{3.0 / 32.0, &k1}, {9.0 / 32.0, &k2}}, h));
    const std::vector<double> k4 = rhs(
        t + 12.0 * h / 13.0,
        axpy(y, {{1932.0 / 2197.0, &k1}, {-7200.0 / 2197.0, &k2}, {7296.0 / 2197.0, &k3}},
             h));
    const std::vector<double> k5 =
        rhs(t + h, axpy(y,
                        {{439.0 / 216.0, &k1},
                         {-8.0, &k2},
                         {3680.0 / 513.0, &k3},
                         {-845.0 / 4104.0, &k4}},
                        h));
    const std::vector<double> k6 =
        rhs(t + h / 2.0, axpy(y,
                              {{-8.0 / 27.0, &k1},
                               {2.0, &k2},
                               {-3544.0 / 2565.0, &k3},
                               {1859.0 / 4104.0, &k4},
                               {-11.0 / 40.0, &k5}},
                              h));
    StepResult res;
    res.y.resize(n);
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double y5 = y[i] + h * (16.0 / 135.0 * k1[i] + 6656.0 / 12825.0 * k3[i] +
                                      28561.0 / 56430.0 * k4[i] - 9.0 / 50.0 * k5[i] +
                                      2.0 / 55.0 * k6[i]);
        const double y4 = y[i] + h * (25.0 / 216.0 * k1[i] + 1408.0 / 2565.0 * k3[i] +
                                      2197.0 / 4104.0 * k4[i] - 1.0 / 5.0 * k5[i]);
        const double scale = abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(y5));
        worst = std::max(worst, std::fabs(y5 - y4) / scale);
        res.y[i] = y5;  // advance on the higher-order solution
    }
    res.err = worst;
    return res;
}

template <typename Rhs>
std::vector<double> rk4_fixed(const Rhs& rhs, std::vector<double> y, double t0, double dt,
                              int nsub) {
    const double h = dt / nsub;
    const size_t n = y.size();
    double t = t0;
    for (int s = 0; s < nsub; ++s) {
        const std::vector<double> k1 = rhs(t, y);
        std::vector<double> y2(n), y3(n), y4(n);
        for (size_t i = 0; i < n; ++i) y2[i] = y[i] + 0.5 * h * k1[i];
        const std::vector<double> k2 = rhs(t + 0.5 * h, y2);
        for (size_t i = 0; i < n; ++i) y3[i] = y[i] + 0.5 * h * k2[i];
        const std::vector<double> k3 = rhs(t + 0.5 * h, y3);
        for (size_t i = 0; i < n; ++i) y4[i] = y[i] + h * k3[i];
        const std::vector<double> k4 = rhs(t + h, y4);
        for (size_t i = 0; i < n; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;
    }
    return y;
}

std::vector<double> pack(const GeodesicState& s) {
    std::vector<double> y;
    y.reserve(2 * s.x.dim());
    for (int i = 0; i < s.x.dim(); ++i) y.push_back(s.x[i]);
    for (int i = 0; i < s.u.dim(); ++i) y.push_back(s.u[i]);
    return y;
}

GeodesicState unpack(const std::vector<double>& y, double tau) {
    const int n = static_cast<int>(y.size()) / 2;
    GeodesicState s;
    s.x = ColumnVector(n);
    s.u = ColumnVector(n);
    for (int i = 0; i < n; ++i) {
        s.x[i] = y[i];
        s.u[i] = y[n + i];
    }
    s.tau = tau;
    return s;
}

double norm_error(const geometry::MetricField& field, const GeodesicState& s) {
    const SquareMatrix g = field.eval(s.x);
    return std::fabs(matcore::dot(s.u, g * s.u) - 1.0);
}

}  // namespace

ColumnVector geodesic_rhs(const geometry::MetricField& field, const GeodesicState& state,
                          const SquareMatrix* P_a) {
    if (P_a) validate_forcing(*P_a);
    const auto chris = geometry::christoffel(field, state.x);
    const int n = field.dim;
    ColumnVector du(n);
    for (int m = 0; m < n; ++m) {
        if (state.u[m] == 0.0) continue;
        const ColumnVector acc = chris.second_kind[m] * state.u;
        for (int i = 0; i < n; ++i) du[i] -= state.u[m] * acc[i];
    }
    if (P_a) {
        const SquareMatrix g = field.eval(state.x);
        const ColumnVector forcing = matcore::linear_solve(g, *P_a * state.u);
        for (int i = 0; i < n; ++i) du[i] += forcing[i];
    }
    return du;
}

Trajectory integrate_geodesic(const geometry::MetricField& field, GeodesicState state0,
                              double tau_end, double rel_tol, double abs_tol,
                              const SquareMatrix* P_a) {
    if (P_a) validate_forcing(*P_a);
    Trajectory traj;
    traj.samples.push_back(state0);
    traj.max_norm_drift = norm_error(field, state0);
    if (traj.max_norm_drift > 1e-6)
        throw std::invalid_argument("integrate_geodesic: state0 is not normalized");
    if (tau_end == state0.tau) return traj;

    const int n = field.dim;
    const auto rhs = [&](double, const std::vector<double>& y) {
        GeodesicState s = unpack(y, 0.0);
        const ColumnVector du = geodesic_rhs(field, s, P_a);
        std::vector<double> dy(2 * n);
        for (int i = 0; i < n; ++i) {
            dy[i] = s.u[i];
            dy[n + i] = du[i];
        }
        return dy;
    };

    const double span = tau_end - state0.tau;
    const double dir = (span > 0.0) ? 1.0 : -1.0;
    double tau = state0.tau;
    double h = dir * std::min(std::fabs(span) / 100.0, 1.0 + std::fabs(span) / 1e4);
    std::vector<double> y = pack(state0);
    const double h_floor = 1e-14 * std::max(1.0, std::fabs(span));
    const long max_steps = 2000000;

    for (long step = 0; step < max_steps; ++step) {
        if ((tau_end - tau) * dir <= 0.0) break;
        if (std::fabs(h) > std::fabs(tau_end - tau)) h = tau_end - tau;
        bool rejected = false;
        bool hit_locus = false;
        StepResult res;
        try {
            res = rkf45_step(rhs, y, tau, h, rel_tol, abs_tol);
            rejected = res.err > 1.0;
        } catch (const std::domain_error&) {
            rejected = true;  // stepped onto the singular locus; shrink and retry
            hit_locus = true;
        }
        if (rejected) {
            h *= 0.5;
            if (std::fabs(h) < h_floor) {
                traj.status = hit_locus ? IntegrationStatus::singular_boundary
                                        : IntegrationStatus::step_underflow;
                traj.reason = "step size underflow near tau = " + std::to_string(tau) +
                              (hit_locus ? " (singular locus reached)" : " (stiff point)");
                return traj;
            }
            continue;
        }
        tau += h;
        y = res.y;
        GeodesicState s = unpack(y, tau);
        traj.samples.push_back(s);
        traj.max_norm_drift = std::max(traj.max_norm_drift, norm_error(field, s));
        // standard controller: grow gently, never more than 5x
        const double factor =
            std::clamp(0.9 * std::pow(std::max(res.err, 1e-12), -0.2), 0.2, 5.0);
        h *= factor;
        if ((tau_end - tau) * dir <= 0.0) return traj;
    }
    if ((tau_end - tau) * dir > 0.0) {
        traj.status = IntegrationStatus::max_steps;
        traj.reason = "step budget exhausted before tau_end";
    }
    return traj;
}

ColumnVector four_velocity_from_metric(const SquareMatrix& g, const MotionConstants& consts,
                                       const ColumnVector& x) {
    if (consts.c3 != 1.0 && consts.c3 != -1.0)
        throw std::invalid_argument("four_velocity: c3 must be +1 or -1");
    const double x1 = x[0], x3 = x[2];
    const double g11 = g(0, 0), g22 = g(1, 1), g33 = g(2, 2), g34 = g(2, 3), g44 = g(3, 3);
    const double eps = std::numeric_limits<double>::epsilon();

    double cot_term = 0.0;
    if (consts.c2 != 0.0) {
        double cot = std::cos(x1) / std::sin(x1);
        // an angle within double precision of the equator means cot = 0
        if (std::fabs(cot) < 1e-14) cot = 0.0;
        cot_term = consts.c2 * consts.c2 * cot * cot;
    }
    double rad1 = consts.c1 * consts.c1 - cot_term;
    if (rad1 < 0.0 && rad1 >= -256.0 * eps * (consts.c1 * consts.c1 + cot_term)) rad1 = 0.0;
    if (rad1 < 0.0)
        throw std::domain_error("four_velocity: forbidden polar region (u1 radicand < 0)");

    // the two contributions cancel exactly at orbit turning points; forgive
    // the roundoff dust of that cancellation, but keep real violations loud
    const double term_a = g44 * g33 *
                          ((consts.c1 * consts.c1 + consts.c2 * consts.c2) / (x3 * x3) - g33);
    const double term_b = consts.c4 * consts.c4 * g33 * g33;
    double rad3 = term_a + term_b;
    if (std::fabs(rad3) <= 256.0 * eps * (std::fabs(term_a) + std::fabs(term_b)))
        rad3 = 0.0;
    if (rad3 < 0.0)
        throw std::domain_error("four_velocity: forbidden radial region (u3 radicand < 0)");

    ColumnVector u(4);
    u[0] = -std::sqrt(rad1) / g11;
    u[1] = -consts.c2 / g22;
    u[2] = consts.c3 * std::sqrt(rad3);
    u[3] = -(consts.c4 + g34 * u[2]) / g44;

    // the closed forms promise ũgu = 1 on this metric family; a violation
    // means the supplied matrix is not a member
    double magnitude = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) magnitude += std::fabs(g(i, j) * u[i] * u[j]);
    if (std::fabs(matcore::dot(u, g * u) - 1.0) > 1e-9 * (1.0 + magnitude))
        throw std::runtime_error(
            "four_velocity: normalization failed; metric outside the closed-form family");
    return u;
}

ColumnVector four_velocity_general(const metrics::SphericalSolutionParams& params,
                                   const MotionConstants& consts, const ColumnVector& x) {
    const auto field = metrics::general_spherical(params);
    if (field.singular_locus && field.singular_locus(x))
        throw std::domain_error("four_velocity: point on the singular locus");
    return four_velocity_from_metric(field.eval(x), consts, x);
}

// ---- bound-orbit closed forms ----

namespace {

void validate_orbit(const OrbitSpec& spec) {
    if (!(spec.p > 0.0) || !(spec.a >= spec.p))
        throw std::invalid_argument("orbit: need 0 < p <= a");
    if (!(spec.p > 2.0 * spec.r_M))
        throw std::invalid_argument("orbit: perihelion inside 2 r_M");
    if (spec.r_M < 0.0) throw std::invalid_argument("orbit: negative r_M");
}

}  // namespace

OrbitFactors orbit_factors(const OrbitSpec& spec) {
    validate_orbit(spec);
    const double p = spec.p, a = spec.a, rM = spec.r_M;
    OrbitFactors f;
    const double f2sq = a * p * (a + p) - 2.0 * rM * (a * a + a * p + p * p);
    if (f2sq <= 0.0)
        throw std::domain_error("orbit: f2 radicand non-positive (orbit too relativistic)");
    f.f2 = std::sqrt(f2sq);
    f.f3 = std::sqrt((a + p) * (a - 2.0 * rM) * (p - 2.0 * rM));
    f.f4 = a * a * p * p * (a * a - p * p) +
           4.0 * (a * a + a * p + p * p) * rM *
               (a * p * p - rM * (a * a + a * p + p * p));
    f.f5 = a * a * p * p * (a - p) * (a * p - 2.0 * rM * (2.0 * a + p));
    return f;
}

double orbit_f1(const OrbitSpec& spec, double x3) {
    validate_orbit(spec);
    const double p = spec.p, a = spec.a, rM = spec.r_M;
    double t1 = a - x3, t2 = x3 - p;
    // the turning points themselves belong to the orbit; forgive roundoff dust
    if (t1 < 0.0 && t1 > -1e-12 * a) t1 = 0.0;
    if (t2 < 0.0 && t2 > -1e-12 * a) t2 = 0.0;
    if (t1 < 0.0 || t2 < 0.0)
        throw std::domain_error("orbit_f1: x3 outside [p, a]");
    const double t3 = a * (p * x3 - 2.0 * rM * (x3 + p)) - 2.0 * rM * p * x3;
    const double rad = t1 * t2 * t3;
    if (rad < 0.0) throw std::domain_error("orbit_f1: negative radicand");
    return std::sqrt(rad);
}

MotionConstants orbit_constants(const OrbitSpec& spec) {
    const OrbitFactors f = orbit_factors(spec);
    MotionConstants c;
    c.c1 = 0.0;
    c.c2 = -spec.a * spec.p * std::sqrt(2.0 * spec.r_M) / f.f2;
    c.c3 = 1.0;
    c.c4 = f.f3 / f.f2;
    return c;
}

ColumnVector orbit_velocity_weak(const OrbitSpec& spec, double x3) {
    const OrbitFactors f = orbit_factors(spec);
    const double rM = spec.r_M;
    const double f1 = orbit_f1(spec, x3);
    ColumnVector u(4);
    u[1] = std::sqrt(2.0 * rM) * spec.a * spec.p / (f.f2 * x3 * x3);
    u[2] = std::sqrt(2.0 * rM) * f1 / (f.f2 * std::pow(x3, 1.5));
    u[3] = f.f3 * x3 / (f.f2 * (x3 - 2.0 * rM)) +
           2.0 * rM * f1 / ((x3 - 2.0 * rM) * f.f2 * x3);
    return u;
}

ColumnVector orbit_velocity_schwarzschild(const OrbitSpec& spec, double x3) {
    const OrbitFactors f = orbit_factors(spec);
    ColumnVector u = orbit_velocity_weak(spec, x3);
    u[3] = f.f3 * x3 / (f.f2 * (x3 - 2.0 * spec.r_M));
    return u;
}

double precession(const OrbitSpec& spec) {
    const OrbitFactors f = orbit_factors(spec);
    if (spec.a == spec.p)
        throw std::invalid_argument(
            "precession: circular orbit is degenerate (f5 = 0); no perihelion defined");
    if (f.f5 == 0.0) throw std::domain_error("precession: f5 vanished");
    return 3.0 * kPi * spec.r_M * f.f4 / f.f5;
}

double orbit_ode_rhs_weak(double k, double r_M, double c2, double c7) {
    double rhs = -k + 3.0 * k * k * r_M + r_M / (c2 * c2);
    if (c7 != 0.0) rhs -= c7 / (k * k * k * c2 * c2);
    return rhs;
}

double orbit_ode_rhs_general(double k, const metrics::SphericalSolutionParams& params,
                             double c2, double c4) {
    const double c5 = params.c5, c6 = params.c6, c7 = params.c7;
    const double c53 = c5 * c5 * c5;
    const double k3 = k * k * k;
    const double d = std::pow(1.0 / k3 - c53, 2.0 / 3.0);
    const double w = std::pow(1.0 - k3 * c53, 2.0 / 3.0);
    const double c2sq = c2 * c2, c4sq = c4 * c4;
    const double sum =
        -3.0 * k * k * c2sq
        - 3.0 * d * w * c7
        + 3.0 * k3 * k * k * c2sq * (d * c6 + c53 * (5.0 - 4.0 * d * c7))
        + 4.0 * k3 * k3 * k * k * c2sq * c53 * (-2.0 * d * c6 + 3.0 * c53 * (-1.0 + d * c7))
        + 4.0 * k3 * k3 * c53 * w * (-2.0 * d * c6 + 3.0 * c53 * (-1.0 + c4sq + d * c7))
        + k3 * w * (d * c6 - 3.0 * c53 * (-4.0 + 4.0 * c4sq + 3.0 * d * c7));
    return sum / (3.0 * k * c2sq);
}

double precession_numeric(const OrbitSpec& spec, double tol) {
    validate_orbit(spec);
    if (spec.a == spec.p)
        throw std::invalid_argument("precession_numeric: circular orbit is degenerate");
    const OrbitFactors f = orbit_factors(spec);
    const double p = spec.p, a = spec.a, rM = spec.r_M;
    // r_M/c2² with c2 = −ap√(2r_M)/f2 cancels to f2²/(2a²p²), which stays
    // finite as r_M → 0 (the Newtonian ellipse limit)
    const double forcing = f.f2 * f.f2 / (2.0 * a * a * p * p);

    // integrate kappa = k·p so the state is O(1); kappa'' = p·rhs(kappa/p)
    const auto rhs = [&](double, const std::vector<double>& y) {
        const double k = y[0] / p;
        return std::vector<double>{y[1], p * (-k + 3.0 * k * k * rM + forcing)};
    };

    std::vector<double> y{1.0, 0.0};
    double x2 = 0.0, h = 1e-3;
    const double hmax = 0.02, hmin = 1e-13;
    int crossings = 0;
    const long max_steps = 10000000;
    for (long step = 0; step < max_steps; ++step) {
        if (x2 > 4.0 * kPi)
            throw std::runtime_error("precession_numeric: no perihelion return within 4 pi");
        StepResult res = rkf45_step(rhs, y, x2, h, tol, tol * 1e-2);
        if (res.err > 1.0) {
            h = std::max(h * 0.5, hmin);
            continue;
        }
        const double slope_before = y[1];
        const double x2_next = x2 + h;
        if (x2_next > 1e-6 && slope_before != 0.0 && res.y[1] * slope_before < 0.0) {
            ++crossings;
            // bisect within this step by re-integration from its start
            double lo = 0.0, hi = h;
            for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                const std::vector<double> y_mid = rk4_fixed(rhs, y, x2, mid, 4);
                if (y_mid[1] * slope_before < 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            if (crossings == 2) return x2 + 0.5 * (lo + hi) - 2.0 * kPi;
        }
        x2 = x2_next;
        y = res.y;
        h = std::min(h * std::clamp(0.9 * std::pow(std::max(res.err, 1e-12), -0.2), 0.2, 5.0),
                     hmax);
    }
    throw std::runtime_error("precession_numeric: step budget exhausted");
}

double precession_from_geodesic(const OrbitSpec& spec, double rel_tol) {
    validate_orbit(spec);
    if (spec.a == spec.p)
        throw std::invalid_argument("precession_from_geodesic: circular orbit is degenerate");
    const auto field = metrics::weak_spherical(spec.r_M, 0.0, 1.0);

    GeodesicState s;
    s.x = ColumnVector{kPi / 2.0, 0.0, spec.p, 0.0};
    s.u = orbit_velocity_weak(spec, spec.p);  // u3 = 0 at perihelion

    const int n = 4;
    const auto rhs = [&](double, const std::vector<double>& y) {
        GeodesicState st = unpack(y, 0.0);
        const ColumnVector du = geodesic_rhs(field, st);
        std::vector<double> dy(2 * n);
        for (int i = 0; i < n; ++i) {
            dy[i] = st.u[i];
            dy[n + i] = du[i];
        }
        return dy;
    };

    // Keplerian period estimate sets the integration budget
    const double T = 2.0 * kPi * std::sqrt(std::pow(0.5 * (spec.a + spec.p), 3) / spec.r_M);
    std::vector<double> y = pack(s);
    double tau = 0.0, h = T / 1e4;
    const double abs_tol = rel_tol * 1e-2;
    int crossings = 0;
    const long max_steps = 5000000;
    for (long step = 0; step < max_steps; ++step) {
        if (tau > 2.5 * T)
            throw std::runtime_error("precession_from_geodesic: no perihelion return found");
        StepResult res = rkf45_step(rhs, y, tau, h, rel_tol, abs_tol);
        if (res.err > 1.0) {
            h *= 0.5;
            if (h < 1e-14 * T)
                throw std::runtime_error("precession_from_geodesic: step size underflow");
            continue;
        }
        const double u3_before = y[6];
        const bool crossed = tau + h > 1e-9 * T && u3_before != 0.0 &&
                             res.y[6] * u3_before < 0.0;
        if (crossed) {
            ++crossings;
            double lo = 0.0, hi = h;
            std::vector<double> best = res.y;
            for (int it = 0; it < 200 && (hi - lo) > 1e-12 * T; ++it) {
                const double mid = 0.5 * (lo + hi);
                const std::vector<double> y_mid = rk4_fixed(rhs, y, tau, mid, 8);
                if (y_mid[6] * u3_before < 0.0) {
                    hi = mid;
                    best = y_mid;
                } else {
                    lo = mid;
                }
            }
            if (crossings == 2) return best[1] - 2.0 * kPi;  // x2 at perihelion return
        }
        tau += h;
        y = res.y;
        h *= std::clamp(0.9 * std::pow(std::max(res.err, 1e-12), -0.2), 0.2, 5.0);
    }
    throw std::runtime_error("precession_from_geodesic: step budget exhausted");
}

ExtremeVelocities extreme_velocities(const OrbitSpec& spec) {
    validate_orbit(spec);
    const double p = spec.p, a = spec.a, rM = spec.r_M;
    const double rad_max = 2.0 * rM * (p - 2.0 * rM) / ((a + p) * (a - 2.0 * rM));
    const double rad_min = 2.0 * rM * (a - 2.0 * rM) / ((a + p) * (p - 2.0 * rM));
    if (rad_max < 0.0 || rad_min < 0.0)
        throw std::domain_error("extreme_velocities: negative radicand");
    ExtremeVelocities v;
    v.beta_max = (a / p) * std::sqrt(rad_max);
    v.beta_min = (p / a) * std::sqrt(rad_min);
    return v;
}

double radial_velocity_schwarzschild(double y3, double c4, double r_M) {
    if (!(y3 > 2.0 * r_M))
        throw std::domain_error("radial_velocity: y3 must exceed 2 r_M");
    const double rad = c4 * c4 - 1.0 + 2.0 * r_M / y3;
    if (rad < 0.0) throw std::domain_error("radial_velocity: forbidden region");
    return -((y3 - 2.0 * r_M) / (c4 * y3)) * std::sqrt(rad);
}

RadialExtremum radial_extremum(double c4, double r_M) {
    const double denom = 1.0 - 2.0 * c4 * c4 / 3.0;
    if (denom <= 0.0)
        throw std::domain_error("radial_extremum: no interior extremum for c4^2 >= 3/2");
    RadialExtremum e;
    e.y3m = 2.0 * r_M / denom;
    e.beta3m = -2.0 * c4 * c4 / (3.0 * std::sqrt(3.0));
    return e;
}

double radial_velocity_paper(double y3, double y30, double beta30, double r_M) {
    if (!(y3 > 2.0 * r_M) || !(y30 > 2.0 * r_M))
        throw std::domain_error("radial_velocity: radius must exceed 2 r_M");
    const double b0 = std::sqrt(2.0 * r_M / y30);
    const double a0 = 1.0 - 2.0 * r_M / y30;
    const double under = a0 - 2.0 * beta30 * b0 - beta30 * beta30;
    if (under <= 0.0)
        throw std::domain_error("radial_velocity: launch state outside the light cone");
    const double alpha = (a0 - beta30 * b0) / std::sqrt(under);
    const double A = 1.0 - 2.0 * r_M / y3;
    const double b = std::sqrt(2.0 * r_M / y3);
    const double rad = alpha * alpha - A;
    if (rad < 0.0)
        throw std::domain_error("radial_velocity: y3 beyond the turning radius");
    const double root = std::sqrt(rad);
    // A root/(b root - alpha) in a form that survives y3 -> 2 r_M: since
    // b^2 - 1 = -A, b root - alpha = -A (alpha^2 + b^2)/(b root + alpha)
    // exactly, and the cancellation-prone factor A drops out
    return -root * (b * root + alpha) / (alpha * alpha + b * b);
}

std::vector<PlanetRecord> load_planets_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_planets_csv: cannot open " + path);
    std::vector<PlanetRecord> out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (!header_seen) {
            if (line != "name,perihelion_km,aphelion_km,period_days")
                throw std::runtime_error("load_planets_csv: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string name, ps, as, ds;
        if (!std::getline(ss, name, ',') || !std::getline(ss, ps, ',') ||
            !std::getline(ss, as, ',') || !std::getline(ss, ds))
            throw std::runtime_error("load_planets_csv: malformed row '" + line + "'");
        PlanetRecord r;
        r.name = name;
        try {
            r.perihelion_km = std::stod(ps);
            r.aphelion_km = std::stod(as);
            r.period_days = std::stod(ds);
        } catch (const std::exception&) {
            throw std::runtime_error("load_planets_csv: bad number in row '" + line + "'");
        }
        if (!(r.perihelion_km > 0.0) || !(r.aphelion_km >= r.perihelion_km) ||
            !(r.period_days > 0.0))
            throw std::runtime_error("load_planets_csv: invalid values for " + r.name);
        out.push_back(r);
    }
    if (!header_seen) throw std::runtime_error("load_planets_csv: empty file " + path);
    return out;
}

std::vector<PlanetRow> planet_table(const std::vector<PlanetRecord>& records,
                                    const metrics::PhysicalConstants& consts) {
    const double rM_km = metrics::mass_to_length(consts.M_sun, consts) / 1000.0;
    const double c_km_s = consts.c / 1000.0;
    std::vector<PlanetRow> rows;
    rows.reserve(records.size());
    for (const auto& rec : records) {
        PlanetRow row;
        row.name = rec.name;
        try {
            const OrbitSpec spec{rec.perihelion_km, rec.aphelion_km, rM_km};
            const double dphi = precession(spec);
            row.dphi_per_rev_arcsec = to_arcsec(dphi);
            row.dphi_per_century_arcsec =
                row.dphi_per_rev_arcsec * 36525.0 / rec.period_days;
            const ExtremeVelocities v = extreme_velocities(spec);
            row.v_min_km_s = v.beta_min * c_km_s;
            row.v_max_km_s = v.beta_max * c_km_s;
        } catch (const std::exception& err) {
            row.error = err.what();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dynamics
