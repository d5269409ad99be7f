#include "curvkit/metrics.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace metrics {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_params(const SphericalSolutionParams& p) {
    if (p.c5 < 0.0) throw std::invalid_argument("spherical params: c5 must be non-negative");
    if (p.c8 != 1.0 && p.c8 != -1.0)
        throw std::invalid_argument("spherical params: c8 must be +1 or -1");
}

double sq(double v) { return v * v; }

}  // namespace

MetricField general_spherical(const SphericalSolutionParams& p) {
    validate_params(p);
    MetricField m;
    m.name = "general_spherical";
    m.dim = 4;
    m.coordinate_chart = "spherical";

    // radicand of f: S = c5³(2x3³−c5³) + ⅔c6·w0^{5/3} + c7·w0^{8/3}
    const auto S_of = [p](double x3, double w0) {
        return p.c5 * p.c5 * p.c5 * (2.0 * x3 * x3 * x3 - p.c5 * p.c5 * p.c5) +
               (2.0 / 3.0) * p.c6 * std::pow(w0, 5.0 / 3.0) + p.c7 * std::pow(w0, 8.0 / 3.0);
    };

    m.singular_locus = [p, S_of](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        if (x3 <= std::max(p.c5 * (1.0 + 1e-6), 1e-12)) return true;
        if (std::fabs(std::sin(x1)) < 1e-8) return true;
        return S_of(x3, x3 * x3 * x3 - p.c5 * p.c5 * p.c5) < 0.0;
    };

    m.eval = [p, S_of](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        const double w0 = x3 * x3 * x3 - p.c5 * p.c5 * p.c5;
        const double w23 = std::pow(w0, 2.0 / 3.0);
        const double h = std::cbrt(w0) / x3;
        const double S = S_of(x3, w0);
        if (S < 0.0)
            throw std::domain_error("general_spherical: negative radicand at x3 = " +
                                    std::to_string(x3));
        const double f = p.c8 * std::sqrt(S) / w0;
        SquareMatrix g(4);
        g(0, 0) = -w23;
        g(1, 1) = -w23 * sq(std::sin(x1));
        g(2, 2) = -w23 / (x3 * x3);
        g(2, 3) = g(3, 2) = -h * f;
        g(3, 3) = 1.0 / std::pow(h, 6) - f * f;
        return g;
    };

    m.d_eval = [p, S_of](const ColumnVector& x, int axis) {
        const double x1 = x[0], x3 = x[2];
        SquareMatrix d(4);
        const double w0 = x3 * x3 * x3 - p.c5 * p.c5 * p.c5;
        const double w13 = std::cbrt(w0);
        const double w23 = w13 * w13;
        if (axis == 0) {
            d(1, 1) = -w23 * 2.0 * std::sin(x1) * std::cos(x1);
            return d;
        }
        if (axis != 2) return d;  // only x1 and x3 appear in g
        const double dw23 = 2.0 * x3 * x3 / w13;  // d(w0^{2/3})/dx3
        d(0, 0) = -dw23;
        d(1, 1) = -dw23 * sq(std::sin(x1));
        d(2, 2) = -2.0 / w13 + 2.0 * w23 / (x3 * x3 * x3);
        // g44 = 1 − ⅔c6·w0^{-1/3} − c7·w0^{2/3}
        d(3, 3) = (2.0 * p.c6 / 3.0) * x3 * x3 / (w13 * w0) - 2.0 * p.c7 * x3 * x3 / w13;
        // g34 = −c8·sqrt(S)/(x3·w0^{2/3})
        const double S = S_of(x3, w0);
        const double Sp = 6.0 * p.c5 * p.c5 * p.c5 * x3 * x3 +
                          (10.0 / 3.0) * p.c6 * x3 * x3 * w23 +
                          8.0 * p.c7 * x3 * x3 * w23 * w0;
        const double sqS = std::sqrt(S);
        d(2, 3) = d(3, 2) = -p.c8 * (Sp / (2.0 * sqS * x3 * w23) - sqS / (x3 * x3 * w23) -
                                     2.0 * x3 * sqS / (w23 * w0));
        return d;
    };
    return m;
}

MetricField weak_spherical(double r_M, double c7, double c8) {
    if (r_M < 0.0) throw std::invalid_argument("weak_spherical: r_M must be non-negative");
    if (c8 != 1.0 && c8 != -1.0)
        throw std::invalid_argument("weak_spherical: c8 must be +1 or -1");
    MetricField m;
    m.name = "weak_spherical";
    m.dim = 4;
    m.coordinate_chart = "spherical";

    m.singular_locus = [r_M, c7](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        if (x3 <= 1e-12) return true;
        if (std::fabs(std::sin(x1)) < 1e-8) return true;
        return 2.0 * r_M / x3 + c7 * x3 * x3 < 0.0;
    };

    m.eval = [r_M, c7, c8](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        const double rad = 2.0 * r_M / x3 + c7 * x3 * x3;
        if (rad < 0.0)
            throw std::domain_error("weak_spherical: negative radicand at x3 = " +
                                    std::to_string(x3));
        SquareMatrix g(4);
        g(0, 0) = -x3 * x3;
        g(1, 1) = -x3 * x3 * sq(std::sin(x1));
        g(2, 2) = -1.0;
        g(2, 3) = g(3, 2) = -c8 * std::sqrt(rad);
        g(3, 3) = 1.0 - 2.0 * r_M / x3 - c7 * x3 * x3;
        return g;
    };

    m.d_eval = [r_M, c7, c8](const ColumnVector& x, int axis) {
        const double x1 = x[0], x3 = x[2];
        SquareMatrix d(4);
        if (axis == 0) {
            d(1, 1) = -x3 * x3 * 2.0 * std::sin(x1) * std::cos(x1);
            return d;
        }
        if (axis != 2) return d;
        d(0, 0) = -2.0 * x3;
        d(1, 1) = -2.0 * x3 * sq(std::sin(x1));
        const double rad = 2.0 * r_M / x3 + c7 * x3 * x3;
        const double drad = -2.0 * r_M / (x3 * x3) + 2.0 * c7 * x3;
        d(2, 3) = d(3, 2) = -c8 * drad / (2.0 * std::sqrt(rad));
        d(3, 3) = 2.0 * r_M / (x3 * x3) - 2.0 * c7 * x3;
        return d;
    };
    return m;
}

MetricField general_weak(std::function<double(double)> g33_fn, double r_M, double rho,
                         double c8, std::function<double(double)> dg33_fn) {
    if (!g33_fn) throw std::invalid_argument("general_weak: g33_fn required");
    if (c8 != 1.0 && c8 != -1.0)
        throw std::invalid_argument("general_weak: c8 must be +1 or -1");
    MetricField m;
    m.name = "general_weak";
    m.dim = 4;
    m.coordinate_chart = "spherical";

    const auto g44_of = [r_M, rho](double x3) {
        return 1.0 - 2.0 * r_M / x3 - (rho / 3.0) * x3 * x3;
    };

    // Profiles like g33 = -1/g44 sit exactly on the admissible boundary
    // 1 + g33 g44 = 0; rounding noise there must read as zero, not as a
    // domain violation.
    const auto snapped_radicand = [](double g33, double g44) {
        double rad = 1.0 + g33 * g44;
        const double snap =
            16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(g33 * g44));
        if (std::fabs(rad) <= snap) rad = 0.0;
        return rad;
    };

    m.singular_locus = [g33_fn, g44_of, snapped_radicand](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        if (x3 <= 1e-12) return true;
        if (std::fabs(std::sin(x1)) < 1e-8) return true;
        const double g33 = g33_fn(x3);
        if (g33 >= 0.0) return true;
        return snapped_radicand(g33, g44_of(x3)) < 0.0;
    };

    m.eval = [g33_fn, g44_of, snapped_radicand, c8](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        const double g33 = g33_fn(x3);
        const double g44 = g44_of(x3);
        const double rad = snapped_radicand(g33, g44);
        if (rad < 0.0)
            throw std::domain_error("general_weak: negative radicand at x3 = " +
                                    std::to_string(x3));
        SquareMatrix g(4);
        g(0, 0) = -x3 * x3;
        g(1, 1) = -x3 * x3 * sq(std::sin(x1));
        g(2, 2) = g33;
        g(2, 3) = g(3, 2) = c8 * std::sqrt(rad);
        g(3, 3) = g44;
        return g;
    };

    if (dg33_fn) {
        m.d_eval = [g33_fn, dg33_fn, g44_of, snapped_radicand, r_M, rho,
                    c8](const ColumnVector& x, int axis) {
            const double x1 = x[0], x3 = x[2];
            SquareMatrix d(4);
            if (axis == 0) {
                d(1, 1) = -x3 * x3 * 2.0 * std::sin(x1) * std::cos(x1);
                return d;
            }
            if (axis != 2) return d;
            d(0, 0) = -2.0 * x3;
            d(1, 1) = -2.0 * x3 * sq(std::sin(x1));
            const double g33 = g33_fn(x3), dg33 = dg33_fn(x3);
            const double g44 = g44_of(x3);
            const double dg44 = 2.0 * r_M / (x3 * x3) - (2.0 * rho / 3.0) * x3;
            d(2, 2) = dg33;
            d(3, 3) = dg44;
            const double rad = snapped_radicand(g33, g44);
            const double num = dg33 * g44 + g33 * dg44;
            if (rad > 0.0) {
                d(2, 3) = d(3, 2) = c8 * num / (2.0 * std::sqrt(rad));
            } else if (rad == 0.0) {
                // on a degenerate branch the radicand (and hence its slope)
                // vanishes identically; an isolated root has a genuine
                // square-root blow-up
                const double nscale = std::fabs(dg33 * g44) + std::fabs(g33 * dg44);
                if (std::fabs(num) > 1e-10 * (1e-300 + nscale))
                    throw std::domain_error(
                        "general_weak: derivative singular where the radicand vanishes");
            } else {
                throw std::domain_error("general_weak: negative radicand at x3 = " +
                                        std::to_string(x3));
            }
            return d;
        };
    }
    return m;
}

MetricField schwarzschild(double r_M) {
    if (r_M <= 0.0) throw std::invalid_argument("schwarzschild: r_M must be positive");
    MetricField m;
    m.name = "schwarzschild";
    m.dim = 4;
    m.coordinate_chart = "spherical";

    m.singular_locus = [r_M](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        if (x3 <= 2.0 * r_M * (1.0 + 1e-6)) return true;
        return std::fabs(std::sin(x1)) < 1e-8;
    };

    m.eval = [r_M](const ColumnVector& x) {
        const double x1 = x[0], x3 = x[2];
        const double A = 1.0 - 2.0 * r_M / x3;
        SquareMatrix g(4);
        g(0, 0) = -x3 * x3;
        g(1, 1) = -x3 * x3 * sq(std::sin(x1));
        g(2, 2) = -1.0 / A;
        g(3, 3) = A;
        return g;
    };

    m.d_eval = [r_M](const ColumnVector& x, int axis) {
        const double x1 = x[0], x3 = x[2];
        SquareMatrix d(4);
        if (axis == 0) {
            d(1, 1) = -x3 * x3 * 2.0 * std::sin(x1) * std::cos(x1);
            return d;
        }
        if (axis != 2) return d;
        const double A = 1.0 - 2.0 * r_M / x3;
        const double dA = 2.0 * r_M / (x3 * x3);
        d(0, 0) = -2.0 * x3;
        d(1, 1) = -2.0 * x3 * sq(std::sin(x1));
        d(2, 2) = dA / (A * A);
        d(3, 3) = dA;
        return d;
    };
    return m;
}

MetricField rectilinear_spherical(const SphericalSolutionParams& p) {
    validate_params(p);
    MetricField m;
    m.name = "rectilinear_spherical";
    m.dim = 4;
    m.coordinate_chart = "rectilinear";

    const auto radicand = [p](double r, double w0) {
        return std::cbrt(w0) * (p.c5 * p.c5 * p.c5 * (2.0 * r * r * r - p.c5 * p.c5 * p.c5) /
                                    std::pow(w0, 5.0 / 3.0) +
                                2.0 * p.c6 + r * r * r * p.c7);
    };

    m.singular_locus = [p, radicand](const ColumnVector& x) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        if (r <= std::max(p.c5 * (1.0 + 1e-6), 1e-12)) return true;
        return radicand(r, r * r * r - p.c5 * p.c5 * p.c5) < 0.0;
    };

    m.eval = [p, radicand](const ColumnVector& x) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        const double w0 = r * r * r - p.c5 * p.c5 * p.c5;
        const double w = std::pow(w0, 2.0 / 3.0) / (r * r);
        const double rad = radicand(r, w0);
        if (rad < 0.0)
            throw std::domain_error("rectilinear_spherical: negative radicand at r = " +
                                    std::to_string(r));
        const double f = (p.c8 / (r * r)) * std::sqrt(rad);
        SquareMatrix g(4);
        for (int i = 0; i < 3; ++i) {
            g(i, i) = -w;
            g(i, 3) = g(3, i) = f * x[i];
        }
        g(3, 3) = 1.0 / (w * w * w) - r * r * f * f / w;
        return g;
    };
    // no d_eval: this chart runs on the generic finite-difference path
    return m;
}

MetricField friedmann_lobachevsky(std::function<double(double)> f_fn,
                                  std::function<double(double)> df_fn) {
    if (!f_fn) throw std::invalid_argument("friedmann_lobachevsky: f_fn required");
    MetricField m;
    m.name = "friedmann_lobachevsky";
    m.dim = 4;
    m.coordinate_chart = "conformal";

    const auto interval = [](const ColumnVector& x) {
        return x[3] * x[3] - x[0] * x[0] - x[1] * x[1] - x[2] * x[2];  // x̃Gx
    };

    m.singular_locus = [interval](const ColumnVector& x) { return interval(x) <= 1e-16; };

    m.eval = [f_fn, interval](const ColumnVector& x) {
        const double s2 = interval(x);
        if (s2 <= 0.0)
            throw std::domain_error("friedmann_lobachevsky: spacelike point requested");
        const double f = f_fn(std::sqrt(s2));
        SquareMatrix g = SquareMatrix::signature(4);
        for (double& e : g.e) e *= f * f;
        return g;
    };

    if (df_fn) {
        m.d_eval = [f_fn, df_fn, interval](const ColumnVector& x, int axis) {
            const double s = std::sqrt(interval(x));
            const double f = f_fn(s), df = df_fn(s);
            // ∂_c g = 2 f f′ (Gx)_c / s · G
            const double gx_c = (axis == 3) ? x[3] : -x[axis];
            SquareMatrix d = SquareMatrix::signature(4);
            const double factor = 2.0 * f * df * gx_c / s;
            for (double& e : d.e) e *= factor;
            return d;
        };
    }
    return m;
}

MetricField fl_first_solution(double rho) {
    const double b = rho / 12.0;
    auto f = [b](double s) { return 1.0 / (1.0 - b * s * s); };
    auto df = [b, f](double s) { return 2.0 * b * s * sq(f(s)); };
    MetricField m = friedmann_lobachevsky(f, df);
    m.name = "fl_first_solution";
    auto base_locus = m.singular_locus;
    m.singular_locus = [base_locus, b](const ColumnVector& x) {
        if (base_locus(x)) return true;
        const double s2 = x[3] * x[3] - x[0] * x[0] - x[1] * x[1] - x[2] * x[2];
        return std::fabs(1.0 - b * s2) < 1e-10;  // conformal-factor pole
    };
    return m;
}

// ---- flat-space frame construction ----

namespace {

// validated F_a: antisymmetry checked on every evaluation
std::function<SquareMatrix(double)> checked_F(const FlatFrameSpec& spec) {
    auto F = spec.F_a;
    const int dim = spec.dim;
    return [F, dim](double t) {
        SquareMatrix f = F(t);
        if (f.dim != dim) throw std::invalid_argument("flat_frame: F_a dimension mismatch");
        // antisymmetry means F + F̃ = 0; tolerate roundoff only
        if (matcore::max_abs(f + matcore::transpose(f)) > 1e-10 * (1.0 + matcore::max_abs(f)))
            throw std::invalid_argument("flat_frame: F_a is not antisymmetric");
        return f;
    };
}

// frame matrix e0(x) = I + (F(x_k)·Px)·ẽ_k  (column k carries F·Px)
SquareMatrix frame_e0(const FlatFrameSpec& spec,
                      const std::function<SquareMatrix(double)>& F,
                      const ColumnVector& x) {
    const int n = spec.dim, k = spec.k;
    ColumnVector px = x;
    px[k] = 0.0;
    const ColumnVector fpx = F(x[k]) * px;
    SquareMatrix e0 = SquareMatrix::identity(n);
    for (int i = 0; i < n; ++i) e0(i, k) += fpx[i];
    return e0;
}

// modified Gram-Schmidt on columns, restoring orthogonality of Ω
void reorthonormalize(SquareMatrix& om) {
    const int n = om.dim;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            double proj = 0.0;
            for (int r = 0; r < n; ++r) proj += om(r, i) * om(r, j);
            for (int r = 0; r < n; ++r) om(r, j) -= proj * om(r, i);
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += om(r, j) * om(r, j);
        norm = std::sqrt(norm);
        for (int r = 0; r < n; ++r) om(r, j) /= norm;
    }
}

struct OmegaWalk {
    SquareMatrix omega;
    ColumnVector integral;  // ∫₀^t Ω(u)·i(k) du
};

// joint fixed-step RK4 for dΩ/du = Ω·F(u) and the running column integral
OmegaWalk walk_omega(const FlatFrameSpec& spec,
                     const std::function<SquareMatrix(double)>& F, double t) {
    const int n = spec.dim, k = spec.k;
    OmegaWalk w{spec.omega0, ColumnVector(n)};
    const double base = 1e-3;
    if (t == 0.0) return w;
    const double dir = (t > 0.0) ? 1.0 : -1.0;
    const long nsteps = static_cast<long>(std::ceil(std::fabs(t) / base));
    const double h = t / static_cast<double>(nsteps);
    const auto col_k = [&](const SquareMatrix& om) {
        ColumnVector c(n);
        for (int i = 0; i < n; ++i) c[i] = om(i, k);
        return c;
    };
    double u = 0.0;
    for (long s = 0; s < nsteps; ++s) {
        const SquareMatrix f1 = F(u), f2 = F(u + 0.5 * h), f4 = F(u + h);
        const SquareMatrix k1 = w.omega * f1;
        const SquareMatrix o2 = w.omega + 0.5 * h * k1;
        const SquareMatrix k2 = o2 * f2;
        const SquareMatrix o3 = w.omega + 0.5 * h * k2;
        const SquareMatrix k3 = o3 * f2;
        const SquareMatrix o4 = w.omega + h * k3;
        const SquareMatrix k4 = o4 * f4;
        // same Runge-Kutta stages drive the quadrature of Ω·i(k)
        w.integral = w.integral +
                     (h / 6.0) * (col_k(w.omega) + 2.0 * col_k(o2) + 2.0 * col_k(o3) + col_k(o4));
        w.omega = w.omega + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        u += h;
        if ((s + 1) % 100 == 0) reorthonormalize(w.omega);
    }
    (void)dir;
    return w;
}

}  // namespace

FlatFrameConstruction flat_frame(const FlatFrameSpec& spec) {
    if (spec.dim < 2) throw std::invalid_argument("flat_frame: dim must be at least 2");
    if (spec.k < 0 || spec.k >= spec.dim)
        throw std::invalid_argument("flat_frame: axis k out of range");
    if (!spec.F_a) throw std::invalid_argument("flat_frame: F_a required");
    if (spec.omega0.dim != spec.dim)
        throw std::invalid_argument("flat_frame: omega0 dimension mismatch");
    const SquareMatrix gram =
        matcore::transpose(spec.omega0) * spec.omega0 - SquareMatrix::identity(spec.dim);
    if (matcore::max_abs(gram) > 1e-12)
        throw std::invalid_argument("flat_frame: omega0 is not orthogonal");

    auto F = checked_F(spec);
    (void)F(0.0);  // probe once so a bad generator fails at construction, not first use

    FlatFrameConstruction out;
    out.spec = spec;

    MetricField m;
    m.name = "flat_frame";
    m.dim = spec.dim;
    m.coordinate_chart = "rectilinear";
    const FlatFrameSpec sp = spec;
    m.eval = [sp, F](const ColumnVector& x) {
        const SquareMatrix e0 = frame_e0(sp, F, x);
        return matcore::transpose(e0) * e0;
    };
    m.d_eval = [sp, F](const ColumnVector& x, int axis) {
        const int n = sp.dim, k = sp.k;
        SquareMatrix de0(n);
        if (axis != k) {
            // ∂_m e0 has column k equal to F(x_k)·e_m, i.e. column m of F
            const SquareMatrix f = F(x[k]);
            for (int i = 0; i < n; ++i) de0(i, k) = f(i, axis);
        } else {
            // ∂_k e0 carries F′(x_k)·Px in column k; F′ by 5-point FD in t
            const double h = 1e-5 * std::max(1.0, std::fabs(x[k]));
            const SquareMatrix dF =
                (1.0 / (12.0 * h)) * (8.0 * (F(x[k] + h) - F(x[k] - h)) -
                                      (F(x[k] + 2.0 * h) - F(x[k] - 2.0 * h)));
            ColumnVector px = x;
            px[k] = 0.0;
            const ColumnVector v = dF * px;
            for (int i = 0; i < n; ++i) de0(i, k) = v[i];
        }
        const SquareMatrix e0 = frame_e0(sp, F, x);
        return matcore::transpose(de0) * e0 + matcore::transpose(e0) * de0;
    };
    out.metric = m;

    out.omega = [sp, F](double t) { return walk_omega(sp, F, t).omega; };
    out.q_flat = [sp, F](const ColumnVector& x) {
        const OmegaWalk w = walk_omega(sp, F, x[sp.k]);
        ColumnVector px = x;
        px[sp.k] = 0.0;
        return w.integral + w.omega * px;
    };
    return out;
}

MetricField flat_frame_metric(const FlatFrameSpec& spec) { return flat_frame(spec).metric; }

// ---- constants and unit conversions ----

PhysicalConstants load_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_constants: cannot open " + path);
    std::map<std::string, double> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("load_constants: malformed line '" + line + "'");
        const std::string key = strip(line.substr(0, eq));
        const std::string val = strip(line.substr(eq + 1));
        if (kv.count(key))
            throw std::runtime_error("load_constants: duplicate key '" + key + "'");
        try {
            kv[key] = std::stod(val);
        } catch (const std::exception&) {
            throw std::runtime_error("load_constants: bad value for '" + key + "'");
        }
    }
    const std::vector<std::string> required = {"G_g", "c",   "eps0", "q",
                                               "m_p", "m_e", "hbar", "M_sun"};
    if (kv.size() != required.size())
        throw std::runtime_error("load_constants: key set must be exactly the 8 required keys");
    PhysicalConstants k;
    double* slots[] = {&k.G_g, &k.c, &k.eps0, &k.q, &k.m_p, &k.m_e, &k.hbar, &k.M_sun};
    for (size_t i = 0; i < required.size(); ++i) {
        const auto it = kv.find(required[i]);
        if (it == kv.end())
            throw std::runtime_error("load_constants: missing key '" + required[i] + "'");
        if (!(it->second > 0.0))
            throw std::runtime_error("load_constants: '" + required[i] + "' must be positive");
        *slots[i] = it->second;
    }
    return k;
}

double mass_to_length(double mass, const PhysicalConstants& k) {
    return k.G_g * mass / (k.c * k.c);
}

double charge_radius(double charge, double mass, const PhysicalConstants& k) {
    return charge * charge / (4.0 * kPi * k.eps0 * mass * k.c * k.c);
}

double force_ratio(const PhysicalConstants& k) {
    return k.q * k.q / (4.0 * kPi * k.eps0 * k.G_g * k.m_p * k.m_p);
}

double bohr_radius(const PhysicalConstants& k) {
    return 4.0 * kPi * k.eps0 * k.hbar * k.hbar / (k.m_e * k.q * k.q);
}

}  // namespace metrics
