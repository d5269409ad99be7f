#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "curvkit/metrics.hpp"

using matcore::ColumnVector;
using matcore::SquareMatrix;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_diff(const SquareMatrix& a, const SquareMatrix& b) {
    return matcore::max_abs(a - b);
}

// five-point stencil for ∂g/∂x_axis, used to cross-check the analytic derivatives
SquareMatrix fd_metric(const geometry::MetricField& m, const ColumnVector& x, int axis) {
    const double h = 1e-5 * std::max(1.0, std::fabs(x[axis]));
    auto at = [&](double offset) {
        ColumnVector y = x;
        y[axis] += offset;
        return m.eval(y);
    };
    return (1.0 / (12.0 * h)) *
           (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h)));
}

void check_d_eval_against_fd(const geometry::MetricField& m, const ColumnVector& x) {
    REQUIRE(static_cast<bool>(m.d_eval));
    for (int axis = 0; axis < m.dim; ++axis) {
        const SquareMatrix analytic = m.d_eval(x, axis);
        const SquareMatrix fd = fd_metric(m, x, axis);
        const double scale = 1.0 + matcore::max_abs(fd);
        CHECK(max_diff(analytic, fd) < 1e-7 * scale);
    }
}

std::string write_temp(const char* name, const char* body) {
    std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("general_spherical: closed-form entries, determinant, domain") {
    metrics::SphericalSolutionParams p;
    p.c5 = 1.0;
    p.c6 = 0.3;
    p.c7 = 1e-4;
    p.c8 = 1.0;
    auto m = metrics::general_spherical(p);

    const double x1 = kPi / 3.0, x3 = 5.0;
    ColumnVector x{x1, 0.4, x3, 1.2};
    const SquareMatrix g = m.eval(x);

    CHECK(matcore::max_asymmetry(g) == 0.0);
    // det g = -x3^4 sin^2 x1, independent of the constants
    const double want_det = -std::pow(x3, 4) * std::pow(std::sin(x1), 2);
    CHECK(matcore::det(g) == doctest::Approx(want_det).epsilon(1e-10));

    // g44 written two ways: 1/h^6 - f^2 and 1 - (2c6/3) w0^{-1/3} - c7 w0^{2/3}
    const double w0 = x3 * x3 * x3 - p.c5 * p.c5 * p.c5;
    const double alt = 1.0 - (2.0 * p.c6 / 3.0) / std::cbrt(w0) -
                       p.c7 * std::cbrt(w0) * std::cbrt(w0);
    CHECK(g(3, 3) == doctest::Approx(alt).epsilon(1e-12));

    // singular locus: inner radius and the polar axis
    CHECK(m.singular_locus(ColumnVector{x1, 0.0, p.c5, 0.0}));
    CHECK(m.singular_locus(ColumnVector{0.0, 0.0, x3, 0.0}));
    CHECK_FALSE(m.singular_locus(x));

    // sufficiently negative c6 drives the radicand negative at moderate x3
    metrics::SphericalSolutionParams bad = p;
    bad.c6 = -10.0;
    auto mb = metrics::general_spherical(bad);
    const ColumnVector xb{kPi / 3.0, 0.0, 2.0, 0.0};
    CHECK(mb.singular_locus(xb));
    CHECK_THROWS_AS((void)mb.eval(xb), std::domain_error);

    CHECK_THROWS_AS((void)metrics::general_spherical(
                        metrics::SphericalSolutionParams{-1.0, 0.0, 0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)metrics::general_spherical(
                        metrics::SphericalSolutionParams{1.0, 0.0, 0.0, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("general_spherical reduces to weak_spherical as c5 -> 0") {
    const double r_M = 1.5e-3, c7 = 2e-5;
    auto weak = metrics::weak_spherical(r_M, c7, 1.0);

    const ColumnVector x{kPi / 3.0, 0.7, 12.0, 3.0};

    // at c5 = 0 (with c6 = 3 r_M) the two forms coincide identically
    metrics::SphericalSolutionParams p0;
    p0.c5 = 0.0;
    p0.c6 = 3.0 * r_M;
    p0.c7 = c7;
    auto exact = metrics::general_spherical(p0);
    CHECK(max_diff(exact.eval(x), weak.eval(x)) < 1e-13 * matcore::max_abs(weak.eval(x)));

    // at c5 = 1e-6 x3 the difference is already below 1e-8
    metrics::SphericalSolutionParams ps = p0;
    ps.c5 = 1e-6 * x[2];
    auto close = metrics::general_spherical(ps);
    CHECK(max_diff(close.eval(x), weak.eval(x)) < 1e-8);
}

TEST_CASE("weak_spherical: 3-4 block determinant, flat limit, domain") {
    const double r_M = 1.476e-6, c7 = 1e-9;
    auto m = metrics::weak_spherical(r_M, c7, 1.0);
    for (double x3 : {0.1, 1.0, 40.0, 900.0}) {
        const SquareMatrix g = m.eval(ColumnVector{kPi / 4.0, 0.0, x3, 0.0});
        // g33 g44 - g34^2 = -1 holds exactly for this family
        const double block = g(2, 2) * g(3, 3) - g(2, 3) * g(2, 3);
        CHECK(block == doctest::Approx(-1.0).epsilon(1e-12));
    }

    auto flat = metrics::weak_spherical(0.0, 0.0, 1.0);
    const double x1 = 1.1, x3 = 7.0;
    const SquareMatrix g = flat.eval(ColumnVector{x1, 0.0, x3, 0.0});
    const SquareMatrix want = SquareMatrix::diagonal(
        {-x3 * x3, -x3 * x3 * std::sin(x1) * std::sin(x1), -1.0, 1.0});
    CHECK(max_diff(g, want) == 0.0);

    // negative c7 turns the radicand negative far out
    auto rep = metrics::weak_spherical(1.0, -1e-4, 1.0);
    const ColumnVector far{kPi / 2.0, 0.0, 300.0, 0.0};
    CHECK(rep.singular_locus(far));
    CHECK_THROWS_AS((void)rep.eval(far), std::domain_error);
}

TEST_CASE("general_weak reproduces the weak and schwarzschild forms") {
    const double r_M = 2.5e-4, c7 = 3e-6;

    // constant g33 = -1 with the mixed-entry sign flipped reproduces weak_spherical
    auto gw = metrics::general_weak([](double) { return -1.0; }, r_M, 3.0 * c7, -1.0,
                                    [](double) { return 0.0; });
    auto weak = metrics::weak_spherical(r_M, c7, 1.0);
    for (double x3 : {0.5, 3.0, 25.0}) {
        const ColumnVector x{kPi / 3.0, 0.0, x3, 0.0};
        CHECK(max_diff(gw.eval(x), weak.eval(x)) < 1e-14 * (1.0 + matcore::max_abs(weak.eval(x))));
    }

    // g33 = -1/g44 with rho = 0 sits exactly on the radicand boundary:
    // the mixed entry must come out zero, and the static form is recovered
    auto gs = metrics::general_weak(
        [r_M](double x3) { return -1.0 / (1.0 - 2.0 * r_M / x3); }, r_M, 0.0, 1.0);
    auto schw = metrics::schwarzschild(r_M);
    for (double x3 : {0.01, 0.2, 5.0}) {
        const ColumnVector x{kPi / 5.0, 1.0, x3, 0.0};
        const SquareMatrix g = gs.eval(x);
        CHECK(g(2, 3) == 0.0);
        CHECK(max_diff(g, schw.eval(x)) < 1e-14 * (1.0 + matcore::max_abs(g)));
        CHECK_FALSE(gs.singular_locus(x));
    }

    // the 3-4 block determinant is -1 for any admissible g33 profile
    // (admissible: the perturbation of g33 below -1 stays inside 1 - g44)
    auto odd = metrics::general_weak(
        [](double x3) { return -1.0 - 1e-4 * (1.0 + 0.5 * std::sin(x3)); }, r_M, 3e-3,
        1.0);
    for (double x3 : {1.0, 8.0, 20.0}) {
        const SquareMatrix g = odd.eval(ColumnVector{1.2, 0.0, x3, 0.0});
        CHECK(g(2, 2) * g(3, 3) - g(2, 3) * g(2, 3) == doctest::Approx(-1.0).epsilon(1e-12));
    }

    // positive g33 is outside the family
    auto wrong = metrics::general_weak([](double) { return 0.5; }, r_M, 0.0, 1.0);
    CHECK(wrong.singular_locus(ColumnVector{1.0, 0.0, 5.0, 0.0}));
}

TEST_CASE("schwarzschild: closed-form values and horizon locus") {
    const double r_M = 1.0;
    auto m = metrics::schwarzschild(r_M);

    const ColumnVector x{kPi / 2.0, 0.0, 4.0 * r_M, 0.0};
    const SquareMatrix g = m.eval(x);
    CHECK(g(3, 3) == doctest::Approx(0.5));
    CHECK(g(2, 2) == doctest::Approx(-2.0));
    CHECK(g(0, 0) == doctest::Approx(-16.0));
    CHECK(g(2, 3) == 0.0);

    CHECK(m.singular_locus(ColumnVector{1.0, 0.0, 2.0 * r_M, 0.0}));
    CHECK(m.singular_locus(ColumnVector{1.0, 0.0, 2.0 * r_M * (1.0 + 1e-7), 0.0}));
    CHECK_FALSE(m.singular_locus(ColumnVector{1.0, 0.0, 2.0 * r_M * 1.01, 0.0}));

    CHECK_THROWS_AS((void)metrics::schwarzschild(0.0), std::invalid_argument);
}

TEST_CASE("rectilinear_spherical: unit determinant and closed-form g44") {
    metrics::SphericalSolutionParams p;
    p.c5 = 1.0;
    p.c6 = 0.3;
    p.c7 = 1e-4;
    auto m = metrics::rectilinear_spherical(p);

    const ColumnVector x{3.0, 6.0, 2.0, 0.8};  // r = 7
    const double r = 7.0;
    const SquareMatrix g = m.eval(x);

    CHECK(matcore::max_asymmetry(g) == 0.0);
    CHECK(matcore::det(g) == doctest::Approx(-1.0).epsilon(1e-10));

    const double w0 = r * r * r - p.c5 * p.c5 * p.c5;
    const double g44 = 1.0 - (2.0 * p.c6 + r * r * r * p.c7) / std::cbrt(w0);
    CHECK(g(3, 3) == doctest::Approx(g44).epsilon(1e-12));

    // no analytic derivative is provided for this chart
    CHECK_FALSE(static_cast<bool>(m.d_eval));

    CHECK(m.singular_locus(ColumnVector{p.c5, 0.0, 0.0, 0.0}));
    CHECK_FALSE(m.singular_locus(x));
}

TEST_CASE("friedmann_lobachevsky: conformal factor and first solution") {
    // f == 1 gives the signature matrix everywhere inside the cone
    auto mink = metrics::friedmann_lobachevsky([](double) { return 1.0; });
    const ColumnVector x{0.3, -0.2, 0.5, 2.0};
    CHECK(max_diff(mink.eval(x), SquareMatrix::signature(4)) == 0.0);

    const double rho = 3.0;
    auto fl = metrics::fl_first_solution(rho);
    const double s2 = x[3] * x[3] - x[0] * x[0] - x[1] * x[1] - x[2] * x[2];
    const double f = 1.0 / (1.0 - rho * s2 / 12.0);
    SquareMatrix want = SquareMatrix::signature(4);
    for (double& e : want.e) e *= f * f;
    CHECK(max_diff(fl.eval(x), want) < 1e-14 * f * f);

    // conformal-factor pole: rho s^2 / 12 = 1 at s = 2
    CHECK(fl.singular_locus(ColumnVector{0.0, 0.0, 0.0, 2.0}));
    CHECK_FALSE(fl.singular_locus(ColumnVector{0.0, 0.0, 0.0, 1.0}));

    // spacelike points are outside the chart
    const ColumnVector outside{3.0, 0.0, 0.0, 1.0};
    CHECK(mink.singular_locus(outside));
    CHECK_THROWS_AS((void)mink.eval(outside), std::domain_error);
}

TEST_CASE("analytic metric derivatives match finite differences") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> ang(0.4, 2.7);
    std::uniform_real_distribution<double> rad(5.0, 50.0);
    std::uniform_real_distribution<double> sml(-1.0, 1.0);
    std::uniform_real_distribution<double> tim(2.0, 5.0);

    metrics::SphericalSolutionParams p;
    p.c5 = 1.0;
    p.c6 = 0.3;
    p.c7 = 1e-4;

    const auto spherical_point = [&] {
        return ColumnVector{ang(rng), sml(rng), rad(rng), sml(rng)};
    };

    SUBCASE("general_spherical") {
        auto m = metrics::general_spherical(p);
        for (int i = 0; i < 20; ++i) check_d_eval_against_fd(m, spherical_point());
    }
    SUBCASE("weak_spherical") {
        auto m = metrics::weak_spherical(1.5e-3, 2e-5, 1.0);
        for (int i = 0; i < 20; ++i) check_d_eval_against_fd(m, spherical_point());
    }
    SUBCASE("general_weak with analytic g33 slope") {
        // keep the g33 perturbation well inside the radicand budget 2 r_M/x3 + (rho/3) x3^2
        auto m = metrics::general_weak(
            [](double x3) { return -1.0 - 5e-5 * (1.0 + 0.5 * std::sin(x3)); }, 1.5e-3,
            1e-5, 1.0, [](double x3) { return -2.5e-5 * std::cos(x3); });
        for (int i = 0; i < 20; ++i) check_d_eval_against_fd(m, spherical_point());
    }
    SUBCASE("schwarzschild") {
        auto m = metrics::schwarzschild(1.0);
        for (int i = 0; i < 20; ++i) check_d_eval_against_fd(m, spherical_point());
    }
    SUBCASE("fl_first_solution") {
        auto m = metrics::fl_first_solution(0.3);
        for (int i = 0; i < 20; ++i) {
            const ColumnVector x{sml(rng), sml(rng), sml(rng), tim(rng)};
            if (m.singular_locus(x)) continue;
            check_d_eval_against_fd(m, x);
        }
    }
}

TEST_CASE("flat_frame: trivial generator gives the identity construction") {
    metrics::FlatFrameSpec spec;
    spec.dim = 4;
    spec.k = 2;
    spec.F_a = [](double) { return SquareMatrix(4); };
    auto ff = metrics::flat_frame(spec);

    const ColumnVector x{0.4, -1.0, 2.5, 0.7};
    CHECK(max_diff(ff.metric.eval(x), SquareMatrix::identity(4)) == 0.0);
    CHECK(max_diff(ff.omega(1.7), SquareMatrix::identity(4)) < 1e-14);

    // Q(x) = ∫ Ω i(k) + Ω Px collapses to x itself
    const ColumnVector q = ff.q_flat(x);
    for (int i = 0; i < 4; ++i) CHECK(q[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("flat_frame: constant rotation generator transports as a rotation") {
    const double a = 0.8;
    metrics::FlatFrameSpec spec;
    spec.dim = 4;
    spec.k = 2;
    spec.F_a = [a](double) {
        SquareMatrix f(4);
        f(0, 1) = a;
        f(1, 0) = -a;
        return f;
    };
    auto ff = metrics::flat_frame(spec);

    // dΩ/dt = Ω F with constant F integrates to the plane rotation by a·t
    const double t = 2.0;
    const SquareMatrix om = ff.omega(t);
    CHECK(om(0, 0) == doctest::Approx(std::cos(a * t)).epsilon(1e-10));
    CHECK(om(0, 1) == doctest::Approx(std::sin(a * t)).epsilon(1e-10));
    CHECK(om(1, 0) == doctest::Approx(-std::sin(a * t)).epsilon(1e-10));
    CHECK(om(2, 2) == doctest::Approx(1.0));

    // orthogonality drift stays tiny over the walk
    const SquareMatrix gram = matcore::transpose(om) * om - SquareMatrix::identity(4);
    CHECK(matcore::max_abs(gram) < 1e-10);

    // backwards walks land on the inverse rotation
    const SquareMatrix back = ff.omega(-t);
    CHECK(back(0, 1) == doctest::Approx(-std::sin(a * t)).epsilon(1e-10));

    // Q: the k-column of Ω is constant e_k here, so the integral term is x_k e_k
    const ColumnVector x{1.0, 0.5, t, -0.3};
    const ColumnVector q = ff.q_flat(x);
    const double c = std::cos(a * t), s = std::sin(a * t);
    CHECK(q[0] == doctest::Approx(c * x[0] + s * x[1]).epsilon(1e-9));
    CHECK(q[1] == doctest::Approx(-s * x[0] + c * x[1]).epsilon(1e-9));
    CHECK(q[2] == doctest::Approx(t).epsilon(1e-9));
    CHECK(q[3] == doctest::Approx(x[3]).epsilon(1e-9));

    // the metric of the dressed frame stays symmetric and close to flat here
    const SquareMatrix g = ff.metric.eval(x);
    CHECK(matcore::max_asymmetry(g) == 0.0);
    check_d_eval_against_fd(ff.metric, x);
}

TEST_CASE("flat_frame: position-dependent generator derivative path") {
    metrics::FlatFrameSpec spec;
    spec.dim = 4;
    spec.k = 0;
    spec.F_a = [](double t) {
        SquareMatrix f(4);
        f(0, 3) = 0.3 * std::sin(t);
        f(3, 0) = -0.3 * std::sin(t);
        f(1, 2) = 0.1 * t;
        f(2, 1) = -0.1 * t;
        return f;
    };
    auto ff = metrics::flat_frame(spec);
    std::mt19937 rng(1371);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const ColumnVector x{u(rng), u(rng), u(rng), u(rng)};
        check_d_eval_against_fd(ff.metric, x);
    }
}

TEST_CASE("flat_frame: invalid inputs are rejected") {
    metrics::FlatFrameSpec bad;
    bad.dim = 4;
    bad.k = 1;
    bad.F_a = [](double) {
        SquareMatrix f(4);
        f(0, 1) = 1.0;  // missing the mirror entry
        return f;
    };
    CHECK_THROWS_AS((void)metrics::flat_frame(bad), std::invalid_argument);

    metrics::FlatFrameSpec skew;
    skew.dim = 4;
    skew.k = 0;
    skew.F_a = [](double) { return SquareMatrix(4); };
    skew.omega0 = SquareMatrix::diagonal({1.0, 1.0, 1.0, 2.0});
    CHECK_THROWS_AS((void)metrics::flat_frame(skew), std::invalid_argument);

    metrics::FlatFrameSpec range;
    range.dim = 4;
    range.k = 7;
    range.F_a = [](double) { return SquareMatrix(4); };
    CHECK_THROWS_AS((void)metrics::flat_frame(range), std::invalid_argument);
}

TEST_CASE("constants file: loading, validation, conversions") {
    const auto k = metrics::load_constants(std::string(CURVKIT_DATA_DIR) + "/constants.txt");
    CHECK(k.G_g == doctest::Approx(6.67430e-11).epsilon(1e-12));
    CHECK(k.c == 299792458.0);
    CHECK(k.M_sun == doctest::Approx(1.9885e30).epsilon(1e-12));

    // solar mass in length units: G M / c^2 ≈ 1.4767 km
    CHECK(metrics::mass_to_length(k.M_sun, k) ==
          doctest::Approx(1476.692).epsilon(5e-4));
    // one gram ≈ 7.43e-29 cm
    CHECK(metrics::mass_to_length(1e-3, k) * 100.0 ==
          doctest::Approx(7.43e-29).epsilon(5e-3));

    // classical proton radius over the atomic length scale
    const double ratio = metrics::charge_radius(k.q, k.m_p, k) / metrics::bohr_radius(k);
    CHECK(ratio == doctest::Approx(2.90056e-8).epsilon(1e-4));

    // electric-to-gravitational force ratio for two protons
    CHECK(metrics::force_ratio(k) == doctest::Approx(1.235545e36).epsilon(1e-4));

    CHECK_THROWS_AS((void)metrics::load_constants("./no_such_file.txt"),
                    std::runtime_error);

    const char* missing =
        "G_g=6.674e-11\nc=3e8\neps0=8.85e-12\nq=1.6e-19\nm_p=1.67e-27\nm_e=9.1e-31\n"
        "hbar=1.05e-34\n";
    CHECK_THROWS_AS(
        (void)metrics::load_constants(write_temp("tmp_constants_missing.txt", missing)),
        std::runtime_error);

    const char* extra =
        "G_g=6.674e-11\nc=3e8\neps0=8.85e-12\nq=1.6e-19\nm_p=1.67e-27\nm_e=9.1e-31\n"
        "hbar=1.05e-34\nM_sun=2e30\npi=3.14\n";
    CHECK_THROWS_AS(
        (void)metrics::load_constants(write_temp("tmp_constants_extra.txt", extra)),
        std::runtime_error);

    const char* negative =
        "G_g=-6.674e-11\nc=3e8\neps0=8.85e-12\nq=1.6e-19\nm_p=1.67e-27\nm_e=9.1e-31\n"
        "hbar=1.05e-34\nM_sun=2e30\n";
    CHECK_THROWS_AS(
        (void)metrics::load_constants(write_temp("tmp_constants_negative.txt", negative)),
        std::runtime_error);

    const char* dup =
        "G_g=6.674e-11\nG_g=6.674e-11\nc=3e8\neps0=8.85e-12\nq=1.6e-19\nm_p=1.67e-27\n"
        "m_e=9.1e-31\nhbar=1.05e-34\nM_sun=2e30\n";
    CHECK_THROWS_AS((void)metrics::load_constants(write_temp("tmp_constants_dup.txt", dup)),
                    std::runtime_error);

    const char* garbled =
        "G_g 6.674e-11\nc=3e8\neps0=8.85e-12\nq=1.6e-19\nm_p=1.67e-27\nm_e=9.1e-31\n"
        "hbar=1.05e-34\nM_sun=2e30\n";
    CHECK_THROWS_AS(
        (void)metrics::load_constants(write_temp("tmp_constants_garbled.txt", garbled)),
        std::runtime_error);
}
