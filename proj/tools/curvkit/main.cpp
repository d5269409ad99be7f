// curvkit — command-line surface over the matrix-calculus toolkit.
//
// Subcommands: curvature, verify, identities, orbit, planets, radial,
// cosmo, flatdemo.  Exit codes: 0 ok, 1 check failed, 2 usage/domain error.
// Every error path emits a single line "ERROR:<code>:<message>" on stderr.
// Output is byte-identical for identical invocations: fixed grids, and any
// randomized sampling is driven by an explicit --seed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvkit/cosmology.hpp"
#include "curvkit/dynamics.hpp"
#include "curvkit/geometry.hpp"
#include "curvkit/matcore.hpp"
#include "curvkit/metrics.hpp"

using matcore::ColumnVector;
using matcore::SquareMatrix;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------- plumbing

std::string one_line(std::string msg) {
    for (char& c : msg)
        if (c == '\n' || c == '\r') c = ' ';
    return msg;
}

int fail(int code, const std::string& msg) {
    std::fprintf(stderr, "ERROR:%d:%s\n", code, one_line(msg).c_str());
    return code;
}

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// output sink: "-" (default) is stdout, anything else a file path
struct Sink {
    std::ofstream file;
    std::ostream* out = &std::cout;
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            out = &file;
        }
    }
    std::ostream& os() { return *out; }
};

ColumnVector parse_point(const std::string& text, int dim) {
    std::vector<double> vals;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coordinate '" + tok + "' in --point");
        }
        if (used != tok.size())
            throw std::invalid_argument("bad coordinate '" + tok + "' in --point");
        vals.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(vals.size()) != dim)
        throw std::invalid_argument("--point needs exactly " + std::to_string(dim) +
                                    " comma-separated values");
    ColumnVector x(dim);
    for (int i = 0; i < dim; ++i) x[i] = vals[static_cast<size_t>(i)];
    return x;
}

// ------------------------------------------------------------ metric menu

struct MetricRequest {
    std::string name = "schwarzschild";
    double rM = 1.0;
    double c5 = 0.0, c6 = 0.0, c7 = 0.0, c8 = 1.0;
    double rho = 1.0;                      // fl-first
    double sm = 1.0, rhom = 1.0, d = 5.4;  // fl-bigbang
};

enum class Chart { spherical, rectilinear, conformal };

// a metric plus everything the sampling/verification code needs to know
struct BuiltMetric {
    geometry::MetricField field;
    Chart chart = Chart::spherical;
    bool uniform_rho = false;  // R = rho·g with a constant rho
    double expected_rho = 0.0;
    double lo = 0.0, hi = 0.0;  // regular radius band (or interval band)
};

BuiltMetric build_metric(const MetricRequest& q) {
    BuiltMetric bm;
    if (q.name == "minkowski") {
        bm.field.name = "minkowski";
        bm.field.dim = 4;
        bm.field.eval = [](const ColumnVector&) { return SquareMatrix::signature(4); };
        bm.field.d_eval = [](const ColumnVector&, int) { return SquareMatrix(4); };
        bm.field.coordinate_chart = "rectilinear";
        bm.chart = Chart::rectilinear;
        bm.uniform_rho = true;
        bm.lo = 0.5;
        bm.hi = 5.0;
    } else if (q.name == "schwarzschild") {
        bm.field = metrics::schwarzschild(q.rM);
        bm.chart = Chart::spherical;
        bm.uniform_rho = true;
        bm.lo = std::max(3.0 * q.rM, 0.5);
        bm.hi = 10.0 * bm.lo;
    } else if (q.name == "weak") {
        bm.field = metrics::weak_spherical(q.rM, q.c7, q.c8);
        bm.chart = Chart::spherical;
        bm.uniform_rho = true;
        bm.expected_rho = 3.0 * q.c7;
        bm.lo = std::max(3.0 * q.rM, 0.5);
        bm.hi = 10.0 * bm.lo;
        if (q.c7 > 0.0) bm.hi = std::min(bm.hi, 0.5 / std::sqrt(q.c7));
    } else if (q.name == "general-spherical" || q.name == "rectilinear") {
        metrics::SphericalSolutionParams p{q.c5, q.c6, q.c7, q.c8};
        bm.field = q.name == "rectilinear" ? metrics::rectilinear_spherical(p)
                                           : metrics::general_spherical(p);
        bm.chart = q.name == "rectilinear" ? Chart::rectilinear : Chart::spherical;
        bm.uniform_rho = true;
        bm.expected_rho = 3.0 * q.c7;
        bm.lo = std::max({2.0 * q.c5, q.c6, 0.5});
        bm.hi = 10.0 * bm.lo;
        if (q.c7 > 0.0) bm.hi = std::min(bm.hi, 0.5 / std::sqrt(q.c7));
    } else if (q.name == "fl-first") {
        bm.field = metrics::fl_first_solution(q.rho);
        bm.chart = Chart::conformal;
        bm.uniform_rho = true;
        bm.expected_rho = q.rho;
        if (q.rho > 0.0) {
            const double pole = std::sqrt(12.0 / q.rho);
            bm.lo = 0.15 * pole;
            bm.hi = 0.60 * pole;
        } else {
            bm.lo = 0.5;
            bm.hi = 3.0;
        }
    } else if (q.name == "fl-bigbang") {
        const auto model = cosmology::make_bigbang(q.sm, q.rhom, q.d);
        bm.field = metrics::friedmann_lobachevsky(
            [model](double s) { return cosmology::bigbang_f(model, s); },
            [model](double s) { return cosmology::bigbang_f_derivative(model, s); });
        bm.chart = Chart::conformal;
        bm.uniform_rho = false;  // two distinct curvature eigenvalues
        bm.lo = q.sm / 10.0;
        bm.hi = 10.0 * q.sm;
    } else {
        throw std::invalid_argument(
            "unknown metric '" + q.name +
            "' (expected minkowski|schwarzschild|weak|general-spherical|rectilinear|"
            "fl-first|fl-bigbang)");
    }
    if (bm.hi <= bm.lo)
        throw std::invalid_argument("metric parameters leave no regular band to sample");
    return bm;
}

// seeded sampling of regular points appropriate to the chart
std::vector<ColumnVector> sample_points(const BuiltMetric& bm, int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    std::vector<ColumnVector> points;
    int attempts = 0;
    while (static_cast<int>(points.size()) < n) {
        if (++attempts > 200 * n)
            throw std::domain_error("could not sample regular points for " + bm.field.name);
        ColumnVector x(4);
        if (bm.chart == Chart::spherical) {
            x[0] = uni(0.35, kPi - 0.35);
            x[1] = uni(0.0, 2.0 * kPi);
            x[2] = std::exp(uni(std::log(bm.lo), std::log(bm.hi)));
            x[3] = uni(0.0, 10.0);
        } else if (bm.chart == Chart::rectilinear) {
            const double r = std::exp(uni(std::log(bm.lo), std::log(bm.hi)));
            const double z = uni(-1.0, 1.0);
            const double ph = uni(0.0, 2.0 * kPi);
            const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
            x[0] = r * rxy * std::cos(ph);
            x[1] = r * rxy * std::sin(ph);
            x[2] = r * z;
            x[3] = uni(0.0, 10.0);
        } else {  // conformal: fix the interval s, then pick a boost fraction
            const double s = std::exp(uni(std::log(bm.lo), std::log(bm.hi)));
            const double beta = uni(0.0, 0.45);
            const double z = uni(-1.0, 1.0);
            const double ph = uni(0.0, 2.0 * kPi);
            const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
            x[0] = s * beta * rxy * std::cos(ph);
            x[1] = s * beta * rxy * std::sin(ph);
            x[2] = s * beta * z;
            x[3] = std::sqrt(s * s + s * s * beta * beta);
        }
        if (bm.field.singular_locus && bm.field.singular_locus(x)) continue;
        points.push_back(x);
    }
    return points;
}

// ----------------------------------------------------------- csv helpers

void emit_matrix_csv(std::ostream& os, const std::string& object, int a, int b,
                     const SquareMatrix& m) {
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
            os << object << ',' << a << ',' << b << ',' << (i + 1) << ',' << (j + 1)
               << ',' << fmt(m(i, j)) << '\n';
}

json matrix_json(const SquareMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

// ------------------------------------------------------------- curvature

struct CurvatureArgs {
    MetricRequest metric;
    std::string point;
    std::string format = "csv";
    std::string output = "-";
};

int cmd_curvature(const CurvatureArgs& args) {
    const BuiltMetric bm = build_metric(args.metric);
    const ColumnVector x = parse_point(args.point, bm.field.dim);
    if (bm.field.singular_locus && bm.field.singular_locus(x))
        throw std::domain_error("point lies on the singular locus of " + bm.field.name);

    const geometry::CurvatureBundle bundle = geometry::ricci(bm.field, x);
    const int n = bm.field.dim;
    Sink sink(args.output);
    std::ostream& os = sink.os();

    if (args.format == "json") {
        os << json{{"object", "g"}, {"entries", matrix_json(bundle.g)}}.dump() << '\n';
        for (int c = 0; c < n; ++c)
            os << json{{"object", "gamma"},
                       {"index", c + 1},
                       {"entries", matrix_json(bundle.chris.first_kind[c])}}
                      .dump()
               << '\n';
        for (int m = 0; m < n; ++m)
            os << json{{"object", "sigma"},
                       {"index", m + 1},
                       {"entries", matrix_json(bundle.chris.second_kind[m])}}
                      .dump()
               << '\n';
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                os << json{{"object", "sigma2"},
                           {"a", a + 1},
                           {"b", b + 1},
                           {"entries", matrix_json(bundle.sigma_ab[a][b])}}
                          .dump()
                   << '\n';
        os << json{{"object", "ricci"}, {"entries", matrix_json(bundle.ricci)}}.dump()
           << '\n';
        os << json{{"object", "scalar"}, {"value", bundle.scalar}}.dump() << '\n';
        os << json{{"object", "eigen"},
                   {"values", bundle.eigen.values},
                   {"residual", bundle.eigen.residual}}
                  .dump()
           << '\n';
        return 0;
    }

    os << "# curvkit curvature metric=" << bm.field.name << " point=" << args.point
       << '\n';
    os << "object,a,b,i,j,value\n";
    emit_matrix_csv(os, "g", 0, 0, bundle.g);
    for (int c = 0; c < n; ++c)
        emit_matrix_csv(os, "gamma", c + 1, 0, bundle.chris.first_kind[c]);
    for (int m = 0; m < n; ++m)
        emit_matrix_csv(os, "sigma", m + 1, 0, bundle.chris.second_kind[m]);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            emit_matrix_csv(os, "sigma2", a + 1, b + 1, bundle.sigma_ab[a][b]);
    emit_matrix_csv(os, "ricci", 0, 0, bundle.ricci);
    os << "scalar,0,0,0,0," << fmt(bundle.scalar) << '\n';
    for (size_t k = 0; k < bundle.eigen.values.size(); ++k)
        os << "eigen,0,0," << (k + 1) << ",0," << fmt(bundle.eigen.values[k]) << '\n';
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    MetricRequest metric;
    int grid = 10;
    unsigned seed = 4025;
    double tol = 1e-6;
    std::string format = "csv";
    std::string output = "-";
};

int cmd_verify(const VerifyArgs& args) {
    const BuiltMetric bm = build_metric(args.metric);
    if (!bm.uniform_rho)
        throw std::invalid_argument("metric '" + bm.field.name +
                                    "' has no uniform field-equation density to verify");
    const auto points = sample_points(bm, args.grid, args.seed);

    double max_residual = 0.0, rho_sum = 0.0;
    std::vector<geometry::FieldEqReport> reports;
    for (const auto& x : points) {
        reports.push_back(geometry::verify_field_equation(bm.field, x));
        max_residual = std::max(max_residual, reports.back().max_residual);
        rho_sum += reports.back().rho;
    }
    const double rho_mean = rho_sum / static_cast<double>(points.size());
    const bool residual_ok = max_residual < args.tol;
    const bool rho_ok =
        std::fabs(rho_mean - bm.expected_rho) <= 1e-6 * (1.0 + std::fabs(bm.expected_rho));
    const bool pass = residual_ok && rho_ok;

    Sink sink(args.output);
    std::ostream& os = sink.os();
    if (args.format == "json") {
        for (size_t i = 0; i < points.size(); ++i)
            os << json{{"object", "point"},
                       {"index", i + 1},
                       {"x", points[i].e},
                       {"rho", reports[i].rho},
                       {"residual", reports[i].max_residual}}
                      .dump()
               << '\n';
        os << json{{"object", "summary"},
                   {"pass", pass},
                   {"rho", rho_mean},
                   {"expected_rho", bm.expected_rho},
                   {"max_residual", max_residual},
                   {"tol", args.tol}}
                  .dump()
           << '\n';
    } else {
        os << "# curvkit verify metric=" << bm.field.name << " grid=" << args.grid
           << " seed=" << args.seed << " tol=" << fmt(args.tol) << '\n';
        os << "index,x1,x2,x3,x4,rho,residual\n";
        for (size_t i = 0; i < points.size(); ++i) {
            os << (i + 1);
            for (int c = 0; c < 4; ++c) os << ',' << fmt(points[i][c]);
            os << ',' << fmt(reports[i].rho) << ',' << fmt(reports[i].max_residual)
               << '\n';
        }
        os << "# result: " << (pass ? "pass" : "fail") << " rho=" << fmt(rho_mean)
           << " expected=" << fmt(bm.expected_rho)
           << " max_residual=" << fmt(max_residual) << '\n';
    }
    if (!pass)
        return fail(1, "field-equation verification failed: max_residual=" +
                           fmt(max_residual) + " rho=" + fmt(rho_mean) +
                           " expected=" + fmt(bm.expected_rho));
    return 0;
}

// ------------------------------------------------------------ identities

struct IdentitiesArgs {
    MetricRequest metric;
    int points = 10;
    unsigned seed = 20260816;
    double tol = 1e-7;
    std::string format = "csv";
    std::string output = "-";
};

int cmd_identities(const IdentitiesArgs& args) {
    const BuiltMetric bm = build_metric(args.metric);
    const auto points = sample_points(bm, args.points, args.seed);

    // aggregate per-property worst violations over the sampled points
    std::vector<geometry::IdentityCheck> agg;
    for (const auto& x : points) {
        const auto report = geometry::identity_suite(bm.field, x, args.tol);
        if (agg.empty()) agg = report.checks;
        for (size_t k = 0; k < report.checks.size(); ++k) {
            if (report.checks[k].max_violation > agg[k].max_violation)
                agg[k].max_violation = report.checks[k].max_violation;
            agg[k].pass = agg[k].pass && report.checks[k].pass;
        }
    }

    bool all_pass = true;
    for (const auto& c : agg) all_pass = all_pass && c.pass;

    Sink sink(args.output);
    std::ostream& os = sink.os();
    if (args.format == "json") {
        for (const auto& c : agg)
            os << json{{"name", c.name},
                       {"max_violation", c.max_violation},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}}
                      .dump()
               << '\n';
    } else {
        os << "# curvkit identities metric=" << bm.field.name << " points=" << args.points
           << " seed=" << args.seed << '\n';
        os << "name,max_violation,tolerance,pass\n";
        for (const auto& c : agg)
            os << c.name << ',' << fmt(c.max_violation) << ',' << fmt(c.tolerance) << ','
               << (c.pass ? "true" : "false") << '\n';
        os << "# result: " << (all_pass ? "pass" : "fail") << '\n';
    }
    if (!all_pass) return fail(1, "identity suite failed for " + bm.field.name);
    return 0;
}

// ----------------------------------------------------------------- orbit

struct OrbitArgs {
    double p = 0.0, a = 0.0, rM = 0.0;
    double revs = 1.0;
    int max_samples = 2000;
    std::string output = "-";
};

int cmd_orbit(const OrbitArgs& args) {
    const dynamics::OrbitSpec spec{args.p, args.a, args.rM};
    const auto field = metrics::weak_spherical(args.rM, 0.0, 1.0);

    dynamics::GeodesicState start;
    start.x = ColumnVector{kPi / 2.0, 0.0, args.p, 0.0};
    start.u = dynamics::orbit_velocity_weak(spec, args.p);

    const double period =
        2.0 * kPi * std::sqrt(std::pow(0.5 * (args.a + args.p), 3) / args.rM);
    const auto traj =
        dynamics::integrate_geodesic(field, start, args.revs * period, 1e-10, 1e-12);

    Sink sink(args.output);
    std::ostream& os = sink.os();
    os << "# curvkit orbit p=" << fmt(args.p) << " a=" << fmt(args.a)
       << " rM=" << fmt(args.rM) << " revs=" << fmt(args.revs) << '\n';
    os << "# precession_closed_arcsec_per_rev="
       << fmt(dynamics::to_arcsec(dynamics::precession(spec))) << '\n';
    os << "tau,x1,x2,x3,x4,u1,u2,u3,u4\n";
    const size_t n = traj.samples.size();
    const size_t stride =
        std::max<size_t>(1, (n + static_cast<size_t>(args.max_samples) - 1) /
                                static_cast<size_t>(args.max_samples));
    for (size_t i = 0; i < n; i += stride) {
        const auto& s = traj.samples[i];
        os << fmt(s.tau);
        for (int c = 0; c < 4; ++c) os << ',' << fmt(s.x[c]);
        for (int c = 0; c < 4; ++c) os << ',' << fmt(s.u[c]);
        os << '\n';
    }
    if (stride > 1 && (n - 1) % stride != 0) {  // keep the final state
        const auto& s = traj.samples.back();
        os << fmt(s.tau);
        for (int c = 0; c < 4; ++c) os << ',' << fmt(s.x[c]);
        for (int c = 0; c < 4; ++c) os << ',' << fmt(s.u[c]);
        os << '\n';
    }
    if (traj.status != dynamics::IntegrationStatus::completed)
        return fail(1, "orbit integration truncated: " + traj.reason);
    return 0;
}

// --------------------------------------------------------------- planets

struct PlanetsArgs {
    std::string planets_path = "data/planets.csv";
    std::string constants_path = "data/constants.txt";
    std::string format = "csv";
    std::string output = "-";
};

int cmd_planets(const PlanetsArgs& args) {
    const auto records = dynamics::load_planets_csv(args.planets_path);
    const auto consts = metrics::load_constants(args.constants_path);
    const auto rows = dynamics::planet_table(records, consts);

    Sink sink(args.output);
    std::ostream& os = sink.os();
    if (args.format == "json") {
        for (const auto& r : rows)
            os << json{{"name", r.name},
                       {"per_rev_arcsec", r.dphi_per_rev_arcsec},
                       {"per_century_arcsec", r.dphi_per_century_arcsec},
                       {"v_min_km_s", r.v_min_km_s},
                       {"v_max_km_s", r.v_max_km_s},
                       {"status", r.error.empty() ? "ok" : r.error}}
                      .dump()
               << '\n';
        return 0;
    }
    os << "# curvkit planets source=" << args.planets_path << '\n';
    os << "name,per_rev_arcsec,per_century_arcsec,v_min_km_s,v_max_km_s,status\n";
    for (const auto& r : rows) {
        std::string status = r.error.empty() ? "ok" : one_line(r.error);
        std::replace(status.begin(), status.end(), ',', ';');
        os << r.name << ',' << fmt(r.dphi_per_rev_arcsec, "%.10g") << ','
           << fmt(r.dphi_per_century_arcsec, "%.10g") << ','
           << fmt(r.v_min_km_s, "%.10g") << ',' << fmt(r.v_max_km_s, "%.10g") << ','
           << status << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- radial

struct RadialArgs {
    std::string geometry = "both";  // closed | paper | both
    double rM = 1.0;
    double c4 = 1.0;
    double y30 = 0.0;  // 0 = from rest at infinity
    double beta30 = 0.0;
    int grid = 200;
    std::string output = "-";
};

int cmd_radial(const RadialArgs& args) {
    if (args.geometry != "closed" && args.geometry != "paper" && args.geometry != "both")
        throw std::invalid_argument("--geometry must be closed|paper|both");
    if (args.rM <= 0.0) throw std::invalid_argument("--rM must be positive");
    if (args.grid < 2) throw std::invalid_argument("--grid must be at least 2");
    const bool closed = args.geometry != "paper";
    const bool paper = args.geometry != "closed";
    const double y30 = args.y30 > 0.0 ? args.y30 : 1e18 * args.rM;

    Sink sink(args.output);
    std::ostream& os = sink.os();
    os << "# curvkit radial geometry=" << args.geometry << " rM=" << fmt(args.rM)
       << " c4=" << fmt(args.c4) << " y30=" << fmt(y30) << " beta30=" << fmt(args.beta30)
       << '\n';
    if (closed) {
        const auto ext = dynamics::radial_extremum(args.c4, args.rM);
        os << "# closed_extremum y3m=" << fmt(ext.y3m) << " beta3m=" << fmt(ext.beta3m)
           << '\n';
    }
    os << "y3";
    if (closed) os << ",beta3_closed";
    if (paper) os << ",beta3_paper";
    os << '\n';

    const double lo = 2.0 * args.rM * (1.0 + 2e-6);
    const double hi = 1e3 * args.rM;
    for (int i = 0; i < args.grid; ++i) {
        const double y3 =
            lo * std::pow(hi / lo, i / static_cast<double>(args.grid - 1));
        os << fmt(y3);
        if (closed)
            os << ',' << fmt(dynamics::radial_velocity_schwarzschild(y3, args.c4, args.rM));
        if (paper)
            os << ','
               << fmt(dynamics::radial_velocity_paper(y3, y30, args.beta30, args.rM));
        os << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------- cosmo

struct CosmoArgs {
    bool bigbang = false;
    bool fit = false;
    double d = 5.4, sm = 1.0, rhom = 1.0;
    int grid = 100;
    std::string spectrum_path;
    double normalization = 1.0;
    std::string format;  // default depends on the mode
    std::string output = "-";
};

int cmd_cosmo(const CosmoArgs& args) {
    if (args.bigbang == args.fit)
        throw std::invalid_argument("cosmo: pass exactly one of --bigbang / --fit");

    Sink sink(args.output);
    std::ostream& os = sink.os();

    if (args.bigbang) {
        const std::string format = args.format.empty() ? "csv" : args.format;
        if (args.grid < 2) throw std::invalid_argument("--grid must be at least 2");
        const auto model = cosmology::make_bigbang(args.sm, args.rhom, args.d);

        // standard log grid over [sm/50, 50·sm], with the peak scale inserted
        // so the emitted curve contains the exact maximum
        std::vector<double> grid;
        for (int i = 0; i < args.grid; ++i)
            grid.push_back((args.sm / 50.0) *
                           std::pow(2500.0, i / static_cast<double>(args.grid - 1)));
        const bool has_peak =
            std::any_of(grid.begin(), grid.end(),
                        [&](double s) { return std::fabs(s - args.sm) < 1e-12 * args.sm; });
        if (!has_peak) {
            grid.push_back(args.sm);
            std::sort(grid.begin(), grid.end());
        }

        if (format == "json") {
            for (double s : grid)
                os << json{{"s", s},
                           {"rho", cosmology::bigbang_density(model, s)},
                           {"f", cosmology::bigbang_f(model, s)}}
                          .dump()
                   << '\n';
        } else {
            os << "# curvkit cosmo bigbang d=" << fmt(args.d) << " sm=" << fmt(args.sm)
               << " rhom=" << fmt(args.rhom) << " grid=" << args.grid << '\n';
            os << "s,rho,f\n";
            for (double s : grid)
                os << fmt(s) << ',' << fmt(cosmology::bigbang_density(model, s)) << ','
                   << fmt(cosmology::bigbang_f(model, s)) << '\n';
        }
        return 0;
    }

    // fit mode
    const std::string format = args.format.empty() ? "json" : args.format;
    if (args.spectrum_path.empty())
        throw std::invalid_argument("cosmo --fit needs --spectrum <csv>");
    const auto samples = cosmology::load_spectrum_csv(args.spectrum_path);
    const auto report = cosmology::spectrum_compare(samples, args.d, args.normalization);
    if (format == "csv") {
        os << "d,s_m,rho_scale,rms_residual,peak_offset\n";
        os << fmt(report.d) << ',' << fmt(report.s_m) << ',' << fmt(report.rho_scale)
           << ',' << fmt(report.rms_residual) << ',' << fmt(report.peak_offset) << '\n';
    } else {
        os << json{{"d", report.d},
                   {"s_m", report.s_m},
                   {"rho_scale", report.rho_scale},
                   {"rms_residual", report.rms_residual},
                   {"peak_offset", report.peak_offset}}
                  .dump()
           << '\n';
    }
    return 0;
}

// -------------------------------------------------------------- flatdemo

struct FlatdemoArgs {
    int count = 5;
    int grid = 10;
    unsigned seed = 1;
    double tol_curvature = 1e-8;
    double tol_ortho = 1e-10;
    std::string output = "-";
};

int cmd_flatdemo(const FlatdemoArgs& args) {
    std::mt19937 rng(args.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    Sink sink(args.output);
    std::ostream& os = sink.os();
    os << "# curvkit flatdemo count=" << args.count << " grid=" << args.grid
       << " seed=" << args.seed << '\n';
    os << "spec,point,x1,x2,x3,x4,max_sigma_ab,ortho_drift\n";

    bool all_pass = true;
    for (int spec_idx = 0; spec_idx < args.count; ++spec_idx) {
        // random antisymmetric forcing: each upper-triangle entry is a sine
        struct Term {
            double amp, freq, phase;
        };
        std::vector<Term> terms;
        for (int e = 0; e < 6; ++e)
            terms.push_back({uni(-0.5, 0.5), uni(0.5, 2.0), uni(0.0, 2.0 * kPi)});

        metrics::FlatFrameSpec spec;
        spec.dim = 4;
        spec.k = 0;
        spec.F_a = [terms](double t) {
            SquareMatrix F(4);
            int e = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j, ++e) {
                    const double v =
                        terms[static_cast<size_t>(e)].amp *
                        std::sin(terms[static_cast<size_t>(e)].freq * t +
                                 terms[static_cast<size_t>(e)].phase);
                    F(i, j) = v;
                    F(j, i) = -v;
                }
            return F;
        };
        const auto construction = metrics::flat_frame(spec);

        for (int pt = 0; pt < args.grid; ++pt) {
            ColumnVector x(4);
            for (int c = 0; c < 4; ++c) x[c] = uni(-0.8, 0.8);
            const auto bundle = geometry::riemann(construction.metric, x);
            double max_sigma = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    max_sigma = std::max(max_sigma, matcore::max_abs(bundle.sigma_ab[a][b]));
            const SquareMatrix omega = construction.omega(x[spec.k]);
            const double drift = matcore::max_abs(matcore::transpose(omega) * omega -
                                                  SquareMatrix::identity(4));
            all_pass = all_pass && max_sigma < args.tol_curvature && drift < args.tol_ortho;
            os << spec_idx << ',' << pt;
            for (int c = 0; c < 4; ++c) os << ',' << fmt(x[c]);
            os << ',' << fmt(max_sigma) << ',' << fmt(drift) << '\n';
        }
    }
    os << "# result: " << (all_pass ? "pass" : "fail") << '\n';
    if (!all_pass) return fail(1, "flat construction produced curvature above tolerance");
    return 0;
}

// ------------------------------------------------------------- dispatch

void add_metric_options(CLI::App* sub, MetricRequest& q) {
    sub->add_option("--metric", q.name,
                    "minkowski|schwarzschild|weak|general-spherical|rectilinear|"
                    "fl-first|fl-bigbang")
        ->required();
    sub->add_option("--rM", q.rM, "central-mass length (schwarzschild, weak)");
    sub->add_option("--c5", q.c5, "moving-mass length scale");
    sub->add_option("--c6", q.c6, "3·rM of the concentrated mass");
    sub->add_option("--c7", q.c7, "density term rho/3");
    sub->add_option("--c8", q.c8, "time branch, ±1");
    sub->add_option("--rho", q.rho, "fl-first density");
    sub->add_option("--sm", q.sm, "fl-bigbang peak scale");
    sub->add_option("--rhom", q.rhom, "fl-bigbang peak density");
    sub->add_option("--d", q.d, "fl-bigbang exponent");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvkit: numerical toolkit for matrix-form curved-space models"};
    app.require_subcommand(1);

    CurvatureArgs curvature;
    auto* curv = app.add_subcommand("curvature",
                                    "Christoffel/curvature matrices and eigenvalues "
                                    "at a point");
    add_metric_options(curv, curvature.metric);
    curv->add_option("--point", curvature.point, "x1,x2,x3,x4 (angles in radians)")
        ->required();
    curv->add_option("--format", curvature.format, "csv|json");
    curv->add_option("--output", curvature.output, "file path or - for stdout");

    VerifyArgs verify;
    auto* ver = app.add_subcommand("verify",
                                   "check R = rho·g at sampled regular points");
    add_metric_options(ver, verify.metric);
    ver->add_option("--grid", verify.grid, "number of sampled points");
    ver->add_option("--seed", verify.seed, "sampling seed");
    ver->add_option("--tol", verify.tol, "residual tolerance");
    ver->add_option("--format", verify.format, "csv|json");
    ver->add_option("--output", verify.output, "file path or - for stdout");

    IdentitiesArgs identities;
    auto* ident = app.add_subcommand("identities",
                                     "curvature identity suite at sampled points");
    add_metric_options(ident, identities.metric);
    ident->add_option("--points", identities.points, "number of sampled points");
    ident->add_option("--seed", identities.seed, "sampling seed");
    ident->add_option("--tol", identities.tol, "violation tolerance");
    ident->add_option("--format", identities.format, "csv|json");
    ident->add_option("--output", identities.output, "file path or - for stdout");

    OrbitArgs orbit;
    auto* orb = app.add_subcommand("orbit", "integrate a bound equatorial orbit");
    orb->add_option("--p", orbit.p, "perihelion radius")->required();
    orb->add_option("--a", orbit.a, "aphelion radius")->required();
    orb->add_option("--rM", orbit.rM, "central-mass length")->required();
    orb->add_option("--revs", orbit.revs, "revolutions to integrate");
    orb->add_option("--max-samples", orbit.max_samples, "output row cap");
    orb->add_option("--output", orbit.output, "file path or - for stdout");

    PlanetsArgs planets;
    auto* plan = app.add_subcommand("planets",
                                    "per-planet precession and velocity table");
    plan->add_option("--planets", planets.planets_path, "planets csv path");
    plan->add_option("--constants", planets.constants_path, "constants file path");
    plan->add_option("--format", planets.format, "csv|json");
    plan->add_option("--output", planets.output, "file path or - for stdout");

    RadialArgs radial;
    auto* rad = app.add_subcommand("radial", "radial infall speed profiles");
    rad->add_option("--geometry", radial.geometry, "closed|paper|both");
    rad->add_option("--rM", radial.rM, "central-mass length");
    rad->add_option("--c4", radial.c4, "energy constant of the closed form");
    rad->add_option("--y30", radial.y30, "launch radius (0 = rest at infinity)");
    rad->add_option("--beta30", radial.beta30, "launch speed");
    rad->add_flag("--from-rest-at-infinity",
                  [&radial](std::int64_t) {
                      radial.y30 = 0.0;
                      radial.beta30 = 0.0;
                  },
                  "launch from rest at infinity (the default)");
    rad->add_option("--grid", radial.grid, "profile points");
    rad->add_option("--output", radial.output, "file path or - for stdout");

    CosmoArgs cosmo;
    auto* cos = app.add_subcommand("cosmo", "density curves and spectrum fits");
    cos->add_flag("--bigbang", cosmo.bigbang, "emit the peaked density curve");
    cos->add_flag("--fit", cosmo.fit, "fit a spectrum csv");
    cos->add_option("--d", cosmo.d, "density exponent");
    cos->add_option("--sm", cosmo.sm, "peak scale");
    cos->add_option("--rhom", cosmo.rhom, "peak density");
    cos->add_option("--grid", cosmo.grid, "curve points");
    cos->add_option("--spectrum", cosmo.spectrum_path, "spectrum csv (s,intensity)");
    cos->add_option("--normalization", cosmo.normalization, "intensity prefactor");
    cos->add_option("--format", cosmo.format, "csv|json");
    cos->add_option("--output", cosmo.output, "file path or - for stdout");

    FlatdemoArgs flatdemo;
    auto* flat = app.add_subcommand("flatdemo",
                                    "curvature-norm grid for random flat constructions");
    flat->add_option("--count", flatdemo.count, "number of random constructions");
    flat->add_option("--grid", flatdemo.grid, "points per construction");
    flat->add_option("--seed", flatdemo.seed, "construction/sampling seed");
    flat->add_option("--tol-curvature", flatdemo.tol_curvature, "curvature tolerance");
    flat->add_option("--tol-ortho", flatdemo.tol_ortho, "orthogonality tolerance");
    flat->add_option("--output", flatdemo.output, "file path or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail(2, std::string("usage: ") + e.what());
    }

    try {
        if (curv->parsed()) return cmd_curvature(curvature);
        if (ver->parsed()) return cmd_verify(verify);
        if (ident->parsed()) return cmd_identities(identities);
        if (orb->parsed()) return cmd_orbit(orbit);
        if (plan->parsed()) return cmd_planets(planets);
        if (rad->parsed()) return cmd_radial(radial);
        if (cos->parsed()) return cmd_cosmo(cosmo);
        if (flat->parsed()) return cmd_flatdemo(flatdemo);
    } catch (const std::domain_error& e) {
        return fail(2, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, e.what());
    } catch (const std::exception& e) {
        return fail(2, e.what());
    }
    return fail(2, "no command given");
}
