#include "curvkit/cosmology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cosmology {

namespace {

// five-point first derivative, the house stencil
double fd1(const ScalarFn& fn, double s) {
    const double h = 1e-5 * std::max(1.0, std::fabs(s));
    return (fn(s - 2.0 * h) - 8.0 * fn(s - h) + 8.0 * fn(s + h) - fn(s + 2.0 * h)) /
           (12.0 * h);
}

// five-point second derivative; the wider step keeps the h⁻² roundoff term
// below the truncation error
double fd2(const ScalarFn& fn, double s) {
    const double h = 4e-3 * std::max(1.0, std::fabs(s));
    return (-fn(s - 2.0 * h) + 16.0 * fn(s - h) - 30.0 * fn(s) + 16.0 * fn(s + h) -
            fn(s + 2.0 * h)) /
           (12.0 * h * h);
}

double interval_scalar(const ColumnVector& x) {
    const int n = x.dim();
    double s2 = x[n - 1] * x[n - 1];
    for (int i = 0; i + 1 < n; ++i) s2 -= x[i] * x[i];
    if (s2 <= 0.0) throw std::domain_error("fl: spacelike or null coordinate vector");
    return std::sqrt(s2);
}

void require_bigbang(const CosmoModel& model, double s, const char* who) {
    if (model.kind != ModelKind::bigbang)
        throw std::invalid_argument(std::string(who) + ": model is not a bigbang history");
    if (!(s > 0.0)) throw std::domain_error(std::string(who) + ": s must be positive");
}

}  // namespace

CosmoModel make_uniform(double rho) {
    CosmoModel m;
    m.kind = ModelKind::maximally_uniform;
    m.rho = rho;
    return m;
}

CosmoModel make_bigbang(double s_m, double rho_m, double d) {
    if (!(s_m > 0.0) || !(rho_m > 0.0) || !(d > 0.0))
        throw std::invalid_argument("make_bigbang: s_m, rho_m, d must all be positive");
    CosmoModel m;
    m.kind = ModelKind::bigbang;
    m.s_m = s_m;
    m.rho_m = rho_m;
    m.d = d;
    m.cont_const = d * d * d / std::sqrt(216.0 * rho_m);
    return m;
}

ColumnVector fl_velocity(const ColumnVector& x, const ScalarFn& f) {
    const double s = interval_scalar(x);
    const double fs = f(s);
    if (!(fs > 0.0)) throw std::domain_error("fl_velocity: f(s) must be positive");
    ColumnVector u(x.dim());
    for (int i = 0; i < x.dim(); ++i) u[i] = x[i] / (s * fs);
    return u;
}

FlEigenvalues fl_eigenvalues(const ScalarFn& f, double s, const ScalarFn& df,
                             const ScalarFn& ddf) {
    if (!(s > 0.0)) throw std::domain_error("fl_eigenvalues: s must be positive");
    const double f0 = f(s);
    if (!(f0 > 0.0)) throw std::domain_error("fl_eigenvalues: f(s) must be positive");
    const double fp = df ? df(s) : fd1(f, s);
    // prefer differencing the supplied first derivative over a second
    // difference of f itself
    const double fpp = ddf ? ddf(s) : (df ? fd1(df, s) : fd2(f, s));
    const double denom = s * f0 * f0 * f0 * f0;
    FlEigenvalues mu;
    mu.mu1 = (s * fp * fp + 5.0 * f0 * fp + s * f0 * fpp) / denom;
    mu.mu4 = 3.0 * (-s * fp * fp + f0 * (fp + s * fpp)) / denom;
    return mu;
}

SquareMatrix field_matrix_P(const ScalarFn& f, const ColumnVector& x, const ScalarFn& df) {
    const int n = x.dim();
    const double s = interval_scalar(x);
    const double f0 = f(s);
    if (!(f0 > 0.0)) throw std::domain_error("field_matrix_P: f(s) must be positive");
    const double fp = df ? df(s) : fd1(f, s);
    const double h = (f0 + s * fp) / (s * f0 * f0);

    const SquareMatrix G = SquareMatrix::signature(n);
    SquareMatrix g = G;
    for (int i = 0; i < n; ++i) g(i, i) *= f0 * f0;
    const ColumnVector u = fl_velocity(x, f);
    const ColumnVector gu = g * u;
    SquareMatrix P(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P(i, j) = h * (g(i, j) - gu[i] * gu[j]);
    return P;
}

double continuity_residual(const ScalarFn& f, const ScalarFn& rho, double s) {
    if (!(s > 0.0)) throw std::domain_error("continuity_residual: s must be positive");
    return continuity_residual(
        f, [&](double t) { return fd1(f, t); }, rho,
        [&](double t) { return fd1(rho, t); }, s);
}

double continuity_residual(const ScalarFn& f, const ScalarFn& df, const ScalarFn& rho,
                           const ScalarFn& drho, double s) {
    if (!(s > 0.0)) throw std::domain_error("continuity_residual: s must be positive");
    const double f0 = f(s);
    const double r0 = rho(s);
    return (3.0 * r0 * df(s) + f0 * (3.0 * r0 / s + drho(s))) / (f0 * f0);
}

double bigbang_density(const CosmoModel& model, double s) {
    require_bigbang(model, s, "bigbang_density");
    const double q = std::pow(s / model.s_m, model.d / 3.0);
    const double onePq = 1.0 + q;
    const double p2 = onePq * onePq;
    return model.rho_m * 64.0 * q * q * q / (p2 * p2 * p2);
}

double bigbang_density_derivative(const CosmoModel& model, double s) {
    require_bigbang(model, s, "bigbang_density_derivative");
    const double q = std::pow(s / model.s_m, model.d / 3.0);
    return bigbang_density(model, s) * (model.d / s) * (1.0 - q) / (1.0 + q);
}

double bigbang_f(const CosmoModel& model, double s) {
    require_bigbang(model, s, "bigbang_f");
    const double q = std::pow(s / model.s_m, model.d / 3.0);
    const double onePq = 1.0 + q;
    return model.d * onePq * onePq / (4.0 * s * std::sqrt(6.0 * model.rho_m) * q);
}

double bigbang_f_derivative(const CosmoModel& model, double s) {
    require_bigbang(model, s, "bigbang_f_derivative");
    const double q = std::pow(s / model.s_m, model.d / 3.0);
    return bigbang_f(model, s) / s *
           ((2.0 * model.d / 3.0) * q / (1.0 + q) - 1.0 - model.d / 3.0);
}

std::vector<SpectrumSample> load_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_spectrum_csv: cannot open " + path);
    std::vector<SpectrumSample> out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (!header_seen) {
            if (line != "s,intensity")
                throw std::runtime_error("load_spectrum_csv: unexpected header '" + line +
                                         "'");
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string sv, iv;
        if (!std::getline(ss, sv, ',') || !std::getline(ss, iv))
            throw std::runtime_error("load_spectrum_csv: malformed row '" + line + "'");
        SpectrumSample sample;
        try {
            sample.s = std::stod(sv);
            sample.intensity = std::stod(iv);
        } catch (const std::exception&) {
            throw std::runtime_error("load_spectrum_csv: bad number in row '" + line + "'");
        }
        if (!(sample.s > 0.0) || sample.intensity < 0.0)
            throw std::runtime_error("load_spectrum_csv: out-of-domain row '" + line + "'");
        out.push_back(sample);
    }
    if (!header_seen) throw std::runtime_error("load_spectrum_csv: empty file " + path);
    return out;
}

FitReport spectrum_compare(const std::vector<SpectrumSample>& samples, double d,
                           double normalization) {
    if (samples.size() < 10)
        throw std::invalid_argument("spectrum_compare: need at least 10 samples");
    if (!(d > 0.0)) throw std::invalid_argument("spectrum_compare: d must be positive");
    if (!(normalization > 0.0))
        throw std::invalid_argument("spectrum_compare: normalization must be positive");

    std::vector<double> sv, iv;
    sv.reserve(samples.size());
    iv.reserve(samples.size());
    double imax = 0.0, imin = std::numeric_limits<double>::infinity();
    double s_peak = samples.front().s;
    for (const auto& smp : samples) {
        if (!(smp.s > 0.0))
            throw std::invalid_argument("spectrum_compare: sample abscissa must be positive");
        const double val = smp.intensity * normalization;
        if (val < 0.0)
            throw std::invalid_argument("spectrum_compare: negative intensity");
        sv.push_back(smp.s);
        iv.push_back(val);
        if (val > imax) {
            imax = val;
            s_peak = smp.s;
        }
        imin = std::min(imin, val);
    }
    if (imax == imin)
        throw std::invalid_argument("spectrum_compare: degenerate fit (flat intensities)");

    // best linear scale at a fixed peak location, and the resulting misfit
    const auto misfit = [&](double s_m, double* scale_out) {
        const CosmoModel trial = make_bigbang(s_m, 1.0, d);
        double num = 0.0, den = 0.0;
        std::vector<double> model(sv.size());
        for (size_t i = 0; i < sv.size(); ++i) {
            model[i] = bigbang_density(trial, sv[i]);
            num += iv[i] * model[i];
            den += model[i] * model[i];
        }
        const double scale = (den > 0.0) ? num / den : 0.0;
        if (scale_out) *scale_out = scale;
        double ss = 0.0;
        for (size_t i = 0; i < sv.size(); ++i) {
            const double r = iv[i] - scale * model[i];
            ss += r * r;
        }
        return ss;
    };

    // golden-section over log s_m across the sampled range
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(*std::min_element(sv.begin(), sv.end()));
    double hi = std::log(*std::max_element(sv.begin(), sv.end()));
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double f1 = misfit(std::exp(x1), nullptr);
    double f2 = misfit(std::exp(x2), nullptr);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = misfit(std::exp(x1), nullptr);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = misfit(std::exp(x2), nullptr);
        }
    }
    const double s_m_fit = std::exp(0.5 * (lo + hi));

    FitReport report;
    report.d = d;
    report.s_m = s_m_fit;
    const double ss = misfit(s_m_fit, &report.rho_scale);
    report.rms_residual = std::sqrt(ss / static_cast<double>(sv.size())) / imax;
    report.peak_offset = std::fabs(s_m_fit - s_peak) / s_peak;
    return report;
}

}  // namespace cosmology
