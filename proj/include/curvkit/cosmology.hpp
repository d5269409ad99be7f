#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curvkit/matcore.hpp"

// Conformally flat cosmology: the comoving velocity field, the closed-form
// eigenvalue pair of g⁻¹R, the field matrix, the continuity equation, the
// peaked early-universe density family, and a least-squares comparison of
// that family against an ingested spectrum file.
namespace cosmology {

using matcore::ColumnVector;
using matcore::SquareMatrix;
using ScalarFn = std::function<double(double)>;

enum class ModelKind { maximally_uniform, bigbang };

// one cosmological history; either the constant-density maximally uniform
// space with f(s) = 1/(1 − ρs²/12), or the peaked density family below
struct CosmoModel {
    ModelKind kind = ModelKind::maximally_uniform;
    double rho = 0.0;    // maximally_uniform: the constant density
    double s_m = 0.0;    // bigbang: peak location
    double rho_m = 0.0;  // bigbang: peak density
    double d = 0.0;      // bigbang: shape exponent
    // continuity constant of the density law ρ = cont_const/(s·f)³;
    // tied to the peak by rho_m = d⁶/(216·cont_const²)
    double cont_const = 0.0;
};

CosmoModel make_uniform(double rho);
CosmoModel make_bigbang(double s_m, double rho_m, double d);

// comoving velocity u(x) = x/(s·f(s)) with s = sqrt(x̃Gx); unit norm in the
// metric g = f²G by construction
ColumnVector fl_velocity(const ColumnVector& x, const ScalarFn& f);

// eigenvalues of g⁻¹R for g = f²(s)G — a triple and a single:
//   mu1 = (s·f′² + 5f·f′ + s·f·f″)/(s·f⁴)     (multiplicity 3)
//   mu4 = 3(−s·f′² + f(f′ + s·f″))/(s·f⁴)
// df/ddf may be omitted; missing derivatives use five-point differences
struct FlEigenvalues {
    double mu1 = 0.0;
    double mu4 = 0.0;
};
FlEigenvalues fl_eigenvalues(const ScalarFn& f, double s, const ScalarFn& df = nullptr,
                             const ScalarFn& ddf = nullptr);

// covariant field matrix P̲ = h(g − g·u·ũ·g), h = (f + s·f′)/(s·f²);
// annihilates u and has ⟨g⁻¹P̲⟩ = 3h
SquareMatrix field_matrix_P(const ScalarFn& f, const ColumnVector& x,
                            const ScalarFn& df = nullptr);

// left side of the continuity equation, (3ρf′ + f(3ρ/s + ρ′))/f²; vanishes
// exactly on the solution family ρ(s) = cont_const/(s·f(s))³
double continuity_residual(const ScalarFn& f, const ScalarFn& rho, double s);
double continuity_residual(const ScalarFn& f, const ScalarFn& df, const ScalarFn& rho,
                           const ScalarFn& drho, double s);

// the peaked density family, with q = (s/s_m)^{d/3}:
//   ρ(s) = ρ_m·64·q³/(1+q)⁶          (so ρ(s_m) = ρ_m exactly)
//   f(s) = d(1+q)²/(4s·sqrt(6ρ_m)·q)
//   ρ′(s) = ρ·(d/s)(1−q)/(1+q)
//   f′(s) = (f/s)·((2d/3)·q/(1+q) − 1 − d/3)
double bigbang_density(const CosmoModel& model, double s);
double bigbang_density_derivative(const CosmoModel& model, double s);
double bigbang_f(const CosmoModel& model, double s);
double bigbang_f_derivative(const CosmoModel& model, double s);

struct SpectrumSample {
    double s = 0.0;
    double intensity = 0.0;
};

// reads "s,intensity" rows; '#' starts a comment; s must be positive and
// intensity non-negative
std::vector<SpectrumSample> load_spectrum_csv(const std::string& path);

struct FitReport {
    double d = 0.0;
    double s_m = 0.0;        // fitted peak location
    double rho_scale = 0.0;  // fitted vertical scale
    double rms_residual = 0.0;  // RMS misfit over peak intensity
    double peak_offset = 0.0;   // |fitted peak − sample-grid peak| / grid peak
};

// fits rho_scale·ρ(s; s_m, d) to the samples: the scale by linear least
// squares, s_m by a golden-section search in log s over the sample range;
// intensities are multiplied by `normalization` before the fit
FitReport spectrum_compare(const std::vector<SpectrumSample>& samples, double d,
                           double normalization = 1.0);

}  // namespace cosmology
