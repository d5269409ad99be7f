#include "curvkit/geometry.hpp"

#include <cmath>

namespace geometry {

namespace {

ColumnVector shifted(const ColumnVector& x, int axis, double h) {
    ColumnVector y = x;
    y[axis] += h;
    return y;
}

double rel_step(const ColumnVector& x, int axis, double rel) {
    return rel * std::max(1.0, std::fabs(x[axis]));
}

// 5-point central difference: f'(x) ≈ (8(f(x+h)−f(x−h)) − (f(x+2h)−f(x−2h)))/(12h)
template <typename F>
auto fd5(const F& f, const ColumnVector& x, int axis, double h) -> decltype(f(x)) {
    auto fp1 = f(shifted(x, axis, h));
    auto fm1 = f(shifted(x, axis, -h));
    auto fp2 = f(shifted(x, axis, 2.0 * h));
    auto fm2 = f(shifted(x, axis, -2.0 * h));
    return (1.0 / (12.0 * h)) * (8.0 * (fp1 - fm1) - (fp2 - fm2));
}

void require_regular(const MetricField& field, const ColumnVector& x) {
    if (field.singular_locus && field.singular_locus(x))
        throw std::domain_error("metric '" + field.name + "': point lies on the singular locus");
}

double fd_step_sigma(const ColumnVector& x, int axis) { return rel_step(x, axis, 1e-4); }

// σ^m field as a function of the point, for FD of the curvature
std::vector<SquareMatrix> sigma_at(const MetricField& field, const ColumnVector& x) {
    return christoffel(field, x).second_kind;
}

// raw (unsymmetrized) Ricci contraction R_{mn} = Σ_β (σ^{mβ})_{βn}
SquareMatrix contract_ricci(const CurvatureBundle& b) {
    const int n = b.g.dim;
    SquareMatrix R(n);
    for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn) {
            double s = 0.0;
            for (int bb = 0; bb < n; ++bb)
                s += b.sigma_ab[static_cast<size_t>(m)][static_cast<size_t>(bb)](bb, nn);
            R(m, nn) = s;
        }
    return R;
}

}  // namespace

SquareMatrix d_metric(const MetricField& field, const ColumnVector& x, int axis) {
    if (field.d_eval) return field.d_eval(x, axis);
    const double h = rel_step(x, axis, 1e-5);
    return fd5(field.eval, x, axis, h);
}

ChristoffelSet christoffel(const MetricField& field, const ColumnVector& x) {
    require_regular(field, x);
    const int n = field.dim;
    const SquareMatrix g = field.eval(x);
    if (matcore::max_asymmetry(g) > 1e-9 * (1.0 + matcore::max_abs(g)))
        throw std::invalid_argument("metric '" + field.name + "': eval returned an asymmetric matrix");

    std::vector<SquareMatrix> dg;
    dg.reserve(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) dg.push_back(d_metric(field, x, c));

    ChristoffelSet out;
    out.point = x;
    out.first_kind.assign(static_cast<size_t>(n), SquareMatrix(n));
    for (int c = 0; c < n; ++c) {
        SquareMatrix& gc = out.first_kind[static_cast<size_t>(c)];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                gc(a, b) = 0.5 * (dg[static_cast<size_t>(c)](a, b) +
                                  dg[static_cast<size_t>(b)](a, c) -
                                  dg[static_cast<size_t>(a)](b, c));
    }
    const SquareMatrix ginv = matcore::mat_inverse(g);
    out.second_kind.reserve(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m)
        out.second_kind.push_back(ginv * out.first_kind[static_cast<size_t>(m)]);
    return out;
}

CurvatureBundle riemann(const MetricField& field, const ColumnVector& x) {
    require_regular(field, x);
    const int n = field.dim;
    CurvatureBundle out;
    out.g = field.eval(x);
    out.chris = christoffel(field, x);
    const std::vector<SquareMatrix>& sig = out.chris.second_kind;

    // ∂_a σ^b for all (a,b) by differencing the σ field along each axis
    std::vector<std::vector<SquareMatrix>> dsig(
        static_cast<size_t>(n), std::vector<SquareMatrix>(static_cast<size_t>(n), SquareMatrix(n)));
    for (int a = 0; a < n; ++a) {
        const double h = fd_step_sigma(x, a);
        auto fp1 = sigma_at(field, shifted(x, a, h));
        auto fm1 = sigma_at(field, shifted(x, a, -h));
        auto fp2 = sigma_at(field, shifted(x, a, 2.0 * h));
        auto fm2 = sigma_at(field, shifted(x, a, -2.0 * h));
        for (int b = 0; b < n; ++b)
            dsig[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                (1.0 / (12.0 * h)) *
                (8.0 * (fp1[static_cast<size_t>(b)] - fm1[static_cast<size_t>(b)]) -
                 (fp2[static_cast<size_t>(b)] - fm2[static_cast<size_t>(b)]));
    }

    out.sigma_ab.assign(static_cast<size_t>(n),
                        std::vector<SquareMatrix>(static_cast<size_t>(n), SquareMatrix(n)));
    out.gamma_ab = out.sigma_ab;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;  // diagonal stays zero
            const SquareMatrix& sa = sig[static_cast<size_t>(a)];
            const SquareMatrix& sb = sig[static_cast<size_t>(b)];
            SquareMatrix sab = dsig[static_cast<size_t>(a)][static_cast<size_t>(b)] -
                               dsig[static_cast<size_t>(b)][static_cast<size_t>(a)] +
                               sa * sb - sb * sa;
            out.gamma_ab[static_cast<size_t>(a)][static_cast<size_t>(b)] = out.g * sab;
            out.sigma_ab[static_cast<size_t>(a)][static_cast<size_t>(b)] = std::move(sab);
        }
    return out;
}

CurvatureBundle ricci(const MetricField& field, const ColumnVector& x) {
    CurvatureBundle out = riemann(field, x);
    const SquareMatrix R = contract_ricci(out);
    const double asym = matcore::max_asymmetry(R);
    if (asym > 1e-6)
        throw numeric_quality_error(
            "ricci: contraction asymmetry " + std::to_string(asym) +
                " exceeds 1e-6 at point of metric '" + field.name + "'",
            asym);
    // strip FD noise before eigen-solving
    out.ricci = 0.5 * (R + matcore::transpose(R));
    out.scalar = matcore::trace(matcore::mat_inverse(out.g) * out.ricci);
    out.eigen = matcore::generalized_eigenvalues(out.ricci, out.g);
    return out;
}

SquareMatrix ricci_direct(const MetricField& field, const ColumnVector& x) {
    require_regular(field, x);
    const int n = field.dim;
    const std::vector<SquareMatrix> sig = sigma_at(field, x);

    // T_n = Σ_β (σ^β)_{βn}, as a function of the point for the ∂_m T_n term
    const auto T_at = [&](const ColumnVector& p) {
        const std::vector<SquareMatrix> s = sigma_at(field, p);
        ColumnVector t(n);
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int b = 0; b < n; ++b) acc += s[static_cast<size_t>(b)](b, k);
            t[k] = acc;
        }
        return t;
    };
    const ColumnVector T = T_at(x);

    SquareMatrix R(n);
    for (int m = 0; m < n; ++m) {
        const double hm = fd_step_sigma(x, m);
        const ColumnVector dT = fd5(T_at, x, m, hm);

        // Σ_β ∂_β (σ^m)_{βn}: differentiate the σ^m field along each β
        ColumnVector div_sigma(n);
        for (int b = 0; b < n; ++b) {
            const double hb = fd_step_sigma(x, b);
            auto smb = [&](const ColumnVector& p) {
                return sigma_at(field, p)[static_cast<size_t>(m)];
            };
            const SquareMatrix d = fd5(smb, x, b, hb);
            for (int nn = 0; nn < n; ++nn) div_sigma[nn] += d(b, nn);
        }

        std::vector<SquareMatrix> prods;  // σ^m σ^β for each β, entry (β,n) contributes
        prods.reserve(static_cast<size_t>(n));
        for (int b = 0; b < n; ++b)
            prods.push_back(sig[static_cast<size_t>(m)] * sig[static_cast<size_t>(b)]);
        for (int nn = 0; nn < n; ++nn) {
            double quad = 0.0;
            for (int b = 0; b < n; ++b) quad += prods[static_cast<size_t>(b)](b, nn);
            double contraction = 0.0;
            for (int lam = 0; lam < n; ++lam)
                contraction += T[lam] * sig[static_cast<size_t>(m)](lam, nn);
            R(m, nn) = dT[nn] - div_sigma[nn] + quad - contraction;
        }
    }
    return R;
}

FieldEqReport verify_field_equation(const MetricField& field, const ColumnVector& x) {
    const CurvatureBundle b = ricci(field, x);
    FieldEqReport rep;
    rep.rho = b.scalar / field.dim;
    const SquareMatrix diff = b.ricci - rep.rho * b.g;
    rep.max_residual = matcore::max_abs(diff) / (1.0 + matcore::max_abs(b.ricci));
    return rep;
}

namespace {

// R_{rkmn} from a bundle: entry (r,k) of γ^{mn}
double riem(const CurvatureBundle& b, int r, int k, int m, int n) {
    return b.gamma_ab[static_cast<size_t>(m)][static_cast<size_t>(n)](r, k);
}

}  // namespace

IdentityReport identity_suite(const MetricField& field, const ColumnVector& x, double tol) {
    const int n = field.dim;
    const CurvatureBundle b = riemann(field, x);

    IdentityReport rep;
    const auto add = [&](const std::string& name, double violation) {
        rep.checks.push_back({name, violation, tol, violation <= tol});
    };

    // p1: γ^{ab} antisymmetric as a matrix (R_{mkab} = −R_{kmab})
    {
        double v = 0.0;
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                v = std::max(v, matcore::max_abs(
                                    b.gamma_ab[static_cast<size_t>(a)][static_cast<size_t>(bb)] +
                                    matcore::transpose(
                                        b.gamma_ab[static_cast<size_t>(a)][static_cast<size_t>(bb)])));
        add("p1_antisymmetry_first_pair", v);
    }

    // p2: R_{rkmn} + R_{rmnk} + R_{rnkm} = 0
    {
        double v = 0.0;
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m)
                    for (int nn = 0; nn < n; ++nn)
                        v = std::max(v, std::fabs(riem(b, r, k, m, nn) + riem(b, r, m, nn, k) +
                                                  riem(b, r, nn, k, m)));
        add("p2_cyclic_sum", v);
    }

    // p3: R_{mkab} = R_{abmk}
    {
        double v = 0.0;
        for (int m = 0; m < n; ++m)
            for (int k = 0; k < n; ++k)
                for (int a = 0; a < n; ++a)
                    for (int bb = 0; bb < n; ++bb)
                        v = std::max(v, std::fabs(riem(b, m, k, a, bb) - riem(b, a, bb, m, k)));
        add("p3_pair_exchange", v);
    }

    // p5: symmetry of the raw Ricci contraction
    {
        SquareMatrix R(n);
        for (int m = 0; m < n; ++m)
            for (int nn = 0; nn < n; ++nn) {
                double s = 0.0;
                for (int bb = 0; bb < n; ++bb)
                    s += b.sigma_ab[static_cast<size_t>(m)][static_cast<size_t>(bb)](bb, nn);
                R(m, nn) = s;
            }
        add("p5_ricci_symmetry", matcore::max_asymmetry(R));
    }

    // p6: ∇_μ R^μ_ν = ½ ∂_ν trace(g⁻¹R), with
    // ∇_μ R^μ_ν = ∂_μ R^μ_ν + Γ^μ_{μλ} R^λ_ν − Γ^λ_{μν} R^μ_λ and R^μ_ν = (g⁻¹R)_{μν}
    {
        // mixed Ricci (g⁻¹R) and its trace at a point, without the eigen solve
        const auto mixed_ricci = [&](const ColumnVector& p) {
            const CurvatureBundle bb = riemann(field, p);
            const SquareMatrix R = contract_ricci(bb);
            return matcore::mat_inverse(bb.g) * (0.5 * (R + matcore::transpose(R)));
        };
        const SquareMatrix Rmix = mixed_ricci(x);
        std::vector<SquareMatrix> dRmix;
        ColumnVector dscalar(n);
        for (int c = 0; c < n; ++c) {
            const double h = rel_step(x, c, 1e-2);
            dRmix.push_back(fd5(mixed_ricci, x, c, h));
            dscalar[c] = matcore::trace(dRmix.back());
        }
        const std::vector<SquareMatrix>& sig = b.chris.second_kind;
        ColumnVector T(n);
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int bb = 0; bb < n; ++bb) acc += sig[static_cast<size_t>(bb)](bb, k);
            T[k] = acc;
        }
        double v = 0.0;
        for (int nu = 0; nu < n; ++nu) {
            double div = 0.0;
            for (int mu = 0; mu < n; ++mu) div += dRmix[static_cast<size_t>(mu)](mu, nu);
            for (int lam = 0; lam < n; ++lam) div += T[lam] * Rmix(lam, nu);
            for (int mu = 0; mu < n; ++mu)
                for (int lam = 0; lam < n; ++lam)
                    div -= sig[static_cast<size_t>(mu)](lam, nu) * Rmix(mu, lam);
            v = std::max(v, std::fabs(div - 0.5 * dscalar[nu]));
        }
        add("p6_contracted_bianchi", v);
    }

    // p7: ∇_k R_{rsmn} + ∇_m R_{rsnk} + ∇_n R_{rskm} = 0 with
    // ∇_c R_{abmn} = ∂_c R_{abmn} − Γ^λ_{ca}R_{λbmn} − Γ^λ_{cb}R_{aλmn}
    //               − Γ^λ_{cm}R_{abλn} − Γ^λ_{cn}R_{abmλ},  Γ^λ_{ca} = (σ^c)_{λa}
    {
        // shared FD grid of bundles along every axis; the first-kind
        // components grow with the chart radius, so the outer step is kept
        // small enough that the h^4 truncation stays below the absolute
        // tolerance out to large radii
        std::vector<std::vector<CurvatureBundle>> grid(static_cast<size_t>(n));
        std::vector<double> steps(static_cast<size_t>(n));
        for (int c = 0; c < n; ++c) {
            const double h = rel_step(x, c, 3e-3);
            steps[static_cast<size_t>(c)] = h;
            grid[static_cast<size_t>(c)] = {
                riemann(field, shifted(x, c, h)), riemann(field, shifted(x, c, -h)),
                riemann(field, shifted(x, c, 2.0 * h)), riemann(field, shifted(x, c, -2.0 * h))};
        }
        const auto dRiem = [&](int c, int r, int s, int m, int nn) {
            const auto& gverts = grid[static_cast<size_t>(c)];
            const double h = steps[static_cast<size_t>(c)];
            return (8.0 * (riem(gverts[0], r, s, m, nn) - riem(gverts[1], r, s, m, nn)) -
                    (riem(gverts[2], r, s, m, nn) - riem(gverts[3], r, s, m, nn))) /
                   (12.0 * h);
        };
        const std::vector<SquareMatrix>& sig = b.chris.second_kind;
        const auto cov = [&](int c, int r, int s, int m, int nn) {
            double val = dRiem(c, r, s, m, nn);
            for (int lam = 0; lam < n; ++lam) {
                val -= sig[static_cast<size_t>(c)](lam, r) * riem(b, lam, s, m, nn);
                val -= sig[static_cast<size_t>(c)](lam, s) * riem(b, r, lam, m, nn);
                val -= sig[static_cast<size_t>(c)](lam, m) * riem(b, r, s, lam, nn);
                val -= sig[static_cast<size_t>(c)](lam, nn) * riem(b, r, s, m, lam);
            }
            return val;
        };
        double v = 0.0;
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s)
                for (int k = 0; k < n; ++k)
                    for (int m = 0; m < n; ++m)
                        for (int nn = 0; nn < n; ++nn)
                            v = std::max(v, std::fabs(cov(k, r, s, m, nn) + cov(m, r, s, nn, k) +
                                                      cov(nn, r, s, k, m)));
        add("p7_second_bianchi", v);
    }

    return rep;
}

EigenSplit eigen_split(const MetricField& field, const ColumnVector& x) {
    const CurvatureBundle b = ricci(field, x);
    EigenSplit out;
    out.mu = b.eigen.values;
    const int n = static_cast<int>(out.mu.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.gaps.push_back(out.mu[static_cast<size_t>(i)] - out.mu[static_cast<size_t>(j)]);
    return out;
}

}  // namespace geometry
