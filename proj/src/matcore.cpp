#include "curvkit/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace matcore {

SquareMatrix SquareMatrix::identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::diagonal(std::initializer_list<double> d) {
    return diagonal(std::vector<double>(d));
}

SquareMatrix SquareMatrix::diagonal(const std::vector<double>& d) {
    SquareMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim; ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
}

SquareMatrix SquareMatrix::signature(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = (i == n - 1) ? 1.0 : -1.0;
    return m;
}

SquareMatrix transpose(const SquareMatrix& a) {
    SquareMatrix t(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) t(j, i) = a(i, j);
    return t;
}

double trace(const SquareMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i) s += a(i, i);
    return s;
}

double max_abs(const SquareMatrix& a) {
    double m = 0.0;
    for (double x : a.e) m = std::max(m, std::fabs(x));
    return m;
}

double max_abs(const ColumnVector& v) {
    double m = 0.0;
    for (double x : v.e) m = std::max(m, std::fabs(x));
    return m;
}

double max_asymmetry(const SquareMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim; ++i)
        for (int j = i + 1; j < a.dim; ++j)
            m = std::max(m, std::fabs(a(i, j) - a(j, i)));
    return m;
}

SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim != b.dim) throw dimension_error("mat_mul: dimension mismatch");
    SquareMatrix c(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < a.dim; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ColumnVector mat_vec(const SquareMatrix& a, const ColumnVector& v) {
    if (a.dim != v.dim()) throw dimension_error("mat_vec: dimension mismatch");
    ColumnVector r(a.dim);
    for (int i = 0; i < a.dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < a.dim; ++j) s += a(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

double dot(const ColumnVector& a, const ColumnVector& b) {
    if (a.dim() != b.dim()) throw dimension_error("dot: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) { return mat_mul(a, b); }
ColumnVector operator*(const SquareMatrix& a, const ColumnVector& v) { return mat_vec(a, v); }

SquareMatrix operator*(double s, const SquareMatrix& a) {
    SquareMatrix r = a;
    for (double& x : r.e) x *= s;
    return r;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim != b.dim) throw dimension_error("matrix sum: dimension mismatch");
    SquareMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim != b.dim) throw dimension_error("matrix difference: dimension mismatch");
    SquareMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= b.e[i];
    return r;
}

ColumnVector operator*(double s, const ColumnVector& v) {
    ColumnVector r = v;
    for (double& x : r.e) x *= s;
    return r;
}

ColumnVector operator+(const ColumnVector& a, const ColumnVector& b) {
    if (a.dim() != b.dim()) throw dimension_error("vector sum: dimension mismatch");
    ColumnVector r = a;
    for (int i = 0; i < r.dim(); ++i) r[i] += b[i];
    return r;
}

ColumnVector operator-(const ColumnVector& a, const ColumnVector& b) {
    if (a.dim() != b.dim()) throw dimension_error("vector difference: dimension mismatch");
    ColumnVector r = a;
    for (int i = 0; i < r.dim(); ++i) r[i] -= b[i];
    return r;
}

// ---- LU with partial pivoting ----

namespace {

struct LUFactors {
    SquareMatrix lu;       // L (unit diagonal, below) and U (on/above diagonal)
    std::vector<int> piv;  // row permutation
    double determinant = 1.0;
};

LUFactors lu_decompose(const SquareMatrix& a) {
    const int n = a.dim;
    LUFactors f{a, std::vector<int>(static_cast<size_t>(n)), 1.0};
    for (int i = 0; i < n; ++i) f.piv[static_cast<size_t>(i)] = i;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(f.lu(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(f.lu(i, k)) > best) { best = std::fabs(f.lu(i, k)); p = i; }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
            std::swap(f.piv[static_cast<size_t>(k)], f.piv[static_cast<size_t>(p)]);
            sign = -sign;
        }
        const double pivot = f.lu(k, k);
        if (pivot == 0.0) { f.determinant = 0.0; return f; }
        for (int i = k + 1; i < n; ++i) {
            f.lu(i, k) /= pivot;
            const double lik = f.lu(i, k);
            if (lik == 0.0) continue;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
        }
    }
    double d = sign;
    for (int k = 0; k < n; ++k) d *= f.lu(k, k);
    f.determinant = d;
    return f;
}

// Singularity cutoff: |det| <= 1e-13 * prod(row 1-norms). By Hadamard's
// inequality the product bounds |det| from above, so the ratio is a genuine
// relative determinant; a max-norm power would misjudge matrices whose rows
// live on very different scales (e.g. metric blocks mixing km² with 1).
double singularity_threshold(const SquareMatrix& a) {
    double prod = 1.0;
    for (int i = 0; i < a.dim; ++i) {
        double rn = 0.0;
        for (int j = 0; j < a.dim; ++j) rn += std::fabs(a(i, j));
        prod *= rn;
    }
    return 1e-13 * prod;
}

ColumnVector lu_solve(const LUFactors& f, const ColumnVector& b) {
    const int n = f.lu.dim;
    ColumnVector x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.piv[static_cast<size_t>(i)]];
    for (int i = 1; i < n; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s / f.lu(i, i);
    }
    return x;
}

// lu_solve with tiny pivots floored: inverse iteration solves deliberately
// near-singular systems, where a huge-but-finite solution is exactly what we
// want (its direction becomes the eigenvector after normalization)
ColumnVector lu_solve_floored(LUFactors f, const ColumnVector& b, double floor_mag) {
    for (int k = 0; k < f.lu.dim; ++k) {
        double& p = f.lu(k, k);
        if (std::fabs(p) < floor_mag) p = std::signbit(p) ? -floor_mag : floor_mag;
    }
    return lu_solve(f, b);
}

}  // namespace

double det(const SquareMatrix& a) {
    if (a.dim < 1) throw dimension_error("det: empty matrix");
    return lu_decompose(a).determinant;
}

SquareMatrix mat_inverse(const SquareMatrix& a) {
    if (a.dim < 1) throw dimension_error("mat_inverse: empty matrix");
    const LUFactors f = lu_decompose(a);
    if (std::fabs(f.determinant) <= singularity_threshold(a))
        throw singular_matrix_error("mat_inverse: singular matrix, det = " +
                                        std::to_string(f.determinant),
                                    f.determinant);
    SquareMatrix inv(a.dim);
    ColumnVector unit(a.dim);
    for (int j = 0; j < a.dim; ++j) {
        unit[j] = 1.0;
        ColumnVector col = lu_solve(f, unit);
        unit[j] = 0.0;
        for (int i = 0; i < a.dim; ++i) inv(i, j) = col[i];
    }
    return inv;
}

ColumnVector linear_solve(const SquareMatrix& a, const ColumnVector& b) {
    if (a.dim != b.dim()) throw dimension_error("linear_solve: dimension mismatch");
    const LUFactors f = lu_decompose(a);
    if (std::fabs(f.determinant) <= singularity_threshold(a))
        throw singular_matrix_error("linear_solve: singular matrix, det = " +
                                        std::to_string(f.determinant),
                                    f.determinant);
    return lu_solve(f, b);
}

// ---- generalized eigenvalues of the pencil (R, g) ----

namespace {

using cplx = std::complex<double>;

// p(z) = z^n + c[0] z^(n-1) + ... + c[n-1], Horner form
cplx poly_eval(const std::vector<double>& c, cplx z) {
    cplx p(1.0, 0.0);
    for (double ck : c) p = p * z + ck;
    return p;
}

double two_norm(const ColumnVector& v) { return std::sqrt(dot(v, v)); }

}  // namespace

EigenSet generalized_eigenvalues(const SquareMatrix& R, const SquareMatrix& g,
                                 double imag_tol, double cluster_tol) {
    if (R.dim != g.dim) throw dimension_error("generalized_eigenvalues: dimension mismatch");
    const int n = R.dim;
    const double sym_tol_R = 1e-6 * (1.0 + max_abs(R));
    const double sym_tol_g = 1e-6 * (1.0 + max_abs(g));
    if (max_asymmetry(R) > sym_tol_R || max_asymmetry(g) > sym_tol_g)
        throw std::invalid_argument("generalized_eigenvalues: inputs not symmetric within tolerance");

    const SquareMatrix M = mat_inverse(g) * R;

    // Faddeev-LeVerrier: c_k = -trace(M_k)/k with M_k = M (M_{k-1} + c_{k-1} I)
    std::vector<double> c(static_cast<size_t>(n));
    SquareMatrix Mk = M;
    for (int k = 1; k <= n; ++k) {
        c[static_cast<size_t>(k - 1)] = -trace(Mk) / k;
        if (k < n) {
            SquareMatrix shifted = Mk;
            for (int i = 0; i < n; ++i) shifted(i, i) += c[static_cast<size_t>(k - 1)];
            Mk = M * shifted;
        }
    }

    // Rescale z = s*y so the monic polynomial in y has O(1) coefficients; DK on
    // the raw coefficients puts seeds at the Cauchy bound (~|mu_max|^n) and the
    // step tolerance inherits that scale, both of which wreck convergence for
    // large eigenvalues.
    double scale = 0.0;
    for (int k = 1; k <= n; ++k)
        scale = std::max(scale, std::pow(std::fabs(c[static_cast<size_t>(k - 1)]), 1.0 / k));
    std::vector<cplx> z(static_cast<size_t>(n), cplx(0.0, 0.0));
    if (scale > 0.0) {
        std::vector<double> ch(c);
        double sk = 1.0;
        for (int k = 1; k <= n; ++k) { sk *= scale; ch[static_cast<size_t>(k - 1)] /= sk; }
        // |y| <= 1 + max|ch| <= 2, so seed on a spiral of radius 2
        const cplx seed(0.4, 0.9);
        cplx w = seed;
        for (int j = 0; j < n; ++j) { z[static_cast<size_t>(j)] = 2.0 * w; w *= seed; }
        for (int iter = 0; iter < 2000; ++iter) {
            double step = 0.0;
            for (int j = 0; j < n; ++j) {
                cplx den(1.0, 0.0);
                for (int k = 0; k < n; ++k)
                    if (k != j) den *= z[static_cast<size_t>(j)] - z[static_cast<size_t>(k)];
                if (den == cplx(0.0, 0.0)) den = cplx(1e-300, 0.0);
                const cplx dz = poly_eval(ch, z[static_cast<size_t>(j)]) / den;
                z[static_cast<size_t>(j)] -= dz;
                step = std::max(step, std::abs(dz));
            }
            if (step < 3e-15) break;
        }
        for (cplx& zi : z) zi *= scale;
    }

    // Multiple real roots come back as conjugate dust of radius ~eps^(1/m);
    // cluster nearby roots (single linkage) and take centroids before looking
    // at imaginary parts.
    std::vector<std::vector<cplx>> clusters;
    for (const cplx& zi : z) {
        std::vector<cplx>* home = nullptr;
        for (auto& cl : clusters) {
            for (const cplx& m : cl) {
                const double lim = cluster_tol * (1.0 + 0.5 * (std::abs(zi) + std::abs(m)));
                if (std::abs(zi - m) <= lim) { home = &cl; break; }
            }
            if (home) break;
        }
        if (home)
            home->push_back(zi);
        else
            clusters.push_back({zi});
    }

    EigenSet out;
    const double m_scale = 1.0 + max_abs(M);
    for (const auto& cl : clusters) {
        cplx centroid(0, 0);
        for (const cplx& m : cl) centroid += m;
        centroid /= static_cast<double>(cl.size());

        // Rayleigh-quotient polish: root-finding alone resolves an m-fold root
        // only to ~eps^(1/m), so the centroid is only a seed. Inverse iteration
        // with a floored solve (the shifted system is near-singular on purpose)
        // plus the Rayleigh quotient recovers full precision whenever a real
        // eigenpair exists near the cluster.
        double mu = centroid.real();
        ColumnVector v(n);
        for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.37 * i;  // uneven start, avoids symmetric blind spots
        for (int sweep = 0; sweep < 4; ++sweep) {
            SquareMatrix A = M;
            const double shift = mu + 1e-13 * (1.0 + std::fabs(mu));
            for (int i = 0; i < n; ++i) A(i, i) -= shift;
            const double floor_mag = 1e-20 * (1.0 + max_abs(A));
            ColumnVector vn = lu_solve_floored(lu_decompose(A), v, floor_mag);
            const double nn = two_norm(vn);
            if (!(nn > 0.0) || !std::isfinite(nn)) break;
            v = (1.0 / nn) * vn;
            const double rq = dot(v, M * v) / dot(v, v);
            // guard against drifting to a different eigenvalue
            if (std::fabs(rq - centroid.real()) > 10.0 * cluster_tol * (1.0 + std::abs(centroid))) break;
            if (std::fabs(rq - mu) < 1e-15 * (1.0 + std::fabs(rq))) { mu = rq; break; }
            mu = rq;
        }

        // Realness is certified by the matrix, not the polynomial: char-poly
        // dust from an m-fold root carries imaginary parts ~eps^(1/m) that mean
        // nothing. Accept the cluster as real if the polished real pair fits
        // tightly; otherwise a large centroid imaginary part signals a genuine
        // complex-conjugate pair.
        const double r = two_norm(M * v - mu * v) / two_norm(v);
        const double imag_mag = std::fabs(centroid.imag());
        if (r > 1e-9 * m_scale && imag_mag > imag_tol * (1.0 + std::abs(centroid)))
            throw nonreal_spectrum_error(
                "generalized_eigenvalues: non-real eigenvalue, |imag| = " + std::to_string(imag_mag),
                imag_mag);
        out.complex_discarded = std::max(out.complex_discarded, imag_mag);
        out.residual = std::max(out.residual, r);
        for (size_t copy = 0; copy < cl.size(); ++copy) out.values.push_back(mu);
    }
    std::sort(out.values.begin(), out.values.end(), std::greater<double>());
    return out;
}

}  // namespace matcore
