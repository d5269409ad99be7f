#pragma once
// matcore: small dense real linear algebra for n-dimensional matrices/vectors
// (n is typically 4). Provides the usual product/transpose/trace operations,
// LU-based determinant / inverse / solve, and a generalized eigensolver for
// the pencil (R, g), i.e. the eigenvalues of g^-1 R.
//
// Indexing is 0-based throughout the code (the accompanying docs use the
// 1-based convention of the underlying formulas).

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace matcore {

class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown by mat_inverse / linear_solve; carries the offending determinant.
class singular_matrix_error : public std::runtime_error {
public:
    singular_matrix_error(const std::string& msg, double det)
        : std::runtime_error(msg), det_value(det) {}
    double det_value;
};

// Thrown by generalized_eigenvalues when the pencil has a genuinely complex
// spectrum (imaginary part beyond the truncation tolerance).
class nonreal_spectrum_error : public std::runtime_error {
public:
    nonreal_spectrum_error(const std::string& msg, double imag)
        : std::runtime_error(msg), max_imag(imag) {}
    double max_imag;
};

struct ColumnVector {
    std::vector<double> e;

    ColumnVector() = default;
    explicit ColumnVector(int n) : e(static_cast<size_t>(n), 0.0) {}
    ColumnVector(std::initializer_list<double> vals) : e(vals) {}

    int dim() const { return static_cast<int>(e.size()); }
    double& operator[](int i) { return e[static_cast<size_t>(i)]; }
    double operator[](int i) const { return e[static_cast<size_t>(i)]; }
};

struct SquareMatrix {
    int dim = 0;
    std::vector<double> e;  // row-major, dim*dim entries

    SquareMatrix() = default;
    explicit SquareMatrix(int n) : dim(n), e(static_cast<size_t>(n) * n, 0.0) {}

    static SquareMatrix identity(int n);
    static SquareMatrix diagonal(std::initializer_list<double> d);
    static SquareMatrix diagonal(const std::vector<double>& d);
    // diag(-1,...,-1,+1): the signature matrix G of the conformal models.
    static SquareMatrix signature(int n);

    double& operator()(int i, int j) { return e[static_cast<size_t>(i) * dim + j]; }
    double operator()(int i, int j) const { return e[static_cast<size_t>(i) * dim + j]; }
};

struct EigenSet {
    std::vector<double> values;     // sorted descending
    double residual = 0.0;          // max ||(g^-1 R - mu I) v||_2 over unit eigenvectors
    double complex_discarded = 0.0; // largest imaginary magnitude truncated to zero
};

// ---- elementwise / structural helpers ----
SquareMatrix transpose(const SquareMatrix& a);
double trace(const SquareMatrix& a);
double max_abs(const SquareMatrix& a);             // entrywise infinity norm
double max_abs(const ColumnVector& v);
double max_asymmetry(const SquareMatrix& a);       // max |a_ij - a_ji|

SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b);
ColumnVector mat_vec(const SquareMatrix& a, const ColumnVector& v);
double dot(const ColumnVector& a, const ColumnVector& b);

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
ColumnVector operator*(const SquareMatrix& a, const ColumnVector& v);
SquareMatrix operator*(double s, const SquareMatrix& a);
SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
ColumnVector operator*(double s, const ColumnVector& v);
ColumnVector operator+(const ColumnVector& a, const ColumnVector& b);
ColumnVector operator-(const ColumnVector& a, const ColumnVector& b);

// ---- LU with partial pivoting ----
double det(const SquareMatrix& a);
SquareMatrix mat_inverse(const SquareMatrix& a);
ColumnVector linear_solve(const SquareMatrix& a, const ColumnVector& b);

// Eigenvalues of g^-1 R for symmetric R, g (g invertible). Characteristic
// polynomial by Faddeev-LeVerrier, roots by Durand-Kerner. Root finders
// scatter multiple real roots into conjugate dust of radius ~eps^(1/m), so
// roots are clustered (relative radius cluster_tol) and each cluster is
// replaced by its centroid, then polished by Rayleigh-quotient iteration;
// imaginary parts below imag_tol*(1+|mu|) are truncated and recorded.
EigenSet generalized_eigenvalues(const SquareMatrix& R, const SquareMatrix& g,
                                 double imag_tol = 1e-8,
                                 double cluster_tol = 1e-3);

}  // namespace matcore
