// Minimal dense linear algebra: a row-major matrix type and a symmetric
// eigensolver (Householder reduction to tridiagonal form followed by the
// implicit-shift QL iteration). System sizes here stay in the low hundreds,
// so a dense solver suffices and certifies directly against
// residual and orthonormality checks.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace concordia {

// Raised when an iterative numerical routine fails to converge. Callers must
// never receive silently-invalid results.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    double& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const noexcept { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Matrix& other) const noexcept = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

// max_i sum_j |a(i,j)|
double inf_norm(const Matrix& a);

struct SymEigenResult {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k is the unit eigenvector of values[k]
};

// Full eigendecomposition of a real symmetric matrix. Output is
// deterministic: eigenvalues ascending (stable under ties) and each
// eigenvector's first nonzero component made positive. Throws
// NumericalError if the QL iteration fails to converge.
SymEigenResult sym_eigen(Matrix a);

// Implicit-shift QL on a tridiagonal matrix. `diag` holds the n diagonal
// entries and is replaced by the eigenvalues (unsorted); `offdiag` holds the
// n-1 subdiagonal entries and is destroyed. Plane rotations accumulate into
// the columns of `z`; pass the identity to get eigenvectors of the
// tridiagonal matrix itself, or the Householder basis to get eigenvectors of
// the original dense matrix.
void tridiag_ql_implicit(std::vector<double>& diag, std::vector<double>& offdiag, Matrix& z);

// Householder reduction of a symmetric matrix to tridiagonal form. On exit
// `a` holds the accumulated orthogonal transformation, `diag` the diagonal
// and `offdiag` the n-1 subdiagonal entries.
void householder_tridiag(Matrix& a, std::vector<double>& diag, std::vector<double>& offdiag);

}  // namespace concordia
