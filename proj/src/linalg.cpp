#include "concordia/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace concordia {

namespace {

constexpr int kMaxSweeps = 50;

double same_sign(double magnitude, double sign_of) {
    return sign_of >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != static_cast<int>(x.size())) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double inf_norm(const Matrix& a) {
    double best = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (int j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

// Classic tred2: successive Householder reflections zero out one row/column
// pair at a time; the product of reflections is accumulated back into `a`.
void householder_tridiag(Matrix& a, std::vector<double>& diag, std::vector<double>& offdiag) {
    const int n = a.rows();
    diag.assign(n, 0.0);
    std::vector<double> e(n, 0.0);  // e[i] couples sites i-1 and i

    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(a(i, k));
            if (scale == 0.0) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    a(j, i) = a(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
                }
            }
        } else {
            e[i] = a(i, l);
        }
        diag[i] = h;
    }
    diag[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const int l = i - 1;
        if (diag[i] != 0.0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0.0;
                for (int k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
                for (int k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
            }
        }
        diag[i] = a(i, i);
        a(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) {
            a(j, i) = 0.0;
            a(i, j) = 0.0;
        }
    }

    offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
    for (int i = 0; i + 1 < n; ++i) offdiag[i] = e[i + 1];
}

void tridiag_ql_implicit(std::vector<double>& diag, std::vector<double>& offdiag, Matrix& z) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) return;
    if (static_cast<int>(offdiag.size()) != n - 1)
        throw std::invalid_argument("tridiag_ql_implicit: offdiag must have n-1 entries");

    std::vector<double>& d = diag;
    std::vector<double> e(offdiag);
    e.push_back(0.0);

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            // e[m] counts as converged once it is absorbed by the adjacent
            // diagonal magnitudes at working precision; downstream
            // correlators need eigenvectors at this accuracy, a looser split
            // would leak into their tolerance budget.
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) + dd == dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxSweeps)
                    throw NumericalError(
                        "symmetric eigensolver: QL iteration exceeded " +
                        std::to_string(kMaxSweeps) + " sweeps without converging");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + same_sign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = r = std::hypot(f, g);
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < z.rows(); ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    offdiag.assign(n - 1, 0.0);
}

SymEigenResult sym_eigen(Matrix a) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("sym_eigen: matrix must be square");

    std::vector<double> d;
    std::vector<double> e;
    householder_tridiag(a, d, e);
    tridiag_ql_implicit(d, e, a);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });

    SymEigenResult out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.values[k] = d[src];
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            const double v = a(i, src);
            if (v != 0.0) {
                sign = v > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (int i = 0; i < n; ++i) out.vectors(i, k) = sign * a(i, src);
    }
    return out;
}

}  // namespace concordia
