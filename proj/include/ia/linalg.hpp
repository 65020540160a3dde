#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ia/errors.hpp"

namespace ia {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// The one place the floating-point tolerance policy lives.
struct RankTolerance {
    double relative_threshold = 1e-8;
    // Columns are scaled to unit length first. Rank is unchanged, and
    // Q^alpha-style columns with geometric magnitudes stay comparable.
    bool normalize_columns = true;
};

int numeric_rank(const Matrix& m, const RankTolerance& tol = {});

// true iff span(a) is contained in span(b).
bool is_subspace(const Matrix& a, const Matrix& b, const RankTolerance& tol = {});

int joint_rank(const std::vector<Matrix>& ms, const RankTolerance& tol = {});

// Orthonormal basis of the column span (numeric rank columns).
Matrix range_basis(const Matrix& m, const RankTolerance& tol = {});

Matrix hcat(const std::vector<Matrix>& ms);

// Exact oracles. Intended for small matrices (tests use <= 32x32).
using ExactMatrix = std::vector<std::vector<mpq_class>>;

ExactMatrix to_exact(const Matrix& m);
int exact_rank(ExactMatrix m);
// Solves a square system exactly; throws NumericError if singular.
std::vector<mpq_class> exact_solve(ExactMatrix a, std::vector<mpq_class> b);

// Gaussian elimination with partial pivoting over any field-like scalar.
// Throws NumericError on an exactly zero pivot.
template <class T>
std::vector<T> dense_solve(std::vector<std::vector<T>> a, std::vector<T> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw InputError("dense_solve: size mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k].size() != n) throw InputError("dense_solve: matrix not square");
    }
    using std::abs;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (abs(a[i][k]) > abs(a[piv][k])) piv = i;
        }
        if (a[piv][k] == 0) throw NumericError("singular system");
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            T f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<T> x(n);
    for (std::size_t k = n; k-- > 0;) {
        T s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
        x[k] = s / a[k][k];
    }
    return x;
}

}  // namespace ia
