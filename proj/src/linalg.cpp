#include "ia/linalg.hpp"

#include <Eigen/SVD>

namespace ia {

namespace {

void require_finite(const Matrix& m) {
    if (!m.allFinite()) throw InputError("matrix has non-finite entries");
}

}  // namespace

int numeric_rank(const Matrix& m, const RankTolerance& tol) {
    if (!(tol.relative_threshold > 0.0 && tol.relative_threshold < 1.0)) {
        throw InputError("rank tolerance must lie in (0,1)");
    }
    require_finite(m);
    if (m.size() == 0) return 0;

    Matrix w = m;
    if (tol.normalize_columns) {
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            double c = w.col(j).norm();
            if (c > 0.0) w.col(j) /= c;
        }
    }
    Eigen::JacobiSVD<Matrix> svd(w);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double cut = tol.relative_threshold * s(0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cut) ++r;
    }
    return r;
}

Matrix hcat(const std::vector<Matrix>& ms) {
    if (ms.empty()) throw InputError("hcat: empty list");
    const Eigen::Index rows = ms.front().rows();
    Eigen::Index cols = 0;
    for (const auto& m : ms) {
        if (m.rows() != rows) throw InputError("hcat: row count mismatch");
        cols += m.cols();
    }
    Matrix out(rows, cols);
    Eigen::Index at = 0;
    for (const auto& m : ms) {
        out.middleCols(at, m.cols()) = m;
        at += m.cols();
    }
    return out;
}

bool is_subspace(const Matrix& a, const Matrix& b, const RankTolerance& tol) {
    if (a.rows() != b.rows()) throw InputError("is_subspace: row count mismatch");
    return numeric_rank(hcat({b, a}), tol) == numeric_rank(b, tol);
}

int joint_rank(const std::vector<Matrix>& ms, const RankTolerance& tol) {
    if (ms.empty()) throw InputError("joint_rank: empty list");
    return numeric_rank(hcat(ms), tol);
}

Matrix range_basis(const Matrix& m, const RankTolerance& tol) {
    const int r = numeric_rank(m, tol);
    if (r == 0) return Matrix(m.rows(), 0);
    Matrix w = m;
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
        double c = w.col(j).norm();
        if (c > 0.0) w.col(j) /= c;
    }
    Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU);
    return svd.matrixU().leftCols(r);
}

ExactMatrix to_exact(const Matrix& m) {
    require_finite(m);
    ExactMatrix out(m.rows(), std::vector<mpq_class>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = mpq_class(m(i, j));
    }
    return out;
}

int exact_rank(ExactMatrix m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

std::vector<mpq_class> exact_solve(ExactMatrix a, std::vector<mpq_class> b) {
    return dense_solve<mpq_class>(std::move(a), std::move(b));
}

}  // namespace ia
