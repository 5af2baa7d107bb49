#include "okb/linalg.hpp"

#include <utility>

namespace okb {

namespace {

struct Echelon {
    Matrix m;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form of an augmented system; `ncols` columns take part
// in pivoting, trailing columns are carried along.
Echelon rref(Matrix m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        const Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) continue;
            const Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::vector<Vector> kernel_from_rref(const Echelon& e, std::size_t ncols) {
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Vector k = zero_vector(ncols);
        k[free] = 1;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) k[e.pivot_cols[i]] = -e.m(i, free);
        basis.push_back(std::move(k));
    }
    return basis;
}

}  // namespace

std::optional<LinearSolution> solve_linear(const Matrix& a, std::span<const Rational> b) {
    if (a.rows() != b.size()) throw InputError("solve_linear: A has " + std::to_string(a.rows()) +
                                               " rows but b has " + std::to_string(b.size()) + " entries");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const auto e = rref(std::move(aug), a.cols());
    for (std::size_t r = e.pivot_cols.size(); r < a.rows(); ++r)
        if (sgn(e.m(r, a.cols())) != 0) return std::nullopt;
    LinearSolution sol;
    sol.particular = zero_vector(a.cols());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) sol.particular[e.pivot_cols[i]] = e.m(i, a.cols());
    sol.kernel = kernel_from_rref(e, a.cols());
    return sol;
}

std::size_t rank(const Matrix& a) { return rref(a, a.cols()).pivot_cols.size(); }

std::size_t rank(const std::vector<Vector>& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    return rank(Matrix::from_rows(rows, cols));
}

std::vector<Vector> kernel(const Matrix& a) {
    const auto e = rref(a, a.cols());
    return kernel_from_rref(e, a.cols());
}

std::vector<Vector> row_space_basis(const std::vector<Vector>& rows, std::size_t cols) {
    if (rows.empty()) return {};
    const auto e = rref(Matrix::from_rows(rows, cols), cols);
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) basis.push_back(e.m.row_vector(i));
    return basis;
}

Rational determinant(const Matrix& a) {
    if (!a.is_square()) throw InputError("determinant of non-square matrix");
    Matrix m = a;
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && sgn(m(p, col)) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m(r, col)) == 0) continue;
            const Rational f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

Vector project_onto_span(std::span<const Rational> v, const std::vector<Vector>& basis) {
    const auto indep = row_space_basis(basis, v.size());
    if (indep.empty()) return zero_vector(v.size());
    const std::size_t k = indep.size();
    Matrix gram(k, k);
    Vector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = dot(indep[i], v);
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(indep[i], indep[j]);
    }
    const auto sol = solve_linear(gram, rhs);
    Vector out = zero_vector(v.size());
    for (std::size_t i = 0; i < k; ++i) out = axpy(out, sol->particular[i], indep[i]);
    return out;
}

bool is_negative_definite(const Matrix& g) {
    if (!g.is_symmetric()) throw InputError("is_negative_definite: matrix is not symmetric");
    const std::size_t n = g.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix minor(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) minor(r, c) = g(r, c);
        const int s = sgn(determinant(minor));
        const int want = (k % 2 == 1) ? -1 : 1;
        if (s != want) return false;
    }
    return true;
}

Inertia inertia(const Matrix& g) {
    if (!g.is_symmetric()) throw InputError("inertia: matrix is not symmetric");
    Matrix m = g;
    const std::size_t n = m.rows();
    Inertia out;
    std::size_t k = 0;
    for (; k < n; ++k) {
        // Bring a nonzero diagonal entry to position k, using the congruence
        // e_i -> e_i + e_j when the remaining diagonal is all zero.
        std::size_t p = k;
        while (p < n && sgn(m(p, p)) == 0) ++p;
        if (p == n) {
            std::size_t oi = n, oj = n;
            for (std::size_t i = k; i < n && oi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (sgn(m(i, j)) != 0) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi == n) break;
            for (std::size_t c = 0; c < n; ++c) m(oi, c) += m(oj, c);
            for (std::size_t r = 0; r < n; ++r) m(r, oi) += m(r, oj);
            p = oi;
        }
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(k, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(m(r, p), m(r, k));
        }
        const Rational pivot = m(k, k);
        if (sgn(pivot) > 0) ++out.positive;
        else ++out.negative;
        // Schur complement on the trailing block.
        for (std::size_t r = k + 1; r < n; ++r) {
            if (sgn(m(r, k)) == 0) continue;
            const Rational f = m(r, k) / pivot;
            for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
        }
        for (std::size_t r = k + 1; r < n; ++r) m(k, r) = m(r, k) = 0;
    }
    out.zero = n - out.positive - out.negative;
    return out;
}

}  // namespace okb
