#include "okb/lp.hpp"

#include <optional>

namespace okb {

namespace {

// Tableau in B^{-1}[A | b] form; column `rhs` is the last one.
struct Tableau {
    std::vector<Vector> rows;
    std::vector<std::size_t> basis;
    std::size_t width = 0;  // number of variable columns

    const Rational& rhs(std::size_t r) const { return rows[r][width]; }

    void pivot(std::size_t pr, std::size_t pc) {
        const Rational inv = 1 / rows[pr][pc];
        for (auto& x : rows[pr]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pr || sgn(rows[r][pc]) == 0) continue;
            const Rational f = rows[r][pc];
            for (std::size_t c = 0; c <= width; ++c)
                if (sgn(rows[pr][c]) != 0) rows[r][c] -= f * rows[pr][c];
        }
        basis[pr] = pc;
    }
};

enum class PhaseResult { optimal, unbounded };

// Maximizes cost . x over the current tableau; columns with allowed[c] == false
// never enter the basis.
PhaseResult run_simplex(Tableau& t, const Vector& cost, const std::vector<bool>& allowed) {
    for (;;) {
        std::optional<std::size_t> entering;
        for (std::size_t c = 0; c < t.width && !entering; ++c) {
            if (!allowed[c]) continue;
            Rational reduced = cost[c];
            for (std::size_t r = 0; r < t.rows.size(); ++r)
                if (sgn(t.rows[r][c]) != 0) reduced -= cost[t.basis[r]] * t.rows[r][c];
            if (sgn(reduced) > 0) entering = c;
        }
        if (!entering) return PhaseResult::optimal;
        const std::size_t pc = *entering;
        std::optional<std::size_t> leaving;
        Rational best_ratio;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (sgn(t.rows[r][pc]) <= 0) continue;
            Rational ratio = t.rhs(r) / t.rows[r][pc];
            if (!leaving || ratio < best_ratio || (ratio == best_ratio && t.basis[r] < t.basis[*leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (!leaving) return PhaseResult::unbounded;
        t.pivot(*leaving, pc);
    }
}

}  // namespace

LpSolution lp_maximize(const Matrix& a, std::span<const Rational> b, std::span<const Rational> c) {
    if (a.rows() != b.size()) throw InputError("lp: constraint matrix and rhs disagree");
    if (a.cols() != c.size()) throw InputError("lp: constraint matrix and objective disagree");
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    Tableau t;
    t.width = n + m;
    t.rows.assign(m, zero_vector(n + m + 1));
    t.basis.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        const bool flip = sgn(b[r]) < 0;
        for (std::size_t j = 0; j < n; ++j) t.rows[r][j] = flip ? Rational(-a(r, j)) : a(r, j);
        t.rows[r][n + r] = 1;
        t.rows[r][t.width] = flip ? Rational(-b[r]) : b[r];
        t.basis[r] = n + r;
    }

    // Phase 1: drive the artificial variables to zero.
    Vector phase1_cost = zero_vector(t.width);
    for (std::size_t r = 0; r < m; ++r) phase1_cost[n + r] = -1;
    run_simplex(t, phase1_cost, std::vector<bool>(t.width, true));
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis[r] >= n && sgn(t.rhs(r)) != 0) return {LpStatus::infeasible, {}, 0};

    // Pivot remaining (zero-level) artificials out; rows with no structural
    // entry are redundant and dropped.
    for (std::size_t r = 0; r < t.rows.size();) {
        if (t.basis[r] < n) {
            ++r;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n && !col; ++j)
            if (sgn(t.rows[r][j]) != 0) col = j;
        if (col) {
            t.pivot(r, *col);
            ++r;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
        }
    }

    Vector cost = zero_vector(t.width);
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
    std::vector<bool> allowed(t.width, false);
    for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
    if (run_simplex(t, cost, allowed) == PhaseResult::unbounded) return {LpStatus::unbounded, {}, 0};

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.x = zero_vector(n);
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.basis[r] < n) sol.x[t.basis[r]] = t.rhs(r);
    sol.objective = dot(c, sol.x);
    return sol;
}

ConeCertificate lp_feasible(const std::vector<Vector>& generators, std::span<const Rational> point) {
    for (const auto& g : generators)
        if (g.size() != point.size()) throw InputError("lp_feasible: ambient dimensions disagree");
    if (generators.empty()) return {is_zero(point), {}};
    const Matrix a = Matrix::from_columns(generators, point.size());
    const auto sol = lp_maximize(a, point, zero_vector(generators.size()));
    if (sol.status != LpStatus::optimal) return {false, {}};
    return {true, sol.x};
}

}  // namespace okb
