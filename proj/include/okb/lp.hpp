#pragma once

#include "okb/rational.hpp"

namespace okb {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Vector x;
    Rational objective = 0;
};

/// maximize c.x subject to A x = b, x >= 0.
///
/// Dense two-phase tableau simplex over the rationals. Both phases pivot
/// with Bland's rule (lowest-index entering column, lowest-index leaving
/// basic variable on ratio ties), so the method terminates on degenerate
/// problems without perturbation.
LpSolution lp_maximize(const Matrix& a, std::span<const Rational> b, std::span<const Rational> c);

/// Outcome of a cone membership query. When `feasible`, `coefficients`
/// holds nonnegative weights with sum_i coefficients[i] * generators[i] == point.
struct ConeCertificate {
    bool feasible = false;
    Vector coefficients;
};

/// Exact membership of `point` in cone(generators) with a certificate.
ConeCertificate lp_feasible(const std::vector<Vector>& generators, std::span<const Rational> point);

}  // namespace okb
