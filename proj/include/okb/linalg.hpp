#pragma once

#include "okb/rational.hpp"

#include <optional>

namespace okb {

/// Result of an exact linear solve: one particular solution (free variables
/// set to zero) and a basis of the kernel of the coefficient matrix.
struct LinearSolution {
    Vector particular;
    std::vector<Vector> kernel;
};

/// Solves A x = b exactly. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const Matrix& a, std::span<const Rational> b);

std::size_t rank(const Matrix& a);
std::size_t rank(const std::vector<Vector>& rows, std::size_t cols);
std::vector<Vector> kernel(const Matrix& a);
Rational determinant(const Matrix& a);

/// Rows of the reduced row echelon form that are nonzero: a basis of the row
/// space of `rows`.
std::vector<Vector> row_space_basis(const std::vector<Vector>& rows, std::size_t cols);

/// Orthogonal projection of v onto span(basis) (basis need not be independent).
Vector project_onto_span(std::span<const Rational> v, const std::vector<Vector>& basis);

/// Leading principal minors alternate in sign starting negative.
/// Throws InputError on non-symmetric input.
bool is_negative_definite(const Matrix& g);

struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia by exact symmetric (congruence) elimination.
Inertia inertia(const Matrix& g);

}  // namespace okb
