#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace okb {

using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

/// Malformed input: dimension mismatch, bad file contents, unmet preconditions.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (e.g. a class
/// that is not pseudo-effective).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A postcondition that should hold by construction failed; usually a sign
/// that the instance data is inconsistent.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Parses "p", "-p" or "p/q". Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);
std::string to_string(std::span<const Rational> v);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Vector add(std::span<const Rational> a, std::span<const Rational> b);
Vector sub(std::span<const Rational> a, std::span<const Rational> b);
Vector scale(std::span<const Rational> a, const Rational& s);
/// a + s * b
Vector axpy(std::span<const Rational> a, const Rational& s, std::span<const Rational> b);
Vector concat(std::span<const Rational> a, std::span<const Rational> b);

bool is_zero(std::span<const Rational> v);

/// Positive multiple of v with coprime integer entries. The zero vector maps
/// to itself. Direction is preserved (no sign normalization).
Vector primitive(std::span<const Rational> v);

/// True iff a = c * b for some c > 0.
bool positively_proportional(std::span<const Rational> a, std::span<const Rational> b);

bool lex_less(std::span<const Rational> a, std::span<const Rational> b);

/// Sorts lexicographically and removes exact duplicates.
void sort_unique(std::vector<Vector>& vs);

/// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    Vector column(std::size_t c) const;

    Matrix transpose() const;
    Vector apply(std::span<const Rational> v) const;
    Matrix operator*(const Matrix& other) const;

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

}  // namespace okb
