#include "okb/rational.hpp"

#include <algorithm>
#include <cctype>

namespace okb {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

void require_same_size(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw InputError("vector length mismatch");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num)) throw InputError("not a rational: '" + std::string(text) + "'");
    std::string num_s(num);
    if (num_s[0] == '+') num_s.erase(0, 1);
    if (slash == std::string_view::npos) return Rational(Integer(num_s));
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw InputError("not a rational: '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
    Rational q(Integer(num_s), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(std::span<const Rational> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out + ")";
}

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v = zero_vector(n);
    v.at(i) = 1;
    return v;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    require_same_size(a, b);
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

Vector add(std::span<const Rational> a, std::span<const Rational> b) {
    require_same_size(a, b);
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector sub(std::span<const Rational> a, std::span<const Rational> b) {
    require_same_size(a, b);
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector scale(std::span<const Rational> a, const Rational& s) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Vector axpy(std::span<const Rational> a, const Rational& s, std::span<const Rational> b) {
    require_same_size(a, b);
    Vector r(a.begin(), a.end());
    if (sgn(s) == 0) return r;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * b[i];
    return r;
}

Vector concat(std::span<const Rational> a, std::span<const Rational> b) {
    Vector r(a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Vector primitive(std::span<const Rational> v) {
    Integer den_lcm = 1;
    for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    Integer g = 0;
    std::vector<Integer> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = v[i].get_num() * (den_lcm / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    Vector r(v.size());
    if (g == 0) return zero_vector(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(ints[i] / g);
    return r;
}

bool positively_proportional(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) return false;
    if (is_zero(a) || is_zero(b)) return is_zero(a) && is_zero(b);
    return primitive(a) == primitive(b);
}

bool lex_less(std::span<const Rational> a, std::span<const Rational> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_unique(std::vector<Vector>& vs) {
    std::sort(vs.begin(), vs.end(), [](const Vector& a, const Vector& b) { return lex_less(a, b); });
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InputError("matrix row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw InputError("matrix column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vector Matrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return Vector(s.begin(), s.end());
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = dot(row(r), v);
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw InputError("matrix product dimension mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (sgn((*this)(r, k)) == 0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += (*this)(r, k) * other(k, c);
        }
    return out;
}

bool Matrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
}

}  // namespace okb
