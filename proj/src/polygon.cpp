#include "okb/polygon.hpp"

#include "okb/cone.hpp"
#include "okb/linalg.hpp"
#include "okb/lp.hpp"

#include <algorithm>

namespace okb {

Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(const Rational& s, const Point2& p) { return {s * p.x, s * p.y}; }
Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

Polygon2 hull2(std::vector<Point2> points) {
    if (points.empty()) throw InputError("hull2: empty point list");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    Polygon2 out;
    if (points.size() == 1) {
        out.vertices_ = points;
        return out;
    }
    std::vector<Point2> h(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
        while (k >= 2 && sgn(cross(h[k - 1] - h[k - 2], p - h[k - 2])) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        const auto& p = points[i];
        while (k >= lower && sgn(cross(h[k - 1] - h[k - 2], p - h[k - 2])) <= 0) --k;
        h[k++] = p;
    }
    h.resize(k - 1);
    out.vertices_ = std::move(h);
    return out;
}

Rational polygon_area(const Polygon2& p) {
    const auto& v = p.vertices();
    if (v.size() < 3) return 0;
    Rational twice = 0;
    for (std::size_t i = 0; i < v.size(); ++i) twice += cross(v[i], v[(i + 1) % v.size()]);
    return abs(twice) / 2;
}

namespace {

// Angular position in (-pi/2, 3pi/2]: half 0 is x > 0 or the positive y axis.
int half_of(const Point2& e) { return (sgn(e.x) > 0 || (sgn(e.x) == 0 && sgn(e.y) > 0)) ? 0 : 1; }

bool angle_less(const Point2& a, const Point2& b) {
    const int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    return sgn(cross(a, b)) > 0;
}

std::vector<Point2> edges(const Polygon2& p) {
    const auto& v = p.vertices();
    std::vector<Point2> e;
    if (v.size() < 2) return e;
    for (std::size_t i = 0; i < v.size(); ++i) e.push_back(v[(i + 1) % v.size()] - v[i]);
    return e;
}

}  // namespace

Polygon2 minkowski_sum(const Polygon2& p, const Polygon2& q) {
    auto e = edges(p);
    const auto eq = edges(q);
    // Both inputs start at their lex-smallest vertex, so each edge list is
    // already angle-sorted; a stable merge keeps equal directions adjacent.
    const auto mid = static_cast<std::ptrdiff_t>(e.size());
    e.insert(e.end(), eq.begin(), eq.end());
    std::inplace_merge(e.begin(), e.begin() + mid, e.end(), angle_less);

    std::vector<Point2> pts{p.vertices().front() + q.vertices().front()};
    for (std::size_t i = 0; i + 1 < e.size(); ++i) pts.push_back(pts.back() + e[i]);
    return hull2(std::move(pts));
}

Polygon2 scale(const Polygon2& p, const Rational& s) {
    if (sgn(s) < 0) throw InputError("scale: negative factor");
    std::vector<Point2> pts;
    for (const auto& v : p.vertices()) pts.push_back(s * v);
    return hull2(std::move(pts));
}

Polygon2 translate(const Polygon2& p, const Point2& by) {
    std::vector<Point2> pts;
    for (const auto& v : p.vertices()) pts.push_back(v + by);
    return hull2(std::move(pts));
}

bool contains(const Polygon2& p, const Point2& point) {
    const auto& v = p.vertices();
    if (v.size() == 1) return v.front() == point;
    if (v.size() == 2) {
        if (sgn(cross(v[1] - v[0], point - v[0])) != 0) return false;
        return !(point < v[0]) && !(v[1] < point);
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(cross(v[(i + 1) % v.size()] - v[i], point - v[i])) < 0) return false;
    return true;
}

bool contains(const Polygon2& p, const Polygon2& q) {
    return std::all_of(q.vertices().begin(), q.vertices().end(), [&](const Point2& v) { return contains(p, v); });
}

std::optional<Polygon2> polygon_from_halfplanes(const std::vector<HalfPlane>& hs) {
    std::vector<Point2> candidates;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            const Rational det = hs[i].a * hs[j].b - hs[i].b * hs[j].a;
            if (sgn(det) == 0) continue;
            Point2 p{(hs[i].c * hs[j].b - hs[i].b * hs[j].c) / det, (hs[i].a * hs[j].c - hs[i].c * hs[j].a) / det};
            const bool feasible = std::all_of(hs.begin(), hs.end(), [&](const HalfPlane& h) {
                return h.a * p.x + h.b * p.y >= h.c;
            });
            if (feasible) candidates.push_back(std::move(p));
        }
    }
    if (candidates.empty()) return std::nullopt;
    return hull2(std::move(candidates));
}

namespace {

bool primitive_lattice_vector(const Point2& e) {
    if (e.x.get_den() != 1 || e.y.get_den() != 1) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), e.x.get_num_mpz_t(), e.y.get_num_mpz_t());
    return g == 1;
}

}  // namespace

bool is_lattice_indecomposable(const Polygon2& p) {
    if (p.size() == 1) return true;
    if (p.size() > 3) return false;
    const auto e = edges(p);
    if (p.size() == 2) return primitive_lattice_vector(e.front());
    return std::all_of(e.begin(), e.end(), primitive_lattice_vector);
}

std::string to_string(const Polygon2& p) {
    std::string s = "hull{";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += "(" + to_string(p.vertices()[i].x) + "," + to_string(p.vertices()[i].y) + ")";
    }
    return s + "}";
}

bool Polytope3::contains(std::span<const Rational> point) const {
    if (point.size() != 3) throw InputError("Polytope3::contains: expected a point in Q^3");
    // point = sum l_i v_i with l >= 0, sum l_i = 1
    std::vector<Vector> lifted;
    for (const auto& v : vertices) lifted.push_back(concat(std::vector<Rational>{1}, v));
    return lp_feasible(lifted, concat(std::vector<Rational>{1}, point)).feasible;
}

Rational Polytope3::volume() const {
    if (vertices.size() < 4) return 0;
    std::vector<Vector> lifted;
    for (const auto& v : vertices) lifted.push_back(concat(std::vector<Rational>{1}, v));
    if (rank(lifted, 4) < 4) return 0;
    Rational total = 0;
    for (const auto& simplex : triangulate_indices(lifted)) {
        if (simplex.size() < 4) continue;
        Matrix m(4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = lifted[simplex[r]][c];
        total += abs(determinant(m));
    }
    return total / 6;
}

std::optional<Polytope3> polytope_from_halfspaces(const std::vector<HalfSpace>& hs) {
    for (const auto& h : hs)
        if (h.a.size() != 3) throw InputError("polytope_from_halfspaces: expected normals in Q^3");
    std::vector<Vector> vertices;
    const std::size_t n = hs.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Matrix m = Matrix::from_rows({hs[i].a, hs[j].a, hs[k].a}, 3);
                if (sgn(determinant(m)) == 0) continue;
                const auto sol = solve_linear(m, std::vector<Rational>{hs[i].c, hs[j].c, hs[k].c});
                const Vector& p = sol->particular;
                const bool feasible =
                    std::all_of(hs.begin(), hs.end(), [&](const HalfSpace& h) { return dot(h.a, p) >= h.c; });
                if (feasible) vertices.push_back(p);
            }
    if (vertices.empty()) return std::nullopt;
    sort_unique(vertices);
    return Polytope3{std::move(vertices)};
}

}  // namespace okb
