#pragma once

#include "okb/rational.hpp"

#include <optional>
#include <string>

namespace okb {

struct Point2 {
    Rational x = 0;
    Rational y = 0;

    friend bool operator==(const Point2&, const Point2&) = default;
    friend bool operator<(const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

Point2 operator+(const Point2& a, const Point2& b);
Point2 operator-(const Point2& a, const Point2& b);
Point2 operator*(const Rational& s, const Point2& p);
/// z-component of a x b.
Rational cross(const Point2& a, const Point2& b);

/// Convex polygon in Q^2 in canonical form: vertices counterclockwise,
/// starting from the lexicographically smallest, no three collinear.
/// A single point or a segment is a legal (degenerate) polygon.
class Polygon2 {
public:
    /// The point (0,0).
    Polygon2() : vertices_{Point2{}} {}

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    /// 0 for a point, 1 for a segment, 2 otherwise.
    int dimension() const { return vertices_.size() >= 3 ? 2 : static_cast<int>(vertices_.size()) - 1; }

    friend bool operator==(const Polygon2&, const Polygon2&) = default;

private:
    friend Polygon2 hull2(std::vector<Point2> points);
    std::vector<Point2> vertices_;
};

/// Canonical convex hull (Andrew's monotone chain). Throws InputError on an
/// empty point list.
Polygon2 hull2(std::vector<Point2> points);

Rational polygon_area(const Polygon2& p);

/// Merges the edge sequences of both polygons in angular order.
Polygon2 minkowski_sum(const Polygon2& p, const Polygon2& q);

/// s * P for s >= 0; s = 0 gives the point (0,0).
Polygon2 scale(const Polygon2& p, const Rational& s);
Polygon2 translate(const Polygon2& p, const Point2& by);

bool contains(const Polygon2& p, const Point2& point);
/// Q is a subset of P.
bool contains(const Polygon2& p, const Polygon2& q);

/// a*x + b*y >= c
struct HalfPlane {
    Rational a, b, c;
};

/// Intersection of half-planes, assumed bounded. nullopt when empty.
std::optional<Polygon2> polygon_from_halfplanes(const std::vector<HalfPlane>& hs);

/// Lattice indecomposability criterion: a point, a primitive segment, or a
/// triangle whose edges are primitive lattice vectors.
bool is_lattice_indecomposable(const Polygon2& p);

std::string to_string(const Polygon2& p);

/// Exact convex polytope in Q^3 given by its vertices, sorted
/// lexicographically.
struct Polytope3 {
    std::vector<Vector> vertices;

    bool contains(std::span<const Rational> point) const;
    Rational volume() const;
};

/// a . x >= c with a in Q^3.
struct HalfSpace {
    Vector a;
    Rational c;
};

/// Vertex enumeration of a bounded intersection of half-spaces in Q^3 by
/// exhausting triples of boundary planes. nullopt when empty.
std::optional<Polytope3> polytope_from_halfspaces(const std::vector<HalfSpace>& hs);

}  // namespace okb
