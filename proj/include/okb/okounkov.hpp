#pragma once

#include "okb/polygon.hpp"
#include "okb/zariski.hpp"

#include <utility>

namespace okb {

struct OkounkovPolygon {
    Polygon2 polygon;
    std::vector<std::pair<Rational, Rational>> breakpoints;  // (t, beta(t)), t ascending
    Rational mu = 0;
    DivisorClass divisor;
};

/// Okounkov polygons for a surface with a general flag whose curve class is A.
///
/// For the general flag the lower boundary of the body is the t-axis, so
/// Delta(D) = {(t, y) : 0 <= t <= mu, 0 <= y <= beta(t)} where mu is the
/// largest t with D - tA pseudo-effective and beta(t) = P(D - tA) . A.
/// beta is linear between chamber walls, so the polygon is the hull of its
/// values at wall crossings.
class OkounkovEngine {
public:
    OkounkovEngine(SurfaceData surface, DivisorClass flag_class);
    OkounkovEngine(SurfaceData surface, DivisorClass flag_class, std::vector<Chamber> chambers);

    const SurfaceData& surface() const { return surface_; }
    const DivisorClass& flag_class() const { return flag_; }
    const std::vector<Chamber>& chambers() const { return chambers_; }

    Rational mu(std::span<const Rational> d) const;
    /// Throws DomainError for t outside [0, mu(D)].
    Rational beta(std::span<const Rational> d, const Rational& t) const;
    /// Checks 2 * area = P.P on every call and throws InternalError otherwise.
    OkounkovPolygon polygon(std::span<const Rational> d) const;

private:
    Rational beta_unchecked(std::span<const Rational> d, const Rational& t) const;

    SurfaceData surface_;
    DivisorClass flag_;
    std::vector<Chamber> chambers_;
    std::vector<Vector> walls_;  // distinct facet normals of all chamber closures
};

Rational mu(const SurfaceData& s, std::span<const Rational> d, std::span<const Rational> a);
Rational beta(const SurfaceData& s, std::span<const Rational> d, std::span<const Rational> a, const Rational& t);
OkounkovPolygon okounkov_polygon(const SurfaceData& s, const FlagData& flag, std::span<const Rational> d);

/// Serial reference and OpenMP batch evaluation of many polygons; both return
/// results in input order.
std::vector<OkounkovPolygon> okounkov_polygons_serial(const OkounkovEngine& e, const std::vector<DivisorClass>& ds);
std::vector<OkounkovPolygon> okounkov_polygons_parallel(const OkounkovEngine& e, const std::vector<DivisorClass>& ds,
                                                        int jobs);

}  // namespace okb
