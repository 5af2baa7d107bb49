#pragma once

#include "okb/io.hpp"
#include "okb/minkowski.hpp"
#include "okb/threefold.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace okb::test {

inline Vector v(std::initializer_list<long> xs) {
    Vector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

/// mpq_class(p, d) does not reduce; everything built here goes through this.
inline Rational frac(long p, long d) {
    Rational r(p, d);
    r.canonicalize();
    return r;
}

inline Rational q(long p, long d = 1) { return frac(p, d); }

inline Polygon2 poly(std::initializer_list<std::pair<long, long>> pts) {
    std::vector<Point2> ps;
    for (auto [x, y] : pts) ps.push_back({Rational(x), Rational(y)});
    return hull2(ps);
}

inline std::set<Vector> as_set(const std::vector<Vector>& vs) { return {vs.begin(), vs.end()}; }

inline std::set<Vector> primitive_set(const std::vector<Vector>& vs) {
    std::set<Vector> out;
    for (const auto& x : vs) out.insert(primitive(x));
    return out;
}

// SplitMix64; small, seeded and identical on every platform.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long uniform(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Rational rational(long lo, long hi, long max_den = 4) {
        const long d = uniform(1, max_den);
        return frac(uniform(lo * d, hi * d), d);
    }
    template <class T>
    void shuffle(std::vector<T>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[next() % i]);
    }
};

/// Nonnegative combination of the effective generators, not all zero.
inline Vector random_effective(const SurfaceData& s, Rng& rng, long max_coeff = 5) {
    for (;;) {
        Vector d = zero_vector(s.rank);
        for (const auto& g : s.eff_generators) d = axpy(d, Rational(rng.uniform(0, max_coeff)), g);
        if (!is_zero(d)) return d;
    }
}

inline Point2 random_point(Rng& rng, long r = 6) { return {rng.rational(-r, r), rng.rational(-r, r)}; }

inline Polygon2 random_polygon(Rng& rng) {
    std::vector<Point2> pts;
    const long n = rng.uniform(1, 7);
    for (long i = 0; i < n; ++i) pts.push_back(random_point(rng));
    return hull2(pts);
}

inline std::string instance_path(const std::string& name) { return std::string(OKB_INSTANCE_DIR) + "/" + name + ".json"; }

inline Instance instance(const std::string& name) { return load_instance(instance_path(name)); }

inline SurfaceData surface(const std::string& name) { return instance(name).surface; }

inline SurfaceData hirzebruch(long e) {
    SurfaceData s;
    s.rank = 2;
    s.gram = Matrix::from_rows({v({-e, 1}), v({1, 0})}, 2);
    s.eff_generators = {v({1, 0}), v({0, 1})};
    if (e > 0) s.negative_curves = {v({1, 0})};
    s.labels = {"s", "f"};
    return s;
}

inline SurfaceData bl2p2() {
    SurfaceData s;
    s.rank = 3;
    s.gram = Matrix::from_rows({v({1, 0, 0}), v({0, -1, 0}), v({0, 0, -1})}, 3);
    s.eff_generators = {v({0, 1, 0}), v({0, 0, 1}), v({1, -1, -1})};
    s.negative_curves = s.eff_generators;
    s.labels = {"H", "E1", "E2"};
    return s;
}

inline SurfaceData p2() {
    SurfaceData s;
    s.rank = 1;
    s.gram = Matrix::from_rows({v({1})}, 1);
    s.eff_generators = {v({1})};
    s.labels = {"H"};
    return s;
}

inline std::vector<std::size_t> sorted(std::vector<std::size_t> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace okb::test
