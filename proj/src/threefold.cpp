#include "okb/threefold.hpp"

#include "okb/lp.hpp"

namespace okb {

std::vector<Violation> validate(const ThreefoldData& t) {
    std::vector<Violation> out;
    auto error = [&](std::string code, std::string msg) { out.push_back({std::move(code), std::move(msg)}); };
    for (auto v : validate(t.surface, &t.flag)) {
        v.code = "surface/" + v.code;
        out.push_back(std::move(v));
    }
    if (t.rank == 0) error("dimension", "threefold rank must be positive");
    if (t.y1.size() != t.rank) error("dimension", "y1_class has wrong length");
    for (std::size_t i = 0; i < t.eff_generators.size(); ++i)
        if (t.eff_generators[i].size() != t.rank)
            error("dimension", "threefold eff_generators[" + std::to_string(i) + "] has wrong length");
    if (t.restriction.rows() != t.surface.rank || t.restriction.cols() != t.rank)
        error("dimension", "restriction must be " + std::to_string(t.surface.rank) + "x" + std::to_string(t.rank));
    if (!t.labels.empty() && t.labels.size() != t.rank) error("dimension", "threefold labels must name every basis vector");
    if (t.triple_products) {
        const std::size_t n = t.rank;
        if (t.triple_products->size() != n * n * n) {
            error("dimension", "triple_products must have rank^3 entries");
        } else {
            const auto& tp = *t.triple_products;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        const Rational& v = tp[(i * n + j) * n + k];
                        if (v != tp[(j * n + i) * n + k] || v != tp[(i * n + k) * n + j])
                            error("triple-symmetry", "triple_products is not symmetric at (" + std::to_string(i) +
                                                         "," + std::to_string(j) + "," + std::to_string(k) + ")");
                    }
        }
    }
    if (has_errors(out)) return out;

    if (t.eff_generators.empty()) {
        error("eff-full-dimensional", "threefold has no effective generators");
        return out;
    }
    if (!lp_feasible(t.eff_generators, t.y1).feasible) error("y1-in-eff", "y1_class is not effective");
    for (const auto& d : t.eff_generators) {
        const Vector r = t.restriction.apply(d);
        if (!is_pseudo_effective(t.surface, r))
            error("restriction-eff", "restriction of " + format_class(t.labels, d) + " is " +
                                         format_class(t.surface, r) + ", not pseudo-effective on the surface");
    }
    return out;
}

Rational triple_product(const ThreefoldData& t, std::span<const Rational> d, std::span<const Rational> e,
                        std::span<const Rational> f) {
    if (!t.triple_products) throw InputError("instance has no triple_products");
    const std::size_t n = t.rank;
    if (d.size() != n || e.size() != n || f.size() != n) throw InputError("triple_product: class length differs from rank");
    const auto& tp = *t.triple_products;
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(d[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(e[j]) == 0) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(f[k]) != 0) sum += d[i] * e[j] * f[k] * tp[(i * n + j) * n + k];
        }
    }
    return sum;
}

RationalCone restricted_cone_Q(const ThreefoldData& t) {
    std::vector<Vector> images;
    for (const auto& d : t.eff_generators) {
        Vector r = t.restriction.apply(d);
        if (!is_pseudo_effective(t.surface, r))
            throw InputError("restriction matrix inconsistent: " + format_class(t.surface, r) + " is not pseudo-effective");
        images.push_back(std::move(r));
    }
    return RationalCone::from_rays(t.surface.rank, images);
}

namespace {

// (a_x, a_y, a_D) on the surface side becomes (a_x, a_y, r^t a_D).
Vector pull_back(const Matrix& rt, const Vector& a) {
    const Vector cls(a.begin() + 2, a.end());
    return concat(Vector{a[0], a[1]}, rt.apply(cls));
}

}  // namespace

LiftedCone lift_cone(const ThreefoldData& t, const GlobalBodyCone& surface_global) {
    if (surface_global.valuation_dim != 2 || surface_global.rank != t.surface.rank)
        throw InputError("lift_cone: surface body cone does not match the threefold's surface");
    const std::size_t dim = 2 + t.rank;
    const Matrix rt = t.restriction.transpose();
    const auto q = restricted_cone_Q(t);
    const auto body = RationalCone::from_rays(2 + t.surface.rank, surface_global.vectors());
    const auto eff = RationalCone::from_rays(t.rank, t.eff_generators);

    std::vector<Vector> ineqs, eqs;
    for (const auto& a : body.inequalities()) ineqs.push_back(pull_back(rt, a));
    for (const auto& e : body.equations()) eqs.push_back(pull_back(rt, e));
    for (const auto& a : q.inequalities()) ineqs.push_back(concat(Vector{0, 0}, rt.apply(a)));
    for (const auto& e : q.equations()) eqs.push_back(concat(Vector{0, 0}, rt.apply(e)));
    for (std::size_t i = 0; i < 2; ++i) ineqs.push_back(unit_vector(dim, i));
    for (const auto& a : eff.inequalities()) ineqs.push_back(concat(Vector{0, 0}, a));
    for (const auto& e : eff.equations()) eqs.push_back(concat(Vector{0, 0}, e));

    LiftedCone out;
    out.rank = t.rank;
    out.cone = RationalCone::from_inequalities(dim, ineqs, eqs);
    if (!out.cone.is_pointed()) throw InternalError("lift_cone: pulled-back cone contains a line");
    out.rays = out.cone.rays();
    for (const auto& w : out.rays)
        for (const auto& x : w)
            if (x.get_den() != 1) throw InternalError("lift_cone: non-integral ray");

    out.body.valuation_dim = 3;
    out.body.rank = t.rank;
    out.body.labels = t.labels;
    out.body.generators.push_back({{1, 0, 0}, t.y1, false, "hyperplane-section"});
    for (const auto& w : out.rays)
        out.body.generators.push_back({{0, w[0], w[1]}, Vector(w.begin() + 2, w.end()), false, "lifted-ray"});
    mark_extremal(out.body);
    return out;
}

std::vector<PullbackCheck> pullback_checks(const ThreefoldData& t, const GlobalBodyCone& surface_global,
                                           const LiftedCone& lifted) {
    const auto q = restricted_cone_Q(t);
    const auto gens = surface_global.vectors();
    std::vector<PullbackCheck> out;
    for (std::size_t i = 0; i < lifted.rays.size(); ++i) {
        const auto& w = lifted.rays[i];
        const Vector cls(w.begin() + 2, w.end());
        const Vector image = t.restriction.apply(cls);
        PullbackCheck c;
        c.ray = i;
        // Generator 0 is the hyperplane section; lifted rays follow in order.
        c.first_coordinate_zero = sgn(lifted.body.generators[i + 1].valuation[0]) == 0;
        c.over_q = q.contains(image);
        c.certificate = lp_feasible(gens, concat(Vector{w[0], w[1]}, image));
        out.push_back(std::move(c));
    }
    return out;
}

Fiber3Extractor::Fiber3Extractor(const LiftedCone& lifted)
    : rank_(lifted.rank), cone_(RationalCone::from_rays(3 + lifted.rank, lifted.body.vectors())) {}

Polytope3 Fiber3Extractor::fiber(std::span<const Rational> d) const {
    if (d.size() != rank_) throw InputError("fiber3: class length differs from rank");
    std::vector<HalfSpace> hs;
    auto split = [&](const Vector& a) {
        const Vector cls(a.begin() + 3, a.end());
        return HalfSpace{{a[0], a[1], a[2]}, -dot(cls, d)};
    };
    for (const auto& a : cone_.inequalities()) hs.push_back(split(a));
    for (const auto& e : cone_.equations()) {
        auto h = split(e);
        hs.push_back(h);
        hs.push_back({scale(h.a, -1), -h.c});
    }
    for (std::size_t i = 0; i < 3; ++i) hs.push_back({unit_vector(3, i), 0});
    auto p = polytope_from_halfspaces(hs);
    if (!p) throw DomainError("fiber3 over " + to_string(d) + " is empty");
    return *p;
}

Polytope3 fiber3(const LiftedCone& lifted, std::span<const Rational> d) { return Fiber3Extractor(lifted).fiber(d); }

}  // namespace okb
