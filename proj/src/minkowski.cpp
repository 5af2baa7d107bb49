#include "okb/minkowski.hpp"

#include "okb/linalg.hpp"
#include "okb/lp.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <random>
#include <set>

namespace okb {

namespace {

std::vector<Vector> gather(const std::vector<Vector>& rays, const std::vector<std::size_t>& idx) {
    std::vector<Vector> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(rays[i]);
    return out;
}

std::optional<std::size_t> find_ray(const std::vector<Vector>& rays, const Vector& v) {
    const auto it = std::find(rays.begin(), rays.end(), v);
    if (it == rays.end()) return std::nullopt;
    return static_cast<std::size_t>(it - rays.begin());
}

// Coordinates of p over linearly independent columns; nullopt if p is not in
// their span.
std::optional<Vector> coordinates(const std::vector<Vector>& columns, std::span<const Rational> p) {
    const auto sol = solve_linear(Matrix::from_columns(columns, p.size()), p);
    if (!sol) return std::nullopt;
    return sol->particular;
}

bool all_nonnegative(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) >= 0; });
}

// Star subdivision of a simplicial fan at a new ray.
void star_insert(std::vector<Vector>& rays, std::vector<std::vector<std::size_t>>& cones, const Vector& ray) {
    const std::size_t idx = rays.size();
    rays.push_back(ray);
    std::vector<std::vector<std::size_t>> next;
    for (auto& k : cones) {
        const auto x = coordinates(gather(rays, k), ray);
        if (!x || !all_nonnegative(*x)) {
            next.push_back(std::move(k));
            continue;
        }
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (sgn((*x)[i]) == 0) continue;
            auto piece = k;
            piece[i] = idx;
            std::sort(piece.begin(), piece.end());
            next.push_back(std::move(piece));
        }
    }
    cones = std::move(next);
}

std::vector<std::vector<std::size_t>> triangulate_piece(const std::vector<Vector>& rays,
                                                        const std::vector<std::size_t>& piece) {
    std::vector<std::vector<std::size_t>> out;
    for (auto simplex : triangulate_indices(gather(rays, piece))) {
        for (auto& i : simplex) i = piece[i];
        std::sort(simplex.begin(), simplex.end());
        out.push_back(std::move(simplex));
    }
    return out;
}

}  // namespace

MinkowskiFan minkowski_chambers(const RationalCone& eff, const std::vector<DivisorClass>& base) {
    const std::size_t rho = eff.ambient_dim();
    MinkowskiFan fan;
    for (const auto& b : base) {
        if (b.size() != rho) throw InputError("minkowski_chambers: base element has wrong length");
        if (!eff.contains(b)) throw InputError("minkowski_chambers: base element " + to_string(b) + " is not pseudo-effective");
        Vector p = primitive(b);
        if (is_zero(p)) throw InputError("minkowski_chambers: zero base element");
        if (!find_ray(fan.rays, p)) fan.rays.push_back(std::move(p));
    }
    std::vector<std::size_t> start;
    for (const auto& r : eff.rays()) {
        const auto i = find_ray(fan.rays, r);
        if (!i) throw InputError("minkowski_chambers: effective ray " + to_string(r) + " is missing from the base");
        start.push_back(*i);
    }
    std::sort(start.begin(), start.end());

    std::vector<std::vector<std::size_t>> pieces{start};
    for (std::size_t g = 0; g < fan.rays.size(); ++g) {
        const Vector& gamma = fan.rays[g];
        std::vector<std::vector<std::size_t>> next;
        for (auto& piece : pieces) {
            if (std::find(piece.begin(), piece.end(), g) != piece.end()) {
                next.push_back(std::move(piece));
                continue;
            }
            const auto cone = RationalCone::from_rays(rho, gather(fan.rays, piece));
            if (!cone.contains(gamma)) {
                next.push_back(std::move(piece));
                continue;
            }
            for (const auto& f : cone.inequalities()) {
                if (sgn(dot(f, gamma)) <= 0) continue;
                std::vector<std::size_t> sub;
                for (auto i : piece)
                    if (sgn(dot(f, fan.rays[i])) == 0) sub.push_back(i);
                sub.push_back(g);
                std::sort(sub.begin(), sub.end());
                next.push_back(std::move(sub));
            }
        }
        pieces = std::move(next);
    }

    for (const auto& piece : pieces)
        for (auto& simplex : triangulate_piece(fan.rays, piece)) fan.chambers.push_back(std::move(simplex));
    std::sort(fan.chambers.begin(), fan.chambers.end());
    return fan;
}

FanCheck check_fan_invariants(const RationalCone& eff, const MinkowskiFan& fan, const std::vector<DivisorClass>& base) {
    FanCheck out;
    auto problem = [&](std::string msg) {
        out.ok = false;
        out.problems.push_back(std::move(msg));
    };
    const std::size_t rho = eff.ambient_dim();
    std::vector<RationalCone> cones;
    for (std::size_t c = 0; c < fan.chambers.size(); ++c) {
        const auto& k = fan.chambers[c];
        const auto vs = gather(fan.rays, k);
        if (k.size() != rho || rank(vs, rho) != rho) {
            problem("chamber " + std::to_string(c) + " is not spanned by " + std::to_string(rho) + " independent rays");
            return out;
        }
        for (const auto& v : vs)
            if (!eff.contains(v)) problem("chamber " + std::to_string(c) + " has a ray outside the effective cone");
        cones.push_back(RationalCone::from_rays(rho, vs));
    }
    for (const auto& b : base)
        for (std::size_t c = 0; c < cones.size(); ++c)
            if (cones[c].contains_in_relative_interior(b) && !find_ray(fan.rays, primitive(b)))
                problem("base element " + to_string(b) + " lies inside chamber " + std::to_string(c));

    // facet -> (chamber, side of the opposite ray)
    std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, int>>> facets;
    for (std::size_t c = 0; c < fan.chambers.size(); ++c) {
        const auto& k = fan.chambers[c];
        for (std::size_t drop = 0; drop < k.size(); ++drop) {
            std::vector<std::size_t> f;
            for (std::size_t j = 0; j < k.size(); ++j)
                if (j != drop) f.push_back(k[j]);
            const auto ker = kernel(Matrix::from_rows(gather(fan.rays, f), rho));
            const Vector normal = primitive(ker.front());
            facets[f].emplace_back(c, sgn(dot(normal, fan.rays[k[drop]])));
        }
    }
    for (const auto& [f, owners] : facets) {
        const auto fv = gather(fan.rays, f);
        const bool on_boundary = std::any_of(eff.inequalities().begin(), eff.inequalities().end(), [&](const Vector& e) {
            return std::all_of(fv.begin(), fv.end(), [&](const Vector& v) { return sgn(dot(e, v)) == 0; });
        });
        std::string name = "facet {";
        for (std::size_t i = 0; i < f.size(); ++i) name += (i ? "," : "") + std::to_string(f[i]);
        name += "}";
        if (on_boundary) {
            if (owners.size() != 1) problem(name + " on the boundary belongs to " + std::to_string(owners.size()) + " chambers");
        } else if (owners.size() != 2) {
            problem(name + " in the interior belongs to " + std::to_string(owners.size()) + " chambers");
        } else if (owners[0].second == owners[1].second) {
            problem(name + " has both chambers on the same side");
        }
    }

    // A point off every chamber hyperplane must be covered exactly once.
    std::vector<Vector> hyperplanes;
    for (const auto& c : cones)
        for (const auto& f : c.inequalities()) hyperplanes.push_back(f);
    for (unsigned k = 1; k < 1000; ++k) {
        Vector p = zero_vector(rho);
        for (std::size_t j = 0; j < eff.rays().size(); ++j)
            p = axpy(p, Rational(1) + Rational(1, k + 7 * static_cast<unsigned>(j) + 3), eff.rays()[j]);
        const bool generic = std::none_of(hyperplanes.begin(), hyperplanes.end(),
                                          [&](const Vector& h) { return sgn(dot(h, p)) == 0; });
        if (!generic) continue;
        const auto hits = std::count_if(cones.begin(), cones.end(),
                                        [&](const RationalCone& c) { return c.contains_in_relative_interior(p); });
        if (hits != 1) problem("generic point " + to_string(p) + " is covered " + std::to_string(hits) + " times");
        break;
    }
    return out;
}

std::vector<DivisorClass> MinkowskiBase::classes() const {
    std::vector<DivisorClass> out;
    for (const auto& e : movable) out.push_back(e.divisor);
    for (const auto& e : fixed) out.push_back(e.divisor);
    return out;
}

MinkowskiBase compute_minkowski_base(const OkounkovEngine& engine) {
    const auto& s = engine.surface();
    const std::size_t rho = s.rank;
    const Vector flag = primitive(engine.flag_class());

    std::vector<Vector> chamber_rays;
    for (const auto& c : engine.chambers())
        for (const auto& g : c.generators) chamber_rays.push_back(primitive(g));
    sort_unique(chamber_rays);

    std::vector<Vector> rays = chamber_rays;
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& c : engine.chambers()) {
        std::vector<std::size_t> piece;
        for (const auto& g : c.generators) piece.push_back(*find_ray(rays, primitive(g)));
        std::sort(piece.begin(), piece.end());
        for (auto& simplex : triangulate_piece(rays, piece)) cones.push_back(std::move(simplex));
    }

    std::map<Vector, Polygon2> bodies;
    auto body = [&](const Vector& d) -> const Polygon2& {
        auto it = bodies.find(d);
        if (it == bodies.end()) it = bodies.emplace(d, engine.polygon(d).polygon).first;
        return it->second;
    };
    auto additive = [&](const std::vector<std::size_t>& k) {
        Vector sum = zero_vector(rho);
        Polygon2 parts;
        for (auto i : k) {
            sum = add(sum, rays[i]);
            parts = minkowski_sum(parts, body(rays[i]));
        }
        return engine.polygon(sum).polygon == parts;
    };

    // D - tA changes type where it meets a codimension-two face F of a
    // chamber, so the walls are cone(A, F).
    struct Wall {
        Vector normal;
        RationalCone half;
        std::vector<Vector> face;
    };
    std::vector<Wall> walls;
    {
        std::set<std::vector<Vector>> seen;
        for (const auto& c : engine.chambers()) {
            const auto cone = RationalCone::from_rays(rho, c.generators);
            const auto& ineq = cone.inequalities();
            for (std::size_t i = 0; i < ineq.size(); ++i)
                for (std::size_t j = i + 1; j < ineq.size(); ++j) {
                    std::vector<Vector> face;
                    for (const auto& r : cone.rays())
                        if (sgn(dot(ineq[i], r)) == 0 && sgn(dot(ineq[j], r)) == 0) face.push_back(primitive(r));
                    if (rank(face, rho) + 2 != rho) continue;
                    sort_unique(face);
                    if (!seen.insert(face).second) continue;
                    auto span = face;
                    span.push_back(flag);
                    const auto ker = kernel(Matrix::from_rows(span, rho));
                    if (ker.size() != 1) continue;
                    walls.push_back({ker.front(), RationalCone::from_rays(rho, span), face});
                }
        }
    }

    const std::size_t limit = 2 * chamber_rays.size();
    for (std::size_t round = 0;; ++round) {
        std::vector<std::size_t> failing;
        for (std::size_t c = 0; c < cones.size(); ++c)
            if (!additive(cones[c])) failing.push_back(c);
        if (failing.empty()) break;
        if (round >= limit) throw InternalError("linearity fan not reached");

        std::vector<Vector> candidates;
        auto propose = [&](Vector v) {
            v = primitive(v);
            if (is_zero(v) || find_ray(rays, v) || find_ray(candidates, v)) return;
            candidates.push_back(std::move(v));
        };
        for (auto c : failing) {
            const auto vs = gather(rays, cones[c]);
            if (const auto x = coordinates(vs, flag); x && all_nonnegative(*x)) propose(flag);
            for (const auto& w : walls) {
                // crossings of the wall with the edges of the cone
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = i + 1; j < vs.size(); ++j) {
                        const Rational a = dot(w.normal, vs[i]), b = dot(w.normal, vs[j]);
                        if (sgn(a) * sgn(b) >= 0) continue;
                        const Vector p = axpy(scale(vs[i], b), -a, vs[j]);
                        const Vector x = sgn(b) > 0 ? p : scale(p, -1);
                        if (w.half.contains(x) && !(!w.face.empty() && coordinates(w.face, x))) propose(x);
                    }
            }
        }
        if (candidates.empty()) throw InternalError("linearity fan not reached");
        for (const auto& v : candidates)
            if (!find_ray(rays, v)) star_insert(rays, cones, v);
    }

    // Ascending degree against the flag class, ties lexicographically
    // descending. Star insertion in this order reproduces the linearity fan
    // on the shipped instances; many other orders do not.
    MinkowskiBase out;
    std::vector<std::size_t> order(rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<Rational> degree;
    for (const auto& r : rays) degree.push_back(intersect(s, r, engine.flag_class()));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (degree[a] != degree[b]) return degree[a] < degree[b];
        return lex_less(rays[b], rays[a]);
    });
    for (auto i : order) {
        BaseElement e{rays[i], engine.polygon(rays[i]), false};
        e.indecomposable = is_lattice_indecomposable(e.body.polygon);
        const bool fixed = is_zero(zariski_decompose(s, rays[i]).positive);
        (fixed ? out.fixed : out.movable).push_back(std::move(e));
    }
    out.linearity_fan.rays = rays;
    for (auto& k : cones) std::sort(k.begin(), k.end());
    std::sort(cones.begin(), cones.end());
    out.linearity_fan.chambers = std::move(cones);
    return out;
}

BaseDecomposition decompose_with_negative_parts(const MinkowskiBase& base, const MinkowskiFan& fan,
                                                std::span<const Rational> d) {
    const auto classes = base.classes();
    std::vector<const Polygon2*> bodies;
    for (const auto& e : base.movable) bodies.push_back(&e.body.polygon);
    for (const auto& e : base.fixed) bodies.push_back(&e.body.polygon);

    std::vector<std::size_t> to_base(fan.rays.size());
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        std::optional<std::size_t> j;
        for (std::size_t k = 0; k < classes.size() && !j; ++k)
            if (primitive(classes[k]) == fan.rays[i]) j = k;
        if (!j) throw InputError("decompose: fan ray " + to_string(fan.rays[i]) + " is not a base element");
        to_base[i] = *j;
    }

    for (std::size_t c = 0; c < fan.chambers.size(); ++c) {
        const auto& k = fan.chambers[c];
        std::vector<Vector> cols;
        for (auto i : k) cols.push_back(classes[to_base[i]]);
        const auto x = coordinates(cols, d);
        if (!x || !all_nonnegative(*x)) continue;
        BaseDecomposition out;
        out.chamber = c;
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (sgn((*x)[j]) == 0) continue;
            out.coefficients.emplace_back(to_base[k[j]], (*x)[j]);
            out.reconstruction = minkowski_sum(out.reconstruction, scale(*bodies[to_base[k[j]]], (*x)[j]));
        }
        std::sort(out.coefficients.begin(), out.coefficients.end());
        return out;
    }
    throw InternalError("decompose: " + to_string(d) + " lies in no Minkowski chamber");
}

std::vector<DivisorClass> sample_pseudo_effective(const SurfaceData& s, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<DivisorClass> out;
    while (out.size() < count) {
        Vector d = zero_vector(s.rank);
        for (const auto& g : s.eff_generators) d = axpy(d, Rational(static_cast<long>(rng() % 7)), g);
        if (!is_zero(d)) out.push_back(std::move(d));
    }
    return out;
}

namespace {

std::optional<VerifyFailure> verify_one(const OkounkovEngine& engine, const MinkowskiBase& base,
                                        const MinkowskiFan& fan, const DivisorClass& d) {
    try {
        const auto expected = engine.polygon(d).polygon;
        const auto dec = decompose_with_negative_parts(base, fan, d);
        if (dec.reconstruction == expected) return std::nullopt;
        return VerifyFailure{d, "polygon mismatch", expected, dec.reconstruction};
    } catch (const std::exception& e) {
        return VerifyFailure{d, e.what(), Polygon2{}, Polygon2{}};
    }
}

MinkowskiFan fan_for(const OkounkovEngine& engine, const MinkowskiBase& base) {
    return minkowski_chambers(effective_cone(engine.surface()), base.classes());
}

}  // namespace

VerifyReport verify_minkowski(const OkounkovEngine& engine, const MinkowskiBase& base, std::size_t samples,
                              std::uint64_t seed) {
    VerifyReport report{samples, seed, {}};
    const auto fan = fan_for(engine, base);
    for (const auto& d : sample_pseudo_effective(engine.surface(), samples, seed))
        if (auto f = verify_one(engine, base, fan, d)) report.failures.push_back(std::move(*f));
    return report;
}

VerifyReport verify_minkowski_parallel(const OkounkovEngine& engine, const MinkowskiBase& base, std::size_t samples,
                                       std::uint64_t seed, int jobs) {
    VerifyReport report{samples, seed, {}};
    const auto fan = fan_for(engine, base);
    const auto ds = sample_pseudo_effective(engine.surface(), samples, seed);
    std::vector<std::optional<VerifyFailure>> slots(ds.size());
    const auto n = static_cast<std::int64_t>(ds.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        slots[k] = verify_one(engine, base, fan, ds[k]);
    }
    for (auto& f : slots)
        if (f) report.failures.push_back(std::move(*f));
    return report;
}

std::vector<Vector> GlobalBodyCone::vectors() const {
    std::vector<Vector> out;
    for (const auto& g : generators) out.push_back(g.full());
    return out;
}

void mark_extremal(GlobalBodyCone& g) {
    const auto sel = extremal_indices(g.vectors());
    for (auto& gen : g.generators) gen.extremal = false;
    for (auto i : sel.kept) g.generators[i].extremal = true;
}

GlobalBodyCone global_generators_from_base(const MinkowskiBase& base, const SurfaceData& s) {
    GlobalBodyCone g;
    g.rank = s.rank;
    g.labels = s.labels;
    auto emit = [&](const BaseElement& e, const char* source) {
        for (const auto& v : e.body.polygon.vertices())
            g.generators.push_back({{v.x, v.y}, e.divisor, false, source});
    };
    for (const auto& e : base.movable) emit(e, "movable-vertex");
    for (const auto& e : base.fixed) emit(e, "fixed-vertex");
    mark_extremal(g);
    return g;
}

GlobalBodyCone global_generators_surface(const OkounkovEngine& engine) {
    const auto& s = engine.surface();
    std::vector<Vector> ds;
    for (const auto& c : engine.chambers())
        for (const auto& r : c.generators) ds.push_back(primitive(r));
    sort_unique(ds);
    std::reverse(ds.begin(), ds.end());

    GlobalBodyCone g;
    g.rank = s.rank;
    g.labels = s.labels;
    for (const auto& d : ds) {
        const Rational pa = intersect(s, zariski_decompose(s, d).positive, engine.flag_class());
        g.generators.push_back({{0, 0}, d, false, "chamber-ray"});
        if (sgn(pa) != 0) g.generators.push_back({{0, pa}, d, false, "chamber-slice"});
    }
    g.generators.push_back({{1, 0}, engine.flag_class(), false, "flag"});
    mark_extremal(g);
    return g;
}

FiberExtractor::FiberExtractor(const GlobalBodyCone& g)
    : body_(g), cone_(RationalCone::from_rays(g.valuation_dim + g.rank, g.vectors())) {
    if (g.valuation_dim != 2) throw InputError("FiberExtractor: expected a two-dimensional valuation part");
}

Polygon2 FiberExtractor::fiber(std::span<const Rational> d) const {
    if (d.size() != body_.rank) throw InputError("fiber: class length differs from rank");
    std::vector<HalfPlane> hs;
    auto split = [&](const Vector& a) {
        const Vector cls(a.begin() + 2, a.end());
        return HalfPlane{a[0], a[1], -dot(cls, d)};
    };
    for (const auto& a : cone_.inequalities()) hs.push_back(split(a));
    for (const auto& e : cone_.equations()) {
        const auto h = split(e);
        hs.push_back(h);
        hs.push_back({-h.a, -h.b, -h.c});
    }
    // Half-planes x >= 0, y >= 0 bound degenerate systems without changing
    // the fiber: every generator has a nonnegative valuation part.
    hs.push_back({1, 0, 0});
    hs.push_back({0, 1, 0});
    auto p = polygon_from_halfplanes(hs);
    if (!p) throw DomainError("fiber over " + to_string(d) + " is empty");
    return *p;
}

ConeCertificate FiberExtractor::certificate(std::span<const Rational> x, std::span<const Rational> d) const {
    return lp_feasible(body_.vectors(), concat(x, d));
}

Polygon2 fiber(const GlobalBodyCone& g, std::span<const Rational> d) { return FiberExtractor(g).fiber(d); }

bool same_cone(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    auto inside = [](const std::vector<Vector>& xs, const std::vector<Vector>& gens) {
        return std::all_of(xs.begin(), xs.end(), [&](const Vector& x) { return lp_feasible(gens, x).feasible; });
    };
    return inside(a, b) && inside(b, a);
}

}  // namespace okb
