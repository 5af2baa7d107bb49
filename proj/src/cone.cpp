#include "okb/cone.hpp"

#include "okb/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <numeric>

namespace okb {

namespace {

class Bitset {
public:
    explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    Bitset operator&(const Bitset& o) const {
        Bitset r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
        return r;
    }
    bool subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~o.words_[i]) != 0) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct DdRay {
    Vector v;
    Bitset tight;
};

void check_dims(std::size_t dim, const std::vector<Vector>& vs, const char* what) {
    for (const auto& v : vs)
        if (v.size() != dim) throw InputError(std::string(what) + ": expected length " + std::to_string(dim));
}

// Canonical basis of a subspace: reduced row echelon rows, made primitive.
std::vector<Vector> canonical_basis(const std::vector<Vector>& spanning, std::size_t dim) {
    auto basis = row_space_basis(spanning, dim);
    for (auto& b : basis) b = primitive(b);
    return basis;
}

}  // namespace

Generators double_description(std::size_t dim, const std::vector<Vector>& inequalities,
                              const std::vector<Vector>& equations) {
    check_dims(dim, inequalities, "double_description inequality");
    check_dims(dim, equations, "double_description equation");

    std::vector<Vector> constraints;
    constraints.reserve(inequalities.size() + 2 * equations.size());
    for (const auto& e : equations) {
        constraints.push_back(e);
        constraints.push_back(scale(e, -1));
    }
    for (const auto& a : inequalities) constraints.push_back(a);
    const std::size_t m = constraints.size();

    std::vector<Vector> lineality;
    for (std::size_t i = 0; i < dim; ++i) lineality.push_back(unit_vector(dim, i));
    std::vector<DdRay> rays;

    for (std::size_t k = 0; k < m; ++k) {
        const Vector& a = constraints[k];
        if (is_zero(a)) {
            for (auto& r : rays) r.tight.set(k);
            continue;
        }
        auto pivot_it = std::find_if(lineality.begin(), lineality.end(),
                                     [&](const Vector& l) { return sgn(dot(a, l)) != 0; });
        if (pivot_it != lineality.end()) {
            Vector l = *pivot_it;
            lineality.erase(pivot_it);
            Rational al = dot(a, l);
            if (sgn(al) < 0) {
                l = scale(l, -1);
                al = -al;
            }
            for (auto& other : lineality) other = primitive(axpy(other, -dot(a, other) / al, l));
            for (auto& r : rays) {
                r.v = primitive(axpy(r.v, -dot(a, r.v) / al, l));
                r.tight.set(k);
            }
            DdRay fresh{primitive(l), Bitset(m)};
            for (std::size_t j = 0; j < k; ++j) fresh.tight.set(j);
            rays.push_back(std::move(fresh));
            continue;
        }

        std::vector<Rational> value(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            value[i] = dot(a, rays[i].v);
            if (sgn(value[i]) > 0) pos.push_back(i);
            else if (sgn(value[i]) < 0) neg.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (sgn(value[i]) == 0) rays[i].tight.set(k);
            continue;
        }

        const std::size_t min_tight = (dim >= lineality.size() + 2) ? dim - lineality.size() - 2 : 0;
        std::vector<DdRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (sgn(value[i]) < 0) continue;
            DdRay r = rays[i];
            if (sgn(value[i]) == 0) r.tight.set(k);
            next.push_back(std::move(r));
        }
        for (auto p : pos) {
            for (auto n : neg) {
                const Bitset common = rays[p].tight & rays[n].tight;
                if (common.count() < min_tight) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == n) continue;
                    if (common.subset_of(rays[o].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                // value[p] > 0 > value[n]; the combination is tight on a.
                Vector v = axpy(scale(rays[n].v, value[p]), -value[n], rays[p].v);
                DdRay r{primitive(v), common};
                r.tight.set(k);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }

    Generators out;
    out.lineality = canonical_basis(lineality, dim);
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    sort_unique(out.rays);
    return out;
}

RationalCone RationalCone::from_rays(std::size_t dim, std::vector<Vector> generators) {
    check_dims(dim, generators, "RationalCone::from_rays");
    std::erase_if(generators, [](const Vector& g) { return is_zero(g); });
    RationalCone c;
    c.dim_ = dim;
    c.finish_from_generators(std::move(generators), {});
    // Re-derive extreme rays from the facet description.
    const auto primal = double_description(dim, c.inequalities_, c.equations_);
    c.rays_ = primal.rays;
    c.lineality_ = primal.lineality;
    c.check_consistency();
    return c;
}

RationalCone RationalCone::from_inequalities(std::size_t dim, const std::vector<Vector>& inequalities,
                                             const std::vector<Vector>& equations) {
    const auto primal = double_description(dim, inequalities, equations);
    RationalCone c;
    c.dim_ = dim;
    c.finish_from_generators(primal.rays, primal.lineality);
    c.check_consistency();
    return c;
}

void RationalCone::finish_from_generators(std::vector<Vector> generators, std::vector<Vector> lineality) {
    for (auto& g : generators) g = primitive(g);
    sort_unique(generators);
    const auto dual = double_description(dim_, generators, lineality);
    equations_ = dual.lineality;

    std::vector<Vector> span = generators;
    span.insert(span.end(), lineality.begin(), lineality.end());
    const auto span_basis = row_space_basis(span, dim_);
    std::vector<Vector> facets;
    for (const auto& y : dual.rays) {
        Vector f = primitive(equations_.empty() ? y : project_onto_span(y, span_basis));
        if (!is_zero(f)) facets.push_back(std::move(f));
    }
    sort_unique(facets);
    inequalities_ = std::move(facets);
    rays_ = std::move(generators);
    lineality_ = canonical_basis(lineality, dim_);
}

void RationalCone::check_consistency() {
    consistent_ = true;
    for (const auto& r : rays_) {
        for (const auto& a : inequalities_)
            if (sgn(dot(a, r)) < 0) consistent_ = false;
        for (const auto& e : equations_)
            if (sgn(dot(e, r)) != 0) consistent_ = false;
    }
    for (const auto& l : lineality_) {
        for (const auto& a : inequalities_)
            if (sgn(dot(a, l)) != 0) consistent_ = false;
        for (const auto& e : equations_)
            if (sgn(dot(e, l)) != 0) consistent_ = false;
    }
}

bool RationalCone::contains(std::span<const Rational> v) const {
    if (v.size() != dim_) throw InputError("RationalCone::contains: dimension mismatch");
    for (const auto& e : equations_)
        if (sgn(dot(e, v)) != 0) return false;
    for (const auto& a : inequalities_)
        if (sgn(dot(a, v)) < 0) return false;
    return true;
}

bool RationalCone::contains_in_relative_interior(std::span<const Rational> v) const {
    if (v.size() != dim_) throw InputError("RationalCone::contains: dimension mismatch");
    for (const auto& e : equations_)
        if (sgn(dot(e, v)) != 0) return false;
    for (const auto& a : inequalities_)
        if (sgn(dot(a, v)) <= 0) return false;
    return true;
}

ConeCertificate RationalCone::certificate(std::span<const Rational> v) const {
    std::vector<Vector> gens = rays_;
    for (const auto& l : lineality_) {
        gens.push_back(l);
        gens.push_back(scale(l, -1));
    }
    auto cert = lp_feasible(gens, v);
    if (cert.feasible) cert.coefficients.resize(rays_.size());
    return cert;
}

ExtremalSelection extremal_indices(const std::vector<Vector>& generators) {
    ExtremalSelection out;
    if (generators.empty()) return out;
    const std::size_t dim = generators.front().size();
    check_dims(dim, generators, "extremal_rays");

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (is_zero(generators[i])) {
            out.warnings.push_back("extremal_rays: dropped zero generator #" + std::to_string(i));
            continue;
        }
        const bool duplicate = std::any_of(candidates.begin(), candidates.end(), [&](std::size_t j) {
            return positively_proportional(generators[i], generators[j]);
        });
        if (!duplicate) candidates.push_back(i);
    }
    for (auto i : candidates) {
        std::vector<Vector> others;
        for (auto j : candidates)
            if (j != i) others.push_back(generators[j]);
        if (!lp_feasible(others, generators[i]).feasible) out.kept.push_back(i);
    }
    return out;
}

std::vector<Vector> extremal_rays(const std::vector<Vector>& generators) {
    const auto sel = extremal_indices(generators);
    for (const auto& w : sel.warnings) std::clog << "warning: " << w << '\n';
    std::vector<Vector> out;
    for (auto i : sel.kept) out.push_back(generators[i]);
    return out;
}

std::vector<std::vector<std::size_t>> triangulate_indices(const std::vector<Vector>& rays) {
    if (rays.empty()) return {};
    const std::size_t dim = rays.front().size();
    check_dims(dim, rays, "triangulate");
    if (!RationalCone::from_rays(dim, rays).is_pointed()) throw InputError("triangulate: cone is not pointed");

    std::vector<Vector> prim(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) prim[i] = primitive(rays[i]);
    std::vector<std::size_t> order(rays.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lex_less(prim[a], prim[b]); });

    std::vector<std::vector<std::size_t>> simplices;
    std::vector<Vector> placed;
    std::size_t span_rank = 0;
    for (auto idx : order) {
        const Vector& r = prim[idx];
        if (is_zero(r)) continue;
        if (std::any_of(placed.begin(), placed.end(), [&](const Vector& p) { return p == r; })) continue;

        std::vector<Vector> with_r = placed;
        with_r.push_back(r);
        const std::size_t new_rank = rank(with_r, dim);
        if (new_rank > span_rank) {
            if (simplices.empty()) simplices.push_back({idx});
            else
                for (auto& s : simplices) s.push_back(idx);
            placed.push_back(r);
            span_rank = new_rank;
            continue;
        }

        // Boundary facets of the current triangulation and the simplex they
        // bound; a facet is visible from r when r lies strictly beyond it.
        std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> facets;
        for (std::size_t s = 0; s < simplices.size(); ++s) {
            for (std::size_t drop = 0; drop < simplices[s].size(); ++drop) {
                std::vector<std::size_t> f;
                for (std::size_t j = 0; j < simplices[s].size(); ++j)
                    if (j != drop) f.push_back(simplices[s][j]);
                std::sort(f.begin(), f.end());
                facets[f].emplace_back(s, simplices[s][drop]);
            }
        }
        std::vector<std::vector<std::size_t>> added;
        for (const auto& [f, owners] : facets) {
            if (owners.size() != 1) continue;
            std::vector<Vector> fvecs;
            for (auto j : f) fvecs.push_back(prim[j]);
            const Vector& apex = prim[owners.front().second];
            const Vector normal = sub(apex, project_onto_span(apex, fvecs));
            if (sgn(dot(normal, r)) < 0) {
                auto s = f;
                s.push_back(idx);
                added.push_back(std::move(s));
            }
        }
        if (!added.empty()) placed.push_back(r);
        for (auto& s : added) simplices.push_back(std::move(s));
    }
    for (auto& s : simplices) std::sort(s.begin(), s.end());
    std::sort(simplices.begin(), simplices.end());
    return simplices;
}

std::vector<RationalCone> triangulate(const RationalCone& cone) {
    if (!cone.is_pointed()) throw InputError("triangulate: cone is not pointed");
    if (cone.is_simplicial()) return {cone};
    std::vector<RationalCone> out;
    for (const auto& s : triangulate_indices(cone.rays())) {
        std::vector<Vector> gens;
        for (auto i : s) gens.push_back(cone.rays()[i]);
        out.push_back(RationalCone::from_rays(cone.ambient_dim(), gens));
    }
    return out;
}

}  // namespace okb
