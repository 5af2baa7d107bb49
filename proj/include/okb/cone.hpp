#pragma once

#include "okb/lp.hpp"
#include "okb/rational.hpp"

#include <string>

namespace okb {

/// Result of converting an inequality system {x : A x >= 0, E x = 0} into
/// generators: a lineality basis plus extreme rays modulo lineality.
struct Generators {
    std::vector<Vector> lineality;
    std::vector<Vector> rays;
};

/// Double description (Motzkin) with the combinatorial adjacency test.
/// Rays come back primitive and sorted.
Generators double_description(std::size_t dim, const std::vector<Vector>& inequalities,
                              const std::vector<Vector>& equations = {});

/// Polyhedral cone through the origin in Q^dim carrying both descriptions.
///
/// Rays are primitive integer vectors, pairwise non-proportional and sorted
/// lexicographically. Inequalities are irredundant facet normals (primitive);
/// equations span the orthogonal complement of the cone's linear span.
class RationalCone {
public:
    RationalCone() = default;

    static RationalCone from_rays(std::size_t dim, std::vector<Vector> generators);
    static RationalCone from_inequalities(std::size_t dim, const std::vector<Vector>& inequalities,
                                          const std::vector<Vector>& equations = {});

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<Vector>& rays() const { return rays_; }
    const std::vector<Vector>& inequalities() const { return inequalities_; }
    const std::vector<Vector>& equations() const { return equations_; }
    const std::vector<Vector>& lineality() const { return lineality_; }

    /// Every ray satisfies every inequality and equation.
    bool consistent() const { return consistent_; }

    /// Dimension of the linear span.
    std::size_t dimension() const { return dim_ - equations_.size(); }
    bool is_full_dimensional() const { return equations_.empty(); }
    bool is_pointed() const { return lineality_.empty(); }
    bool is_simplicial() const { return is_pointed() && rays_.size() == dimension(); }

    bool contains(std::span<const Rational> v) const;
    /// Strictly inside relative to the linear span (all facet inequalities strict).
    bool contains_in_relative_interior(std::span<const Rational> v) const;

    /// Membership with an explicit nonnegative combination of rays().
    ConeCertificate certificate(std::span<const Rational> v) const;

private:
    void finish_from_generators(std::vector<Vector> generators, std::vector<Vector> lineality);
    void check_consistency();

    std::size_t dim_ = 0;
    std::vector<Vector> rays_;
    std::vector<Vector> lineality_;
    std::vector<Vector> inequalities_;
    std::vector<Vector> equations_;
    bool consistent_ = false;
};

struct ExtremalSelection {
    std::vector<std::size_t> kept;      // indices into the input, ascending
    std::vector<std::string> warnings;  // one per dropped zero vector
};

/// Indices of the generators that are not nonnegative combinations of the
/// others. Zero vectors are dropped with a warning; among positively
/// proportional generators only the first occurrence is kept.
ExtremalSelection extremal_indices(const std::vector<Vector>& generators);

/// Same selection returned as vectors; warnings go to std::clog.
std::vector<Vector> extremal_rays(const std::vector<Vector>& generators);

/// Placing triangulation of cone(rays) without new rays. Rays are placed in
/// lexicographic order of their primitive vectors. Returns index sets into
/// `rays`; each set is linearly independent and spans a simplicial cone.
/// Throws InputError if the cone is not pointed.
std::vector<std::vector<std::size_t>> triangulate_indices(const std::vector<Vector>& rays);

/// Simplicial subcones of a pointed cone, rays drawn from cone.rays().
std::vector<RationalCone> triangulate(const RationalCone& cone);

}  // namespace okb
