#pragma once

#include "okb/okounkov.hpp"

#include <cstdint>
#include <string>

namespace okb {

/// Simplicial fan on Eff(X). Chambers are ascending index lists into `rays`.
struct MinkowskiFan {
    std::vector<DivisorClass> rays;
    std::vector<std::vector<std::size_t>> chambers;
};

/// Star-subdivides Eff(X) at each base element in turn (closed containment),
/// then triangulates every piece without new rays.
///
/// Throws InputError if a base element is not pseudo-effective or a ray of
/// Eff(X) is missing from the base.
MinkowskiFan minkowski_chambers(const RationalCone& eff, const std::vector<DivisorClass>& base);

struct FanCheck {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Exact fan invariants: rank-many independent rays per chamber, no base
/// element inside a chamber, every interior facet shared by exactly two
/// chambers lying on opposite sides, every boundary facet owned by one, and
/// a generic interior point covered exactly once.
FanCheck check_fan_invariants(const RationalCone& eff, const MinkowskiFan& fan,
                              const std::vector<DivisorClass>& base);

struct BaseElement {
    DivisorClass divisor;
    OkounkovPolygon body;
    bool indecomposable = false;
};

struct MinkowskiBase {
    std::vector<BaseElement> movable;  // positive part nonzero
    std::vector<BaseElement> fixed;    // positive part zero: body is the origin
    MinkowskiFan linearity_fan;        // the refinement on which Delta is additive

    /// Movable classes followed by fixed classes.
    std::vector<DivisorClass> classes() const;
};

/// Rays of the coarsest refinement of the chamber fan on which Delta is
/// Minkowski additive, found by repeated star subdivision along the walls
/// cone(A, r). Throws InternalError("linearity fan not reached") when the
/// subdivision does not settle.
MinkowskiBase compute_minkowski_base(const OkounkovEngine& engine);

/// Coefficients of D over the rays of the first fan chamber containing it,
/// and the Minkowski sum of the scaled base bodies.
struct BaseDecomposition {
    std::size_t chamber = 0;
    std::vector<std::pair<std::size_t, Rational>> coefficients;  // (index into base.classes(), a > 0)
    Polygon2 reconstruction;
};

/// Throws InternalError if D lies in no chamber of `fan`.
BaseDecomposition decompose_with_negative_parts(const MinkowskiBase& base, const MinkowskiFan& fan,
                                                std::span<const Rational> d);

struct VerifyFailure {
    DivisorClass divisor;
    std::string reason;
    Polygon2 expected;
    Polygon2 reconstructed;
};

struct VerifyReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<VerifyFailure> failures;
};

/// Random pseudo-effective classes sum c_i e_i over the effective generators
/// with c_i uniform in [0, 6], not all zero. Deterministic for a seed.
std::vector<DivisorClass> sample_pseudo_effective(const SurfaceData& s, std::size_t count, std::uint64_t seed);

/// For each sample: Delta(D) must equal the reconstruction from its chamber.
/// The fan is built with minkowski_chambers over base.classes().
VerifyReport verify_minkowski(const OkounkovEngine& engine, const MinkowskiBase& base, std::size_t samples,
                              std::uint64_t seed);
VerifyReport verify_minkowski_parallel(const OkounkovEngine& engine, const MinkowskiBase& base,
                                       std::size_t samples, std::uint64_t seed, int jobs);

struct GlobalGenerator {
    Vector valuation;      // length n (2 for surfaces, 3 for the lift)
    DivisorClass divisor;  // length rho
    bool extremal = false;
    std::string source;    // which construction produced it

    Vector full() const { return concat(valuation, divisor); }
};

/// Generators of a cone in Q^n x N^1(X) whose fibers over big classes are the
/// Okounkov bodies.
struct GlobalBodyCone {
    std::size_t valuation_dim = 2;
    std::size_t rank = 0;
    std::vector<std::string> labels;
    std::vector<GlobalGenerator> generators;

    std::vector<Vector> vectors() const;
};

/// Marks each generator extremal or not, exactly.
void mark_extremal(GlobalBodyCone& g);

/// (x, [D_i]) for every vertex x of every base body.
GlobalBodyCone global_generators_from_base(const MinkowskiBase& base, const SurfaceData& s);

/// ((0,0),[D_i]), ((0, P_i.A),[D_i]) when P_i.A != 0, and ((1,0),[A]), with
/// D_i running over the rays of all chamber closures.
GlobalBodyCone global_generators_surface(const OkounkovEngine& engine);

/// Cached inequality description of a global body cone for fiber queries.
class FiberExtractor {
public:
    explicit FiberExtractor(const GlobalBodyCone& g);

    const RationalCone& cone() const { return cone_; }
    /// Throws DomainError if the fiber over D is empty.
    Polygon2 fiber(std::span<const Rational> d) const;
    /// Nonnegative weights over g.generators reproducing (x, D).
    ConeCertificate certificate(std::span<const Rational> x, std::span<const Rational> d) const;

private:
    GlobalBodyCone body_;
    RationalCone cone_;
};

Polygon2 fiber(const GlobalBodyCone& g, std::span<const Rational> d);

/// Every generator of `a` lies in cone(b) and vice versa.
bool same_cone(const std::vector<Vector>& a, const std::vector<Vector>& b);

}  // namespace okb
