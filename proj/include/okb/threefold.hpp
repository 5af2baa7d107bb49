#pragma once

#include "okb/minkowski.hpp"

#include <optional>

namespace okb {

/// A threefold X with a very ample surface Y1 and the restriction map
/// r : N^1(X) -> N^1(Y1).
struct ThreefoldData {
    std::size_t rank = 0;
    std::vector<std::string> labels;
    std::vector<DivisorClass> eff_generators;  // nef integral classes spanning Eff(X)
    DivisorClass y1;
    Matrix restriction;  // rank(Y1) x rank(X)
    SurfaceData surface;
    FlagData flag;
    /// Symmetric tensor of triple intersection numbers, index (i*rank + j)*rank + k.
    std::optional<std::vector<Rational>> triple_products;
};

std::vector<Violation> validate(const ThreefoldData& t);

/// D.E.F from the triple-product tensor. Throws InputError if absent.
Rational triple_product(const ThreefoldData& t, std::span<const Rational> d, std::span<const Rational> e,
                        std::span<const Rational> f);

/// Cone over the restrictions r(D_i). Throws InputError if some restriction
/// is not pseudo-effective on Y1.
RationalCone restricted_cone_Q(const ThreefoldData& t);

struct LiftedCone {
    std::size_t rank = 0;
    RationalCone cone;             // the pulled-back cone in Q^2 x N^1(X)
    std::vector<Vector> rays;      // its integral primitive rays
    GlobalBodyCone body;           // generators in Q^3 x N^1(X)
};

/// Pulls the surface body cone (cut down to classes over Q) back along
/// q(x, y, [D]) = (x, y, r[D]) and intersects with (Q>=0)^2 x Eff(X).
LiftedCone lift_cone(const ThreefoldData& t, const GlobalBodyCone& surface_global);

struct PullbackCheck {
    std::size_t ray = 0;
    bool first_coordinate_zero = false;  // as a generator in Q^3 x N^1(X)
    bool over_q = false;
    ConeCertificate certificate;  // q(w) over the surface generators
};

/// One check per lifted ray.
std::vector<PullbackCheck> pullback_checks(const ThreefoldData& t, const GlobalBodyCone& surface_global,
                                           const LiftedCone& lifted);

class Fiber3Extractor {
public:
    explicit Fiber3Extractor(const LiftedCone& lifted);
    /// Throws DomainError if the fiber over D is empty.
    Polytope3 fiber(std::span<const Rational> d) const;

private:
    std::size_t rank_;
    RationalCone cone_;
};

Polytope3 fiber3(const LiftedCone& lifted, std::span<const Rational> d);

}  // namespace okb
