#pragma once

#include "okb/surface.hpp"

#include <cstdint>
#include <optional>

namespace okb {

/// D = P + N with N = sum coefficients[i] * negative_curves[support[i]].
struct ZariskiDecomposition {
    DivisorClass positive;
    DivisorClass negative;
    std::vector<std::size_t> support;  // indices into negative_curves, ascending
    std::vector<Rational> coefficients;
};

/// Fujita's algorithm: grow the support from the curves D meets negatively
/// until the candidate positive part is nef.
///
/// Throws DomainError if D is not pseudo-effective and InternalError when the
/// negative-curve list is inconsistent with the Gram matrix.
ZariskiDecomposition zariski_decompose(const SurfaceData& s, std::span<const Rational> d);

/// Closure of the region of Eff(X) whose negative part is supported on
/// exactly `support`.
struct Chamber {
    std::size_t id = 0;
    std::uint64_t support_mask = 0;
    std::vector<std::size_t> support;  // indices into negative_curves
    RationalCone cone;
    std::vector<DivisorClass> generators;  // primitive rays of the closure
};

/// Chambers sorted by support bitmask. Subsets whose Gram matrix is not
/// negative definite or whose closure has empty interior are skipped.
std::vector<Chamber> enumerate_chambers(const SurfaceData& s);

/// OpenMP version of enumerate_chambers, one task per support subset.
/// Output is identical to the serial version for every `jobs`.
std::vector<Chamber> enumerate_chambers_parallel(const SurfaceData& s, int jobs);

/// The chamber whose closure contains D; minimal support (size, then mask)
/// wins on walls. Throws DomainError when no closure contains D.
const Chamber& chamber_of(const std::vector<Chamber>& chambers, std::span<const Rational> d);

/// Linear description of the closure for one support subset, or nullopt if
/// the subset is not admissible. Exposed for tests.
std::optional<RationalCone> chamber_closure(const SurfaceData& s, std::uint64_t mask);

}  // namespace okb
