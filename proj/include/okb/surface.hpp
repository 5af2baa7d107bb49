#pragma once

#include "okb/cone.hpp"
#include "okb/rational.hpp"

#include <string>

namespace okb {

/// A class in N^1(X), coefficients in the instance basis.
using DivisorClass = Vector;

struct SurfaceData {
    std::size_t rank = 0;
    Matrix gram;                               // intersection form, rank x rank
    std::vector<DivisorClass> eff_generators;  // span the pseudo-effective cone
    std::vector<DivisorClass> negative_curves; // irreducible curves with C.C < 0
    std::vector<std::string> labels;           // basis names, optional
};

/// Curve class of the flag. `general` is the instance author's assertion that
/// the flag curve and point avoid all negative parts and base loci.
struct FlagData {
    DivisorClass curve_class;
    bool general = true;
};

enum class Severity { error, warning };

struct Violation {
    std::string code;
    std::string message;
    Severity severity = Severity::error;
};

bool has_errors(const std::vector<Violation>& vs);

Rational intersect(const SurfaceData& s, std::span<const Rational> d, std::span<const Rational> e);

RationalCone effective_cone(const SurfaceData& s);

/// {D : D.C >= 0 for every effective generator C}.
RationalCone nef_cone(const SurfaceData& s);

bool is_pseudo_effective(const SurfaceData& s, std::span<const Rational> d);

/// Never throws on bad data; every failed invariant becomes a violation.
/// Pass flag == nullptr to check the surface alone.
std::vector<Violation> validate(const SurfaceData& s, const FlagData* flag = nullptr);

/// "3H-E1-E2" style rendering using the basis labels (or e1, e2, ...).
std::string format_class(const SurfaceData& s, std::span<const Rational> d);
std::string format_class(const std::vector<std::string>& labels, std::span<const Rational> d);

}  // namespace okb
