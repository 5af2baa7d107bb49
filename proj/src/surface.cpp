#include "okb/surface.hpp"

#include "okb/linalg.hpp"
#include "okb/lp.hpp"

#include <algorithm>

namespace okb {

bool has_errors(const std::vector<Violation>& vs) {
    return std::any_of(vs.begin(), vs.end(), [](const Violation& v) { return v.severity == Severity::error; });
}

Rational intersect(const SurfaceData& s, std::span<const Rational> d, std::span<const Rational> e) {
    if (d.size() != s.rank || e.size() != s.rank) throw InputError("intersect: class length differs from rank");
    return dot(d, s.gram.apply(e));
}

RationalCone effective_cone(const SurfaceData& s) { return RationalCone::from_rays(s.rank, s.eff_generators); }

RationalCone nef_cone(const SurfaceData& s) {
    std::vector<Vector> ineqs;
    for (const auto& c : s.eff_generators) ineqs.push_back(s.gram.apply(c));
    return RationalCone::from_inequalities(s.rank, ineqs);
}

bool is_pseudo_effective(const SurfaceData& s, std::span<const Rational> d) {
    if (d.size() != s.rank) throw InputError("class length differs from rank");
    return lp_feasible(s.eff_generators, d).feasible;
}

std::string format_class(const std::vector<std::string>& labels, std::span<const Rational> d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (sgn(d[i]) == 0) continue;
        const std::string name = i < labels.size() ? labels[i] : "e" + std::to_string(i + 1);
        const Rational mag = abs(d[i]);
        if (sgn(d[i]) < 0) out += "-";
        else if (!out.empty()) out += "+";
        if (mag != 1) out += to_string(mag);
        out += name;
    }
    return out.empty() ? "0" : out;
}

std::string format_class(const SurfaceData& s, std::span<const Rational> d) { return format_class(s.labels, d); }

std::vector<Violation> validate(const SurfaceData& s, const FlagData* flag) {
    std::vector<Violation> out;
    auto error = [&](std::string code, std::string msg) { out.push_back({std::move(code), std::move(msg)}); };

    if (s.rank == 0) error("dimension", "rank must be positive");
    if (s.gram.rows() != s.rank || s.gram.cols() != s.rank)
        error("dimension", "gram is " + std::to_string(s.gram.rows()) + "x" + std::to_string(s.gram.cols()) +
                               ", expected " + std::to_string(s.rank) + "x" + std::to_string(s.rank));
    auto check_len = [&](const std::vector<DivisorClass>& vs, const std::string& field) {
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (vs[i].size() != s.rank)
                error("dimension", field + "[" + std::to_string(i) + "] has length " + std::to_string(vs[i].size()));
    };
    check_len(s.eff_generators, "eff_generators");
    check_len(s.negative_curves, "negative_curves");
    if (!s.labels.empty() && s.labels.size() != s.rank) error("dimension", "labels must name every basis vector");
    if (flag && flag->curve_class.size() != s.rank)
        error("dimension", "flag.curve_class has length " + std::to_string(flag->curve_class.size()));
    if (!out.empty()) return out;

    if (!s.gram.is_symmetric()) {
        error("symmetry", "gram is not symmetric");
        return out;
    }
    for (std::size_t r = 0; r < s.rank; ++r)
        for (std::size_t c = 0; c < s.rank; ++c)
            if (s.gram(r, c).get_den() != 1)
                error("gram-integral", "gram[" + std::to_string(r) + "][" + std::to_string(c) + "] = " +
                                           to_string(s.gram(r, c)) + " is not an integer");
    const auto in = inertia(s.gram);
    if (in.positive != 1 || in.negative != s.rank - 1)
        error("signature", "intersection form has " + std::to_string(in.positive) + " positive, " +
                               std::to_string(in.negative) + " negative and " + std::to_string(in.zero) +
                               " zero eigenvalues; expected signature (1, " + std::to_string(s.rank - 1) + ")");

    if (s.eff_generators.empty()) {
        error("eff-full-dimensional", "no effective generators");
        return out;
    }
    const auto eff = effective_cone(s);
    if (!eff.is_pointed()) error("eff-pointed", "effective cone contains a line");
    if (!eff.is_full_dimensional())
        error("eff-full-dimensional",
              "effective cone has dimension " + std::to_string(eff.dimension()) + " < " + std::to_string(s.rank));

    for (const auto& c : s.negative_curves) {
        if (!eff.contains(c)) error("negative-curve-in-eff", format_class(s, c) + " is not pseudo-effective");
        const Rational self = intersect(s, c, c);
        if (sgn(self) >= 0)
            error("self-intersection", format_class(s, c) + " has self-intersection " + to_string(self));
    }

    if (flag) {
        const auto& a = flag->curve_class;
        if (is_zero(a)) error("flag-zero", "flag curve class is zero");
        for (const auto& g : s.eff_generators) {
            const Rational ag = intersect(s, a, g);
            if (sgn(ag) < 0)
                error("flag-nef", "flag class " + format_class(s, a) + " meets " + format_class(s, g) + " negatively (" +
                                      to_string(ag) + ")");
        }
        if (!is_zero(a) && sgn(intersect(s, a, a)) <= 0)
            out.push_back({"flag-big",
                           "flag class " + format_class(s, a) + " has A.A = " + to_string(intersect(s, a, a)) +
                               "; it is nef but not big",
                           Severity::warning});
        if (!flag->general) error("flag-generality", "only general flags are supported");
    }
    return out;
}

}  // namespace okb
