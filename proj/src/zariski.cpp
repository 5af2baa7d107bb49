#include "okb/zariski.hpp"

#include "okb/linalg.hpp"

#include <exception>
#include <optional>

namespace okb {

namespace {

std::vector<std::size_t> mask_indices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 64; ++i)
        if ((mask >> i) & 1U) out.push_back(i);
    return out;
}

Matrix support_gram(const SurfaceData& s, const std::vector<std::size_t>& support) {
    Matrix g(support.size(), support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = 0; j < support.size(); ++j)
            g(i, j) = intersect(s, s.negative_curves[support[i]], s.negative_curves[support[j]]);
    return g;
}

std::optional<RationalCone> closure_with(const SurfaceData& s, const std::vector<Vector>& eff_ineqs,
                                         std::uint64_t mask) {
    const auto support = mask_indices(mask);
    std::vector<Vector> ineqs = eff_ineqs;
    // Without support the positive part is D itself.
    std::vector<Vector> projection;  // rows of I - C T, T = G_S^{-1} C^t G
    if (support.empty()) {
        for (std::size_t i = 0; i < s.rank; ++i) projection.push_back(unit_vector(s.rank, i));
    } else {
        const Matrix gs = support_gram(s, support);
        if (!is_negative_definite(gs)) return std::nullopt;
        const std::size_t k = support.size();
        // T is k x rank; column j solves G_S t = (C_i . e_j)_i.
        Matrix t(k, s.rank);
        for (std::size_t j = 0; j < s.rank; ++j) {
            Vector rhs(k);
            for (std::size_t i = 0; i < k; ++i) rhs[i] = intersect(s, s.negative_curves[support[i]], unit_vector(s.rank, j));
            const auto sol = solve_linear(gs, rhs);
            for (std::size_t i = 0; i < k; ++i) t(i, j) = sol->particular[i];
        }
        for (std::size_t i = 0; i < k; ++i) ineqs.push_back(t.row_vector(i));
        for (std::size_t r = 0; r < s.rank; ++r) {
            Vector row = unit_vector(s.rank, r);
            for (std::size_t i = 0; i < k; ++i) row = axpy(row, -s.negative_curves[support[i]][r], t.row_vector(i));
            projection.push_back(std::move(row));
        }
    }
    const Matrix proj = Matrix::from_rows(projection, s.rank);
    const Matrix proj_t = proj.transpose();
    for (const auto& g : s.eff_generators) {
        // (P(D)) . g = (G g) . (proj D) = (proj^t G g) . D
        ineqs.push_back(proj_t.apply(s.gram.apply(g)));
    }
    auto cone = RationalCone::from_inequalities(s.rank, ineqs);
    if (!cone.is_full_dimensional()) return std::nullopt;
    return cone;
}

std::vector<Vector> eff_inequalities(const SurfaceData& s) { return effective_cone(s).inequalities(); }

Chamber make_chamber(std::uint64_t mask, RationalCone cone) {
    Chamber c;
    c.support_mask = mask;
    c.support = mask_indices(mask);
    c.generators = cone.rays();
    c.cone = std::move(cone);
    return c;
}

void check_curve_count(const SurfaceData& s) {
    if (s.negative_curves.size() > 20)
        throw InputError("chamber enumeration supports at most 20 negative curves, got " +
                         std::to_string(s.negative_curves.size()));
}

}  // namespace

ZariskiDecomposition zariski_decompose(const SurfaceData& s, std::span<const Rational> d) {
    if (d.size() != s.rank) throw InputError("zariski_decompose: class length differs from rank");
    if (!is_pseudo_effective(s, d)) throw DomainError(format_class(s, d) + " is not pseudo-effective");

    const std::size_t k = s.negative_curves.size();
    std::vector<bool> in_support(k, false);
    for (std::size_t i = 0; i < k; ++i)
        if (sgn(intersect(s, d, s.negative_curves[i])) < 0) in_support[i] = true;

    Vector p(d.begin(), d.end());
    std::vector<std::size_t> support;
    Vector coeffs;
    for (;;) {
        support.clear();
        for (std::size_t i = 0; i < k; ++i)
            if (in_support[i]) support.push_back(i);
        p.assign(d.begin(), d.end());
        coeffs.clear();
        if (!support.empty()) {
            const Matrix gs = support_gram(s, support);
            Vector rhs;
            for (auto i : support) rhs.push_back(intersect(s, d, s.negative_curves[i]));
            const auto sol = solve_linear(gs, rhs);
            if (!sol || !sol->kernel.empty())
                throw InternalError("negative-curve list inconsistent with Gram: singular support system");
            coeffs = sol->particular;
            for (std::size_t i = 0; i < support.size(); ++i)
                p = axpy(p, -coeffs[i], s.negative_curves[support[i]]);
        }
        bool grew = false;
        for (std::size_t i = 0; i < k; ++i)
            if (!in_support[i] && sgn(intersect(s, p, s.negative_curves[i])) < 0) in_support[i] = grew = true;
        if (!grew) break;
    }

    ZariskiDecomposition z;
    z.positive = p;
    z.negative = zero_vector(s.rank);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (sgn(coeffs[i]) < 0)
            throw InternalError("negative-curve list inconsistent with Gram: negative coefficient on " +
                                format_class(s, s.negative_curves[support[i]]));
        if (sgn(coeffs[i]) == 0) continue;
        z.support.push_back(support[i]);
        z.coefficients.push_back(coeffs[i]);
        z.negative = axpy(z.negative, coeffs[i], s.negative_curves[support[i]]);
    }
    if (!z.support.empty() && !is_negative_definite(support_gram(s, z.support)))
        throw InternalError("negative-curve list inconsistent with Gram: support is not negative definite");
    for (const auto& g : s.eff_generators)
        if (sgn(intersect(s, z.positive, g)) < 0)
            throw InternalError("negative-curve list inconsistent with Gram: positive part " +
                                format_class(s, z.positive) + " meets " + format_class(s, g) + " negatively");
    return z;
}

std::optional<RationalCone> chamber_closure(const SurfaceData& s, std::uint64_t mask) {
    return closure_with(s, eff_inequalities(s), mask);
}

std::vector<Chamber> enumerate_chambers(const SurfaceData& s) {
    check_curve_count(s);
    const auto eff = eff_inequalities(s);
    const std::uint64_t n = std::uint64_t{1} << s.negative_curves.size();
    std::vector<Chamber> out;
    for (std::uint64_t mask = 0; mask < n; ++mask)
        if (auto cone = closure_with(s, eff, mask)) out.push_back(make_chamber(mask, std::move(*cone)));
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
    return out;
}

std::vector<Chamber> enumerate_chambers_parallel(const SurfaceData& s, int jobs) {
    check_curve_count(s);
    const auto eff = eff_inequalities(s);
    const auto n = static_cast<std::int64_t>(std::uint64_t{1} << s.negative_curves.size());
    std::vector<std::optional<RationalCone>> slots(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : 1)
    for (std::int64_t mask = 0; mask < n; ++mask) {
        try {
            slots[static_cast<std::size_t>(mask)] = closure_with(s, eff, static_cast<std::uint64_t>(mask));
        } catch (...) {
            errors[static_cast<std::size_t>(mask)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<Chamber> out;
    for (std::int64_t mask = 0; mask < n; ++mask)
        if (auto& cone = slots[static_cast<std::size_t>(mask)])
            out.push_back(make_chamber(static_cast<std::uint64_t>(mask), std::move(*cone)));
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
    return out;
}

const Chamber& chamber_of(const std::vector<Chamber>& chambers, std::span<const Rational> d) {
    const Chamber* best = nullptr;
    for (const auto& c : chambers) {
        if (!c.cone.contains(d)) continue;
        if (!best || c.support.size() < best->support.size() ||
            (c.support.size() == best->support.size() && c.support_mask < best->support_mask))
            best = &c;
    }
    if (!best) throw DomainError("class " + to_string(d) + " lies in no chamber closure");
    return *best;
}

}  // namespace okb
