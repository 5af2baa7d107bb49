#include "okb/okounkov.hpp"

#include "okb/lp.hpp"

#include <algorithm>
#include <exception>

namespace okb {

OkounkovEngine::OkounkovEngine(SurfaceData surface, DivisorClass flag_class)
    : OkounkovEngine(surface, std::move(flag_class), enumerate_chambers(surface)) {}

OkounkovEngine::OkounkovEngine(SurfaceData surface, DivisorClass flag_class, std::vector<Chamber> chambers)
    : surface_(std::move(surface)), flag_(std::move(flag_class)), chambers_(std::move(chambers)) {
    if (flag_.size() != surface_.rank) throw InputError("flag class length differs from rank");
    if (is_zero(flag_)) throw InputError("flag class is zero");
    for (const auto& c : chambers_)
        for (const auto& f : c.cone.inequalities()) walls_.push_back(f);
    sort_unique(walls_);
}

Rational OkounkovEngine::mu(std::span<const Rational> d) const {
    if (d.size() != surface_.rank) throw InputError("mu: class length differs from rank");
    // maximize t subject to sum l_i e_i + t A = D, l, t >= 0
    std::vector<Vector> cols = surface_.eff_generators;
    cols.push_back(flag_);
    const Matrix a = Matrix::from_columns(cols, surface_.rank);
    Vector c = zero_vector(cols.size());
    c.back() = 1;
    const auto sol = lp_maximize(a, d, c);
    if (sol.status == LpStatus::infeasible)
        throw DomainError(format_class(surface_, d) + " is not pseudo-effective");
    if (sol.status == LpStatus::unbounded) throw InternalError("mu is unbounded: the effective cone is not pointed");
    return sol.objective;
}

Rational OkounkovEngine::beta_unchecked(std::span<const Rational> d, const Rational& t) const {
    const Vector slice = axpy(d, -t, flag_);
    return intersect(surface_, zariski_decompose(surface_, slice).positive, flag_);
}

Rational OkounkovEngine::beta(std::span<const Rational> d, const Rational& t) const {
    const Rational m = mu(d);
    if (sgn(t) < 0 || t > m)
        throw DomainError("beta: t = " + to_string(t) + " outside [0, " + to_string(m) + "]");
    return beta_unchecked(d, t);
}

OkounkovPolygon OkounkovEngine::polygon(std::span<const Rational> d) const {
    OkounkovPolygon out;
    out.divisor.assign(d.begin(), d.end());
    out.mu = mu(d);

    std::vector<Rational> ts{0, out.mu};
    for (const auto& f : walls_) {
        const Rational fa = dot(f, flag_);
        if (sgn(fa) == 0) continue;
        const Rational t = dot(f, d) / fa;
        if (sgn(t) > 0 && t < out.mu) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<Point2> pts{{0, 0}, {out.mu, 0}};
    for (const auto& t : ts) {
        Rational b = beta_unchecked(d, t);
        pts.push_back({t, b});
        out.breakpoints.emplace_back(t, std::move(b));
    }
    out.polygon = hull2(std::move(pts));

    const auto p = zariski_decompose(surface_, d).positive;
    const Rational vol = intersect(surface_, p, p);
    if (2 * polygon_area(out.polygon) != vol)
        throw InternalError("volume identity failed for " + format_class(surface_, d) + ": 2*area = " +
                            to_string(Rational(2 * polygon_area(out.polygon))) + ", P.P = " + to_string(vol));
    return out;
}

Rational mu(const SurfaceData& s, std::span<const Rational> d, std::span<const Rational> a) {
    return OkounkovEngine(s, Vector(a.begin(), a.end()), {}).mu(d);
}

Rational beta(const SurfaceData& s, std::span<const Rational> d, std::span<const Rational> a, const Rational& t) {
    return OkounkovEngine(s, Vector(a.begin(), a.end()), {}).beta(d, t);
}

OkounkovPolygon okounkov_polygon(const SurfaceData& s, const FlagData& flag, std::span<const Rational> d) {
    return OkounkovEngine(s, flag.curve_class).polygon(d);
}

std::vector<OkounkovPolygon> okounkov_polygons_serial(const OkounkovEngine& e, const std::vector<DivisorClass>& ds) {
    std::vector<OkounkovPolygon> out;
    out.reserve(ds.size());
    for (const auto& d : ds) out.push_back(e.polygon(d));
    return out;
}

std::vector<OkounkovPolygon> okounkov_polygons_parallel(const OkounkovEngine& e, const std::vector<DivisorClass>& ds,
                                                        int jobs) {
    const auto n = static_cast<std::int64_t>(ds.size());
    std::vector<OkounkovPolygon> out(ds.size());
    std::vector<std::exception_ptr> errors(ds.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = e.polygon(ds[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace okb
