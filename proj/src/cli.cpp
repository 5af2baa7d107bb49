#include "okb/cli.hpp"

#include "okb/io.hpp"
#include "okb/svg.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace okb::cli {

namespace {

struct Context {
    const Options& opts;
    Instance inst;
    int exit = ExitCode::ok;
    std::string diagnostics;
    std::optional<std::string> svg;

    void fail(const std::string& why) {
        exit = std::max(exit, static_cast<int>(ExitCode::failed));
        diagnostics += "failure: " + why + "\n";
    }
    const SurfaceData& surface() const { return inst.surface; }
};

Json violations_json(const std::vector<Violation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs)
        a.push_back(Json{{"code", v.code},
                         {"severity", v.severity == Severity::error ? "error" : "warning"},
                         {"message", v.message}});
    return a;
}

std::vector<Violation> all_violations(const Instance& inst) {
    if (inst.threefold) return validate(*inst.threefold);
    return validate(inst.surface, &inst.flag);
}

Json labelled(const std::vector<std::string>& labels, std::span<const Rational> v) {
    return Json{{"class", to_json(v)}, {"label", format_class(labels, v)}};
}

Json vector_list(const std::vector<Vector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

std::vector<Vector> vectors_of(const Json& j, const std::string& field) {
    std::vector<Vector> out;
    if (!j.is_array()) throw InputError(field + ": expected an array");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::set<Vector> as_set(std::vector<Vector> vs) { return {vs.begin(), vs.end()}; }

Vector require_divisor(const Context& ctx, std::size_t rank) {
    if (!ctx.opts.divisor) throw InputError("command " + ctx.opts.command + " needs --divisor");
    return parse_divisor(*ctx.opts.divisor, rank);
}

const ThreefoldData& require_threefold(const Context& ctx) {
    if (!ctx.inst.threefold) throw InputError("instance has no threefold block");
    return *ctx.inst.threefold;
}

Json golden_result(Context& ctx, const char* what, bool match) {
    if (!match) ctx.fail(std::string("golden ") + what + " mismatch");
    return Json{{"checked", true}, {"match", match}};
}

Json body_json(const SurfaceData& s, const OkounkovPolygon& b) {
    const auto z = zariski_decompose(s, b.divisor);
    Json bp = Json::array();
    for (const auto& [t, y] : b.breakpoints) bp.push_back(Json::array({to_json(t), to_json(y)}));
    const Rational area = polygon_area(b.polygon);
    return Json{{"divisor", labelled(s.labels, b.divisor)},
                {"mu", to_json(b.mu)},
                {"breakpoints", std::move(bp)},
                {"vertices", to_json(b.polygon)},
                {"area", to_json(area)},
                {"volume", to_json(intersect(s, z.positive, z.positive))},
                {"degenerate", sgn(area) == 0}};
}

Json fan_json(const std::vector<std::string>& labels, const MinkowskiFan& fan) {
    Json rays = Json::array();
    for (const auto& r : fan.rays) rays.push_back(labelled(labels, r));
    Json chambers = Json::array();
    for (const auto& k : fan.chambers) chambers.push_back(k);
    return Json{{"rays", std::move(rays)}, {"chambers", std::move(chambers)}};
}

Json generators_json(const std::vector<std::string>& labels, const GlobalBodyCone& g) {
    Json a = Json::array();
    for (const auto& gen : g.generators)
        a.push_back(Json{{"valuation", to_json(gen.valuation)},
                         {"class", to_json(gen.divisor)},
                         {"label", format_class(labels, gen.divisor)},
                         {"extremal", gen.extremal},
                         {"source", gen.source}});
    return a;
}

// --- commands --------------------------------------------------------------

Json cmd_validate(Context& ctx) {
    const auto vs = all_violations(ctx.inst);
    if (has_errors(vs)) ctx.exit = ExitCode::bad_input;
    return Json{{"valid", !has_errors(vs)}, {"violations", violations_json(vs)}};
}

Json cmd_zariski(Context& ctx) {
    const auto& s = ctx.surface();
    const auto d = require_divisor(ctx, s.rank);
    const auto z = zariski_decompose(s, d);
    Json support = Json::array();
    for (std::size_t i = 0; i < z.support.size(); ++i)
        support.push_back(Json{{"curve", labelled(s.labels, s.negative_curves[z.support[i]])},
                               {"coefficient", to_json(z.coefficients[i])}});
    return Json{{"divisor", labelled(s.labels, d)},
                {"positive", labelled(s.labels, z.positive)},
                {"negative", labelled(s.labels, z.negative)},
                {"support", std::move(support)},
                {"volume", to_json(intersect(s, z.positive, z.positive))}};
}

Json cmd_chambers(Context& ctx) {
    const auto& s = ctx.surface();
    const auto chambers = ctx.opts.jobs > 1 ? enumerate_chambers_parallel(s, ctx.opts.jobs) : enumerate_chambers(s);
    Json list = Json::array();
    for (const auto& c : chambers) {
        Json support = Json::array();
        for (auto i : c.support) support.push_back(labelled(s.labels, s.negative_curves[i]));
        Json gens = Json::array();
        for (const auto& g : c.generators) gens.push_back(labelled(s.labels, g));
        list.push_back(Json{{"id", c.id},
                            {"support", std::move(support)},
                            {"generators", std::move(gens)},
                            {"inequalities", vector_list(c.cone.inequalities())}});
    }
    Json out{{"chambers", std::move(list)}};
    if (ctx.inst.golden.contains("chambers")) {
        std::set<std::set<Vector>> want, got;
        const auto& g = ctx.inst.golden["chambers"];
        for (std::size_t i = 0; i < g.size(); ++i)
            want.insert(as_set(vectors_of(g[i], "golden.chambers[" + std::to_string(i) + "]")));
        for (const auto& c : chambers) got.insert(as_set(c.generators));
        out["golden"] = golden_result(ctx, "chambers", want == got);
    }
    return out;
}

Json cmd_body(Context& ctx) {
    const auto& s = ctx.surface();
    const auto d = require_divisor(ctx, s.rank);
    const OkounkovEngine engine(s, ctx.inst.flag.curve_class);
    const auto b = engine.polygon(d);
    Json out = body_json(s, b);
    if (ctx.inst.golden.contains("bodies")) {
        for (const auto& entry : ctx.inst.golden["bodies"]) {
            if (vector_from_json(entry.at("divisor"), "golden.bodies.divisor") != d) continue;
            std::vector<Point2> pts;
            for (const auto& v : entry.at("vertices"))
                pts.push_back({rational_from_json(v.at(0), "golden.bodies.vertices"),
                               rational_from_json(v.at(1), "golden.bodies.vertices")});
            out["golden"] = golden_result(ctx, "body", hull2(pts) == b.polygon);
        }
    }
    ctx.svg = polygon_svg(b.polygon, "Okounkov polygon of " + format_class(s, d));
    return out;
}

Json base_element_json(const SurfaceData& s, const BaseElement& e) {
    return Json{{"class", to_json(e.divisor)},
                {"label", format_class(s, e.divisor)},
                {"vertices", to_json(e.body.polygon)},
                {"indecomposable", e.indecomposable}};
}

Json cmd_mbase(Context& ctx) {
    const auto& s = ctx.surface();
    const OkounkovEngine engine(s, ctx.inst.flag.curve_class);
    const auto base = compute_minkowski_base(engine);
    Json movable = Json::array(), fixed = Json::array();
    for (const auto& e : base.movable) movable.push_back(base_element_json(s, e));
    for (const auto& e : base.fixed) fixed.push_back(base_element_json(s, e));
    Json out{{"movable", std::move(movable)}, {"fixed", std::move(fixed)}, {"linearity_fan", fan_json(s.labels, base.linearity_fan)}};
    if (ctx.inst.golden.contains("mbase")) {
        const auto& g = ctx.inst.golden["mbase"];
        std::vector<Vector> mov, fix;
        for (const auto& e : base.movable) mov.push_back(e.divisor);
        for (const auto& e : base.fixed) fix.push_back(e.divisor);
        const bool match = as_set(vectors_of(g.at("movable"), "golden.mbase.movable")) == as_set(mov) &&
                           as_set(vectors_of(g.at("fixed"), "golden.mbase.fixed")) == as_set(fix);
        out["golden"] = golden_result(ctx, "mbase", match);
    }
    if (s.rank == 2 || s.rank == 3) ctx.svg = fan_svg(effective_cone(s), base.linearity_fan, s.labels);
    return out;
}

Json cmd_mchambers(Context& ctx) {
    const auto& s = ctx.surface();
    const OkounkovEngine engine(s, ctx.inst.flag.curve_class);
    const auto base = compute_minkowski_base(engine);
    const auto eff = effective_cone(s);
    const auto fan = minkowski_chambers(eff, base.classes());
    const auto check = check_fan_invariants(eff, fan, base.classes());
    if (!check.ok) ctx.fail("Minkowski chamber invariants");
    Json out = fan_json(s.labels, fan);
    out["invariants"] = Json{{"ok", check.ok}, {"problems", check.problems}};
    if (s.rank == 2 || s.rank == 3) ctx.svg = fan_svg(eff, fan, s.labels);
    return out;
}

GlobalBodyCone global_for(const Context& ctx, const OkounkovEngine& engine, const std::string& source) {
    if (source == "surface") return global_generators_surface(engine);
    if (source == "base") return global_generators_from_base(compute_minkowski_base(engine), ctx.surface());
    throw InputError("--source must be \"surface\" or \"base\"");
}

Json cmd_global(Context& ctx) {
    const auto& s = ctx.surface();
    const OkounkovEngine engine(s, ctx.inst.flag.curve_class);
    const auto g = global_for(ctx, engine, ctx.opts.source);
    Json out{{"source", ctx.opts.source}, {"valuation_dim", g.valuation_dim}, {"generators", generators_json(s.labels, g)}};
    if (ctx.opts.source == "surface" && ctx.inst.golden.contains("global")) {
        std::set<Vector> want, got;
        for (const auto& v : vectors_of(ctx.inst.golden["global"], "golden.global")) want.insert(v);
        for (const auto& v : g.vectors()) got.insert(v);
        out["golden"] = golden_result(ctx, "global", want == got);
    }
    return out;
}

Json cmd_fiber(Context& ctx) {
    const auto& s = ctx.surface();
    const auto d = require_divisor(ctx, s.rank);
    const OkounkovEngine engine(s, ctx.inst.flag.curve_class);
    const auto g = global_for(ctx, engine, ctx.opts.source);
    const FiberExtractor fx(g);
    const auto poly = fx.fiber(d);
    Json certs = Json::array();
    for (const auto& v : poly.vertices()) {
        const Vector x{v.x, v.y};
        const auto c = fx.certificate(x, d);
        Json terms = Json::array();
        for (std::size_t i = 0; i < c.coefficients.size(); ++i)
            if (sgn(c.coefficients[i]) != 0) terms.push_back(Json{{"generator", i}, {"weight", to_json(c.coefficients[i])}});
        certs.push_back(Json{{"point", to_json(x)}, {"feasible", c.feasible}, {"combination", std::move(terms)}});
        if (!c.feasible) ctx.fail("no certificate for fiber vertex");
    }
    const auto body = engine.polygon(d).polygon;
    const bool match = body == poly;
    if (!match) ctx.fail("fiber differs from the Okounkov polygon");
    ctx.svg = polygon_svg(poly, "fiber over " + format_class(s, d));
    return Json{{"divisor", labelled(s.labels, d)},
                {"source", ctx.opts.source},
                {"vertices", to_json(poly)},
                {"certificates", std::move(certs)},
                {"body_vertices", to_json(body)},
                {"matches_body", match}};
}

Json cmd_verify(Context& ctx) {
    const auto& s = ctx.surface();
    const OkounkovEngine engine(s, ctx.inst.flag.curve_class);
    const auto base = compute_minkowski_base(engine);
    const auto report = ctx.opts.jobs > 1
                            ? verify_minkowski_parallel(engine, base, ctx.opts.samples, ctx.opts.seed, ctx.opts.jobs)
                            : verify_minkowski(engine, base, ctx.opts.samples, ctx.opts.seed);
    Json failures = Json::array();
    for (const auto& f : report.failures)
        failures.push_back(Json{{"divisor", labelled(s.labels, f.divisor)},
                                {"reason", f.reason},
                                {"expected", to_json(f.expected)},
                                {"reconstructed", to_json(f.reconstructed)}});
    if (!report.failures.empty()) ctx.fail(std::to_string(report.failures.size()) + " Minkowski decomposition failures");
    return Json{{"samples", report.samples}, {"seed", report.seed}, {"base_size", base.classes().size()},
                {"failure_count", report.failures.size()}, {"failures", std::move(failures)}};
}

Json cmd_lift3(Context& ctx) {
    const auto& t = require_threefold(ctx);
    const OkounkovEngine engine(t.surface, t.flag.curve_class);
    const auto surface_global = global_generators_surface(engine);
    const auto lifted = lift_cone(t, surface_global);
    const auto q = restricted_cone_Q(t);
    Json qrays = Json::array();
    for (const auto& r : q.rays()) qrays.push_back(labelled(t.surface.labels, r));
    Json checks = Json::array();
    for (const auto& c : pullback_checks(t, surface_global, lifted)) {
        const bool good = c.first_coordinate_zero && c.over_q && c.certificate.feasible;
        if (!good) ctx.fail("lifted ray " + std::to_string(c.ray) + " failed its pullback check");
        checks.push_back(Json{{"ray", c.ray},
                              {"first_coordinate_zero", c.first_coordinate_zero},
                              {"over_q", c.over_q},
                              {"certified", c.certificate.feasible},
                              {"certificate", to_json(c.certificate.coefficients)}});
    }
    return Json{{"q_rays", std::move(qrays)},
                {"lifted_rays", vector_list(lifted.rays)},
                {"generators", generators_json(t.labels, lifted.body)},
                {"checks", std::move(checks)}};
}

Json cmd_fiber3(Context& ctx) {
    const auto& t = require_threefold(ctx);
    const auto d = require_divisor(ctx, t.rank);
    const OkounkovEngine engine(t.surface, t.flag.curve_class);
    const auto lifted = lift_cone(t, global_generators_surface(engine));
    const auto poly = fiber3(lifted, d);
    const Rational volume = poly.volume();
    Json verts = Json::array();
    for (const auto& v : poly.vertices) verts.push_back(to_json(v));
    Json out{{"divisor", labelled(t.labels, d)}, {"vertices", std::move(verts)}, {"volume", to_json(volume)}};
    if (t.triple_products) {
        const Rational expected = triple_product(t, d, d, d) / 6;
        out["expected_volume"] = to_json(expected);
        out["volume_matches"] = expected == volume;
        if (expected != volume) ctx.fail("fiber volume differs from D^3/6");
    }
    return out;
}

Json cmd_report(Context& ctx) {
    Json out;
    out["validate"] = cmd_validate(ctx);
    if (ctx.exit == ExitCode::bad_input) return out;
    out["chambers"] = cmd_chambers(ctx);
    out["mbase"] = cmd_mbase(ctx);
    out["verify"] = cmd_verify(ctx);
    out["global"] = cmd_global(ctx);
    const auto& s = ctx.surface();
    const OkounkovEngine engine(s, ctx.inst.flag.curve_class);
    const auto from_surface = global_generators_surface(engine);
    const auto from_base = global_generators_from_base(compute_minkowski_base(engine), s);
    const bool same = same_cone(from_surface.vectors(), from_base.vectors());
    if (!same) ctx.fail("the two global generator sets span different cones");
    out["generator_sets_agree"] = same;
    if (ctx.inst.threefold) out["lift3"] = cmd_lift3(ctx);
    ctx.svg.reset();
    return out;
}

using Handler = Json (*)(Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> table{
        {"validate", cmd_validate}, {"zariski", cmd_zariski}, {"chambers", cmd_chambers}, {"body", cmd_body},
        {"mbase", cmd_mbase},       {"mchambers", cmd_mchambers}, {"global", cmd_global}, {"fiber", cmd_fiber},
        {"verify", cmd_verify},     {"lift3", cmd_lift3},       {"fiber3", cmd_fiber3},   {"report", cmd_report}};
    return table;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, h] : handlers()) n.push_back(name);
        return n;
    }();
    return names;
}

RunReport run(const Options& opts) {
    RunReport report;
    Json doc;
    doc["command"] = opts.command;
    doc["instance"] = opts.instance;
    const auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == opts.command; });
    if (it == handlers().end()) {
        report.exit_code = ExitCode::bad_input;
        report.diagnostics = "error: unknown command \"" + opts.command + "\"\n";
        doc["error"] = Json{{"kind", "usage"}, {"message", "unknown command"}};
        report.json = doc.dump(2) + "\n";
        return report;
    }

    try {
        Context ctx{opts, load_instance(opts.instance)};
        doc["instance"] = ctx.inst.name;
        if (opts.command != "validate" && opts.command != "report") {
            const auto vs = all_violations(ctx.inst);
            if (has_errors(vs)) {
                doc["error"] = Json{{"kind", "validation"}, {"message", "instance violates its invariants"}};
                doc["violations"] = violations_json(vs);
                report.exit_code = ExitCode::bad_input;
                for (const auto& v : vs) report.diagnostics += "violation [" + v.code + "]: " + v.message + "\n";
                report.json = doc.dump(2) + "\n";
                if (opts.out) write_file(*opts.out, report.json);
                return report;
            }
        }
        Json result = it->second(ctx);
        for (auto& [k, v] : result.items()) doc[k] = v;
        report.exit_code = ctx.exit;
        report.diagnostics = ctx.diagnostics;
        if (opts.svg) {
            if (ctx.svg) write_file(*opts.svg, *ctx.svg);
            else report.diagnostics += "note: command " + opts.command + " has no figure\n";
        }
    } catch (const InstanceError& e) {
        Json issues = Json::array();
        for (const auto& i : e.issues()) {
            issues.push_back(Json{{"field", i.field}, {"message", i.message}});
            report.diagnostics += "error: " + i.field + ": " + i.message + "\n";
        }
        doc["error"] = Json{{"kind", "parse"}, {"issues", std::move(issues)}};
        report.exit_code = ExitCode::bad_input;
    } catch (const InputError& e) {
        doc["error"] = Json{{"kind", "input"}, {"message", e.what()}};
        report.diagnostics += std::string("error: ") + e.what() + "\n";
        report.exit_code = ExitCode::bad_input;
    } catch (const DomainError& e) {
        doc["error"] = Json{{"kind", "domain"}, {"message", e.what()}};
        report.diagnostics += std::string("error: ") + e.what() + "\n";
        report.exit_code = ExitCode::bad_input;
    } catch (const std::exception& e) {
        doc["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
        report.diagnostics += std::string("internal error: ") + e.what() + "\n";
        report.exit_code = ExitCode::failed;
    }
    report.json = doc.dump(2) + "\n";
    if (opts.out) {
        try {
            write_file(*opts.out, report.json);
        } catch (const InputError& e) {
            report.diagnostics += std::string("error: ") + e.what() + "\n";
            report.exit_code = ExitCode::bad_input;
        }
    }
    return report;
}

}  // namespace okb::cli
