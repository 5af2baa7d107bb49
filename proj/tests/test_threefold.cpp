#include "support.hpp"

using namespace okb;
using namespace okb::test;

namespace {

struct Lift {
    ThreefoldData data;
    GlobalBodyCone surface_global;
    LiftedCone lifted;
};

Lift lift(const std::string& name) {
    Lift l;
    l.data = *instance(name).threefold;
    l.surface_global = global_generators_surface(OkounkovEngine(l.data.surface, l.data.flag.curve_class));
    l.lifted = lift_cone(l.data, l.surface_global);
    return l;
}

Vector random_ample(const ThreefoldData& t, Rng& rng) {
    Vector d = zero_vector(t.rank);
    for (const auto& g : t.eff_generators) d = axpy(d, Rational(rng.uniform(1, 4)), g);
    return d;
}

Vector random_divisor(const ThreefoldData& t, Rng& rng) {
    for (;;) {
        Vector d = zero_vector(t.rank);
        for (const auto& g : t.eff_generators) d = axpy(d, Rational(rng.uniform(0, 3)), g);
        if (!is_zero(d)) return d;
    }
}

Polygon2 slice_at_zero(const Polytope3& p) {
    std::vector<Point2> pts;
    for (const auto& x : p.vertices) {
        CHECK(x[0] >= 0);
        if (x[0] == 0) pts.push_back({x[1], x[2]});
    }
    REQUIRE_FALSE(pts.empty());
    return hull2(pts);
}

const char* const kThreefolds[] = {"boxfold", "p1p1p1", "fullflag", "p1p2", "lagrangian_grassmannian"};

}  // namespace

TEST_CASE("restricted_cone_Q") {
    SUBCASE("identity restriction") {
        ThreefoldData t;
        t.surface = bl2p2();
        t.rank = 3;
        t.eff_generators = t.surface.eff_generators;
        t.restriction = Matrix::identity(3);
        CHECK(as_set(restricted_cone_Q(t).rays()) == as_set(t.surface.eff_generators));
    }
    SUBCASE("boxfold maps onto the quadrant") {
        auto t = *instance("boxfold").threefold;
        CHECK(as_set(restricted_cone_Q(t).rays()) == as_set({v({1, 0}), v({0, 1})}));
        for (std::size_t r = 0; r < t.restriction.rows(); ++r)
            for (std::size_t c = 0; c < t.restriction.cols(); ++c) t.restriction(r, c) *= 2;
        CHECK(as_set(restricted_cone_Q(t).rays()) == as_set({v({1, 0}), v({0, 1})}));
    }
}

TEST_CASE("threefold validation") {
    auto t = *instance("boxfold").threefold;
    CHECK_FALSE(has_errors(validate(t)));
    auto bad = t;
    bad.restriction(0, 2) = -1;
    CHECK(has_errors(validate(bad)));
    auto outside = t;
    outside.y1 = v({-1, 0, 0});
    CHECK(has_errors(validate(outside)));
}

TEST_CASE("boxfold lift") {
    const auto l = lift("boxfold");
    for (const auto& c : pullback_checks(l.data, l.surface_global, l.lifted)) {
        CHECK(c.first_coordinate_zero);
        CHECK(c.over_q);
        CHECK(c.certificate.feasible);
    }
    const auto& first = l.lifted.body.generators.front();
    CHECK(first.valuation == v({1, 0, 0}));
    CHECK(first.divisor == l.data.y1);

    const Fiber3Extractor fx(l.lifted);
    const auto over_y1 = fx.fiber(l.data.y1);
    CHECK(over_y1.contains(v({1, 0, 0})));
    CHECK(over_y1.contains(v({0, 0, 0})));
    CHECK(over_y1.volume() == triple_product(l.data, l.data.y1, l.data.y1, l.data.y1) / 6);

    const auto cube = fx.fiber(v({1, 1, 1}));
    CHECK(cube.volume() == 1);
    CHECK(triple_product(l.data, v({1, 1, 1}), v({1, 1, 1}), v({1, 1, 1})) == 6);
    CHECK_THROWS_AS(fx.fiber(v({-1, 0, 0})), DomainError);
}

TEST_CASE("property: slice at the first coordinate zero is the surface fiber") {
    Rng rng(71);
    for (const char* name : kThreefolds) {
        const std::string instance_name = name;
        CAPTURE(instance_name);
        const auto l = lift(name);
        const Fiber3Extractor fx(l.lifted);
        const FiberExtractor surf(l.surface_global);
        // include the boundary of Q: the Eff(X) generators themselves
        std::vector<Vector> ds = l.data.eff_generators;
        for (int i = 0; i < 6; ++i) ds.push_back(random_divisor(l.data, rng));
        for (const auto& d : ds) {
            const auto rd = l.data.restriction.apply(d);
            CHECK(slice_at_zero(fx.fiber(d)) == surf.fiber(rd));
        }
    }
}

TEST_CASE("property: shift law") {
    Rng rng(73);
    for (const char* name : kThreefolds) {
        const std::string instance_name = name;
        CAPTURE(instance_name);
        const auto l = lift(name);
        const Fiber3Extractor fx(l.lifted);
        for (int i = 0; i < 20; ++i) {
            const auto d = random_divisor(l.data, rng);
            const auto bigger = fx.fiber(add(d, l.data.y1));
            for (const auto& x : fx.fiber(d).vertices) CHECK(bigger.contains(add(x, v({1, 0, 0}))));
        }
    }
}

TEST_CASE("property: fiber volumes recover the cubic form") {
    Rng rng(79);
    for (const char* name : kThreefolds) {
        const std::string instance_name = name;
        CAPTURE(instance_name);
        const auto l = lift(name);
        REQUIRE(l.data.triple_products);
        const Fiber3Extractor fx(l.lifted);
        for (int i = 0; i < 10; ++i) {
            const auto d = random_ample(l.data, rng);
            CHECK(fx.fiber(d).volume() == triple_product(l.data, d, d, d) / 6);
        }
    }
}

TEST_CASE("property: pullback checks pass on every shipped threefold") {
    for (const char* name : kThreefolds) {
        const std::string instance_name = name;
        CAPTURE(instance_name);
        const auto l = lift(name);
        CHECK(l.lifted.cone.is_pointed());
        for (const auto& c : pullback_checks(l.data, l.surface_global, l.lifted)) {
            CHECK(c.first_coordinate_zero);
            CHECK(c.over_q);
            CHECK(c.certificate.feasible);
        }
        for (const auto& r : l.lifted.rays) CHECK(primitive(r) == r);
    }
}
