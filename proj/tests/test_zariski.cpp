#include "support.hpp"

#include "okb/linalg.hpp"

using namespace okb;
using namespace okb::test;

namespace {

std::set<std::set<Vector>> generator_sets(const std::vector<Chamber>& cs) {
    std::set<std::set<Vector>> out;
    for (const auto& c : cs) out.insert(as_set(c.generators));
    return out;
}

// Independent check of the defining properties, no reference to the algorithm.
void check_zariski(const SurfaceData& s, const Vector& d, const ZariskiDecomposition& z) {
    CHECK(add(z.positive, z.negative) == Vector(d));
    for (const auto& c : s.negative_curves) CHECK(intersect(s, z.positive, c) >= 0);
    for (const auto& g : s.eff_generators) CHECK(intersect(s, z.positive, g) >= 0);
    for (std::size_t i = 0; i < z.support.size(); ++i) {
        CHECK(z.coefficients[i] > 0);
        CHECK(intersect(s, z.positive, s.negative_curves[z.support[i]]) == 0);
    }
    if (!z.support.empty()) {
        Matrix g(z.support.size(), z.support.size());
        for (std::size_t i = 0; i < z.support.size(); ++i)
            for (std::size_t j = 0; j < z.support.size(); ++j)
                g(i, j) = intersect(s, s.negative_curves[z.support[i]], s.negative_curves[z.support[j]]);
        CHECK(is_negative_definite(g));
    }
}

}  // namespace

TEST_CASE("zariski_decompose") {
    const auto s = bl2p2();
    SUBCASE("ample class is its own positive part") {
        auto z = zariski_decompose(s, v({3, -1, -1}));
        CHECK(z.positive == v({3, -1, -1}));
        CHECK(is_zero(z.negative));
        CHECK(z.support.empty());
    }
    SUBCASE("a negative curve is all negative part") {
        auto z = zariski_decompose(s, v({1, -1, -1}));
        CHECK(is_zero(z.positive));
        CHECK(z.negative == v({1, -1, -1}));
        CHECK(z.support == std::vector<std::size_t>{2});
        CHECK(z.coefficients == Vector{1});
    }
    SUBCASE("3H-2E1-2E2") {
        const auto d = v({3, -2, -2});
        auto z = zariski_decompose(s, d);
        CHECK(z.positive == v({2, -1, -1}));
        CHECK(z.negative == v({1, -1, -1}));
        check_zariski(s, d, z);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(zariski_decompose(s, v({0, -1, 0})), DomainError);
        CHECK_THROWS_AS(zariski_decompose(s, v({1, 0})), InputError);
        auto incomplete = s;
        incomplete.negative_curves = {v({0, 1, 0}), v({1, -1, -1})};
        CHECK_THROWS_AS(zariski_decompose(incomplete, v({0, 0, 1})), InternalError);
    }
}

TEST_CASE("enumerate_chambers") {
    SUBCASE("two-point blowup: the five chambers of the table") {
        const auto cs = enumerate_chambers(bl2p2());
        REQUIRE(cs.size() == 5);
        const Vector H = v({1, 0, 0}), A1 = v({1, -1, 0}), A2 = v({1, 0, -1}), E1 = v({0, 1, 0}), E2 = v({0, 0, 1}),
                     L = v({1, -1, -1});
        const std::set<std::set<Vector>> table{{H, A1, A2}, {H, E1, E2}, {H, A1, E2}, {H, A2, E1}, {A1, A2, L}};
        CHECK(generator_sets(cs) == table);
        // nef chamber first, supports in mask order
        CHECK(cs.front().support.empty());
        for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1].support_mask < cs[i].support_mask);
    }
    SUBCASE("plane") {
        const auto cs = enumerate_chambers(p2());
        REQUIRE(cs.size() == 1);
        CHECK(as_set(cs[0].generators) == as_set({v({1})}));
    }
    SUBCASE("F_1") {
        const auto cs = enumerate_chambers(hirzebruch(1));
        CHECK(generator_sets(cs) == std::set<std::set<Vector>>{{v({0, 1}), v({1, 1})}, {v({1, 0}), v({1, 1})}});
    }
    SUBCASE("parallel enumeration agrees") {
        for (const char* name : {"bl2p2_flagH", "p1p1p1", "f2"}) {
            const auto s = surface(name);
            const auto a = enumerate_chambers(s);
            const auto b = enumerate_chambers_parallel(s, 4);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].support_mask == b[i].support_mask);
                CHECK(a[i].generators == b[i].generators);
            }
        }
    }
}

TEST_CASE("chamber_of") {
    const auto s = bl2p2();
    const auto cs = enumerate_chambers(s);
    CHECK(chamber_of(cs, v({3, -1, -1})).support.empty());
    // H lies in the closure of four chambers; the nef one has the smallest support
    CHECK(chamber_of(cs, v({1, 0, 0})).support.empty());
    CHECK(chamber_of(cs, v({3, -2, -2})).support == std::vector<std::size_t>{2});
    CHECK(chamber_of(cs, v({2, 1, 0})).support == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(chamber_of(cs, v({-1, 0, 0})), DomainError);
}

TEST_CASE("property: decomposition is independent of the curve order") {
    Rng rng(101);
    for (const char* name : {"bl2p2_flagH", "p1p1p1", "f2"}) {
        const auto s = surface(name);
        for (int i = 0; i < 60; ++i) {
            const auto d = random_effective(s, rng);
            const auto z = zariski_decompose(s, d);
            check_zariski(s, d, z);
            auto shuffled = s;
            rng.shuffle(shuffled.negative_curves);
            const auto w = zariski_decompose(shuffled, d);
            CHECK(w.positive == z.positive);
            CHECK(w.negative == z.negative);
        }
    }
}

TEST_CASE("property: positive part is linear on chamber closures") {
    Rng rng(7);
    for (const char* name : {"bl2p2_flagH", "p1p1p1"}) {
        const auto s = surface(name);
        for (const auto& c : enumerate_chambers(s)) {
            for (int i = 0; i < 10; ++i) {
                auto point = [&] {
                    Vector x = zero_vector(s.rank);
                    for (const auto& g : c.generators) x = axpy(x, Rational(rng.uniform(0, 4)), g);
                    return x;
                };
                const auto d = point(), e = point();
                if (is_zero(d) || is_zero(e)) continue;
                const Rational t = frac(rng.uniform(0, 8), 8);
                const auto mix = add(scale(d, t), scale(e, 1 - t));
                const auto pd = zariski_decompose(s, d).positive, pe = zariski_decompose(s, e).positive;
                CHECK(zariski_decompose(s, mix).positive == add(scale(pd, t), scale(pe, 1 - t)));
            }
        }
    }
}

TEST_CASE("property: volume is monotone along the flag direction") {
    Rng rng(19);
    const auto s = bl2p2();
    const auto a = v({1, 0, 0});
    for (int i = 0; i < 100; ++i) {
        const auto d = random_effective(s, rng);
        const Rational eps = frac(1, rng.uniform(2, 16));
        const auto smaller = axpy(d, -eps, a);
        if (!is_pseudo_effective(s, smaller)) continue;
        const auto p = zariski_decompose(s, d).positive, r = zariski_decompose(s, smaller).positive;
        CHECK(intersect(s, p, p) >= intersect(s, r, r));
    }
}
