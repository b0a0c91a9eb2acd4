#include <catch2/catch_amalgamated.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <packcov/packcov.hpp>

#include <random>

using namespace packcov;
using testsupport::random_body;
using Catch::Approx;

namespace {

ConvexBody<Rational, 2> unit_square() {
    return ConvexBody<Rational, 2>::from_vertices(
        {{Rational(-1, 2), Rational(-1, 2)},
         {Rational(1, 2), Rational(-1, 2)},
         {Rational(1, 2), Rational(1, 2)},
         {Rational(-1, 2), Rational(1, 2)}},
        true);
}

ConvexBody<Rational, 2> corner_triangle() {
    return ConvexBody<Rational, 2>::from_vertices(
        {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
        false);
}

}  // namespace

TEST_CASE("construction validates the vertex set") {
    // fewer than 3 extreme points
    CHECK_THROWS_AS((ConvexBody<Rational, 2>::from_vertices(
                        {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}, false)),
                    ParameterError);
    // collinear: zero volume
    CHECK_THROWS_AS((ConvexBody<Rational, 2>::from_vertices({{Rational(0), Rational(0)},
                                                             {Rational(1), Rational(1)},
                                                             {Rational(2), Rational(2)}},
                                                            false)),
                    ParameterError);
    // non-extreme vertex rejected
    CHECK_THROWS_AS((ConvexBody<Rational, 2>::from_vertices({{Rational(0), Rational(0)},
                                                             {Rational(2), Rational(0)},
                                                             {Rational(1), Rational(0)},
                                                             {Rational(1), Rational(2)}},
                                                            false)),
                    ParameterError);
    // declared symmetric but is not
    CHECK_THROWS_AS((ConvexBody<Rational, 2>::from_vertices({{Rational(0), Rational(0)},
                                                             {Rational(1), Rational(0)},
                                                             {Rational(0), Rational(1)}},
                                                            true)),
                    ParameterError);
}

TEST_CASE("volume") {
    CHECK(unit_square().volume() == 1);
    CHECK(corner_triangle().volume() == Rational(1, 2));

    // regular hexagon, circumradius 1, float mode
    std::vector<Vec<double, 2>> hex;
    for (int k = 0; k < 6; ++k)
        hex.push_back({std::cos(k * M_PI / 3.0), std::sin(k * M_PI / 3.0)});
    auto hexagon = ConvexBody<double, 2>::from_vertices(hex, true);
    CHECK(hexagon.volume() == Approx(2.598076211353316).epsilon(1e-12));
    CHECK(diff_ratio_W(hexagon) == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("homothet maps vertices and re-normalizes orientation") {
    auto sq = unit_square();
    auto same = homothet(sq, Rational(1), Vec<Rational, 2>{});
    CHECK(same.vertices() == sq.vertices());
    auto negated = homothet(sq, Rational(-1), Vec<Rational, 2>{});
    CHECK(negated.vertices() == sq.vertices());

    auto tri = corner_triangle();
    auto img = homothet(tri, Rational(-1, 2), Vec<Rational, 2>{Rational(1, 2), Rational(1, 2)});
    std::vector<Vec<Rational, 2>> expect = {{Rational(0), Rational(1, 2)},
                                            {Rational(1, 2), Rational(0)},
                                            {Rational(1, 2), Rational(1, 2)}};
    std::sort(expect.begin(), expect.end());
    auto got = img.vertices();
    std::sort(got.begin(), got.end());
    CHECK(got == expect);

    CHECK_THROWS_AS(homothet(sq, Rational(0), Vec<Rational, 2>{}), ParameterError);
}

TEST_CASE("classify_point") {
    auto sq = unit_square();
    CHECK(sq.classify({Rational(0), Rational(0)}) == PointLocation::interior);
    CHECK(sq.classify({Rational(1, 2), Rational(0)}) == PointLocation::boundary);
    CHECK(sq.classify({Rational(1), Rational(1)}) == PointLocation::exterior);
}

TEST_CASE("contains_body") {
    auto sq = unit_square();
    auto half = homothet(sq, Rational(1, 2), Vec<Rational, 2>{});
    CHECK(contains(sq, half));
    auto tri = corner_triangle();
    auto inner = homothet(tri, Rational(-1, 2), Vec<Rational, 2>{Rational(1, 2), Rational(1, 2)});
    CHECK(contains(tri, inner));
    auto shifted = homothet(sq, Rational(1), Vec<Rational, 2>{Rational(3, 5), Rational(0)});
    CHECK_FALSE(contains(sq, shifted));
}

TEST_CASE("difference body of the unit square and the triangle") {
    auto ds = difference_body(unit_square());
    CHECK(ds.volume() == 4);
    CHECK(ds.symmetric());

    auto dt = difference_body(corner_triangle());
    CHECK(dt.volume() == 3);
    std::vector<Vec<Rational, 2>> expect = {{Rational(1), Rational(0)},  {Rational(0), Rational(1)},
                                            {Rational(-1), Rational(1)}, {Rational(-1), Rational(0)},
                                            {Rational(0), Rational(-1)}, {Rational(1), Rational(-1)}};
    std::sort(expect.begin(), expect.end());
    auto got = dt.vertices();
    std::sort(got.begin(), got.end());
    CHECK(got == expect);

    // independent oracle: local hull of the 9 pairwise differences + local shoelace
    auto tri = corner_triangle();
    std::vector<Vec<Rational, 2>> diffs;
    for (const auto& v : tri.vertices())
        for (const auto& w : tri.vertices()) diffs.push_back(v - w);
    auto hull = testsupport::brute_hull(diffs);
    CHECK(testsupport::shoelace_area(hull) == 3);
}

TEST_CASE("centroid") {
    Vec<Rational, 2> zero{};
    CHECK(unit_square().centroid() == zero);
    CHECK(corner_triangle().centroid() == (Vec<Rational, 2>{Rational(1, 3), Rational(1, 3)}));
    CHECK(difference_body(corner_triangle()).centroid() == zero);
}

TEST_CASE("radon vector") {
    CHECK(radon_vector(unit_square()) == (Vec<Rational, 2>{}));
    auto v = radon_vector(corner_triangle());
    CHECK(v == (Vec<Rational, 2>{Rational(1, 2), Rational(1, 2)}));
    // exact image vertices of -(1/2) C + v
    auto img = homothet(corner_triangle(), Rational(-1, 2), v);
    std::vector<Vec<Rational, 2>> expect = {{Rational(0), Rational(1, 2)},
                                            {Rational(1, 2), Rational(0)},
                                            {Rational(1, 2), Rational(1, 2)}};
    std::sort(expect.begin(), expect.end());
    auto got = img.vertices();
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
}

TEST_CASE("diff_ratio_W") {
    CHECK(diff_ratio_W(unit_square()) == Approx(2.0).epsilon(1e-12));
    CHECK(diff_ratio_W(corner_triangle()) == Approx(std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("homothety scales volume by |lambda|^d") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        auto body = random_body(rng, 10, unit(rng) < 0.3);
        long num = 1 + static_cast<long>(unit(rng) * 12);
        long den = 1 + static_cast<long>(unit(rng) * 12);
        Rational lam(num, den);
        if (unit(rng) < 0.5) lam = -lam;
        Vec<Rational, 2> shift{testsupport::snap64(4 * (unit(rng) - 0.5)),
                               testsupport::snap64(4 * (unit(rng) - 0.5))};
        auto image = homothet(body, lam, shift);
        Rational factor = lam < 0 ? -lam : lam;
        CHECK(image.volume() == factor * factor * body.volume());
    }
}

TEST_CASE("homothety volume scaling holds in float mode to 1e-9 relative") {
    std::mt19937 rng(106);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        auto exact = random_body(rng, 10, false);
        std::vector<Vec<double, 2>> verts;
        for (const auto& v : exact.vertices()) verts.push_back(to_double(v));
        auto body = ConvexBody<double, 2>::hulled(verts, false);
        double lam = (unit(rng) < 0.5 ? -1 : 1) * (0.2 + 3.0 * unit(rng));
        Vec<double, 2> shift{4 * (unit(rng) - 0.5), 4 * (unit(rng) - 0.5)};
        auto image = homothet(body, lam, shift);
        double expect = lam * lam * body.volume();
        CHECK(std::fabs(image.volume() - expect) <= 1e-9 * expect);
    }
}

TEST_CASE("difference body is centrally symmetric and within the area range") {
    std::mt19937 rng(102);
    for (int i = 0; i < 60; ++i) {
        auto body = random_body(rng, 12, false);
        auto diff = difference_body(body);
        auto negated = homothet(diff, Rational(-1), Vec<Rational, 2>{});
        CHECK(negated.vertices() == diff.vertices());
        // d=2 Rogers-Shephard window: [4 vol, 6 vol]
        CHECK(diff.volume() >= 4 * body.volume());
        CHECK(diff.volume() <= 6 * body.volume());
    }
}

TEST_CASE("Minkowski-Radon containment holds for random polygons") {
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        auto body = random_body(rng, 12, unit(rng) < 0.25);
        Vec<Rational, 2> v = radon_vector(body);  // verifies internally
        CHECK(contains(body, Homothet<Rational, 2>(body, Rational(-1, 2), v)));
    }
}

TEST_CASE("interior homothets stay inside (convexity)") {
    std::mt19937 rng(104);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        auto body = random_body(rng, 10, false);
        // p interior: a convex mix of the centroid (origin after recentering) and a vertex
        const auto& verts = body.vertices();
        Vec<Rational, 2> p = Rational(1, 3) * verts[static_cast<std::size_t>(unit(rng) * verts.size())];
        REQUIRE(body.classify(p) == PointLocation::interior);
        long den = 1 + static_cast<long>(unit(rng) * 15);
        Rational lam(1 + static_cast<long>(unit(rng) * den), den + 1);  // in (0, 1]
        if (lam > 1) lam = 1;
        Vec<Rational, 2> shift = (Rational(1) - lam) * p;
        CHECK(contains(body, Homothet<Rational, 2>(body, lam, shift)));
    }
}

TEST_CASE("classify is consistent with contains") {
    std::mt19937 rng(105);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        auto a = random_body(rng, 10, false);
        auto b = random_body(rng, 10, false);
        Homothet<Rational, 2> view(b, Rational(1, 1 + static_cast<long>(unit(rng) * 2)),
                                   Vec<Rational, 2>{testsupport::snap64(unit(rng) - 0.5),
                                                    testsupport::snap64(unit(rng) - 0.5)});
        bool all_inside = true;
        for (std::size_t k = 0; k < view.vertex_count(); ++k)
            if (a.classify(view.vertex(k)) == PointLocation::exterior) all_inside = false;
        CHECK(contains(a, view) == all_inside);
    }
}
