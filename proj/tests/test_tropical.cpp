#include <catch2/catch_amalgamated.hpp>

#include "tropimirror/tropical.hpp"
#include "fixtures.hpp"

using namespace tropimirror;
using namespace tropimirror::tropical;
using mirror::BuildOptions;
using mirror::QValue;
using Catch::Approx;

static mirror::MirrorPolynomial local_p2() {
    return mirror::build_mirror_polynomial(fixtures::local_p2(), {});
}

static mirror::MirrorPolynomial fig9_explicit() {
    BuildOptions opt;
    opt.mode = BuildOptions::Mode::Explicit;
    opt.exponents = {{1, 0}, {1, 1}};
    return mirror::build_mirror_polynomial(fixtures::fig9(), opt);
}

TEST_CASE("spine coefficients: 1 + x + y has exactly zero gammas") {
    auto H = mirror::build_mirror_polynomial(fixtures::unit_triangle(), {});
    auto sc = spine_coefficients(H, QValue{}, 1e-6);
    for (double g : sc.gamma) CHECK(g == 0.0);
}

TEST_CASE("spine coefficients: local P2 series matches the Ronkin oracle") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto sc = spine_coefficients(H, q, 1e-6);
    int i3 = -1, i4 = -1, i1 = -1, i2 = -1;
    for (size_t i = 0; i < H.tri.points.size(); ++i) {
        if (H.tri.points[i] == IVec{0, 0}) i3 = int(i);
        if (H.tri.points[i] == IVec{-1, -1}) i4 = int(i);
        if (H.tri.points[i] == IVec{1, 0}) i1 = int(i);
        if (H.tri.points[i] == IVec{0, 1}) i2 = int(i);
    }
    CHECK(sc.gamma[i1] == 0.0);  // no tuple of the other points sums to k(1,0)
    CHECK(sc.gamma[i2] == 0.0);
    CHECK(sc.gamma[i4] == Approx(std::log(0.01)).margin(1e-12));
    // frozen independent value (torus integral of log|H| over the (0,0) cell)
    CHECK(sc.gamma[i3] == Approx(-0.021721779959).margin(1e-6));

    // dual-oracle agreement with the Ronkin integral inside the (0,0) cell
    Vec2d wstar{std::log(1.0 / 3.0), std::log(1.0 / 3.0)};
    auto rv = amoeba::ronkin_value(H, q, wstar, 128);
    CHECK(sc.gamma[i3] == Approx(rv.value).margin(1e-4));

    // |gamma_i - log|a_i|| < 1 near the large radius limit
    auto coeffs = mirror::coefficient_values(H, q);
    for (size_t i = 0; i < sc.gamma.size(); ++i) {
        double la = 0;
        for (auto& [pt, c] : coeffs)
            if (pt == H.tri.points[i]) la = std::log(std::abs(c));
        CHECK(std::abs(sc.gamma[i] - la) < 1.0);
    }
}

TEST_CASE("spine coefficients refuse an out-of-regime q") {
    auto H = local_p2();
    CHECK_THROWS_AS(spine_coefficients(H, QValue::uniform(1, 10.0), 1e-6), RegimeError);
}

TEST_CASE("tropical line: vertex and ray structure") {
    auto T = TropicalPolynomial::of({{0.0, {0, 0}}, {0.0, {1, 0}}, {0.0, {0, 1}}});
    auto c = tropical_hypersurface(T);
    REQUIRE(c.vertices.size() == 1);
    CHECK(c.vertices[0].pos.x == Approx(0.0).margin(1e-12));
    CHECK(c.vertices[0].pos.y == Approx(0.0).margin(1e-12));
    CHECK(c.edges.empty());
    REQUIRE(c.rays.size() == 3);
    std::set<std::pair<Int, Int>> dirs;
    for (const auto& r : c.rays) dirs.insert({r.dir.m, r.dir.n});
    CHECK(dirs == std::set<std::pair<Int, Int>>{{1, 1}, {-1, 0}, {0, -1}});
    CHECK(balancing_check(c));
}

TEST_CASE("two-term max is a single line") {
    auto T = TropicalPolynomial::of({{0.0, {0, 0}}, {0.0, {1, 0}}});
    auto c = tropical_hypersurface(T);
    CHECK(c.vertices.empty());
    CHECK(c.rays.empty());
    REQUIRE(c.lines.size() == 1);
    CHECK(c.lines[0].dir == IVec{0, 1});
    CHECK_THROWS_AS(TropicalPolynomial::of({{0.0, {1, 1}}, {2.0, {1, 1}}}), Error);
}

TEST_CASE("local P2 spine: 3-cycle around the origin cell") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto s = spine(H, q, 1e-6);
    const double g3 = -0.021721779959, g4 = std::log(0.01);
    REQUIRE(s.curve.vertices.size() == 3);
    REQUIRE(s.curve.edges.size() == 3);
    REQUIRE(s.curve.rays.size() == 3);
    std::vector<Vec2d> expect = {{g3, g3}, {g4 - 2 * g3, g3}, {g3, g4 - 2 * g3}};
    for (auto e : expect) {
        bool found = false;
        for (const auto& v : s.curve.vertices)
            found |= std::abs(v.pos.x - e.x) < 1e-6 && std::abs(v.pos.y - e.y) < 1e-6;
        CHECK(found);
    }
    CHECK(balancing_check(s.curve));

    SECTION("deleting a ray breaks balancing") {
        auto broken = s.curve;
        broken.rays.pop_back();
        CHECK_FALSE(balancing_check(broken));
    }

    SECTION("every spine vertex lies in the amoeba (inside or uncertain)") {
        for (const auto& v : s.curve.vertices) {
            auto m = amoeba::amoeba_membership(H, q, v.pos, 64, 1e-2);
            CHECK(m != amoeba::Membership::Outside);
        }
    }
}

TEST_CASE("subdivision cell counts") {
    auto lineT = TropicalPolynomial::of({{0.0, {0, 0}}, {0.0, {1, 0}}, {0.0, {0, 1}}});
    auto ls = subdivision_of(tropical_hypersurface(lineT));
    int d0 = 0, d1 = 0, d2 = 0;
    for (size_t i = 0; i < ls.sub.size(); ++i) {
        d0 += ls.sub.cell(int(i)).dim == 0;
        d1 += ls.sub.cell(int(i)).dim == 1;
        d2 += ls.sub.cell(int(i)).dim == 2;
    }
    CHECK(d0 == 1);
    CHECK(d1 == 3);
    CHECK(d2 == 3);

    auto sp = spine(local_p2(), QValue::uniform(1, 0.01), 1e-6);
    CHECK(subdivision_of(sp.curve).term_cell.size() == 4);

    auto sp9 = spine(fig9_explicit(), QValue::uniform(2, 1.0 / 128), 1e-6);
    CHECK(subdivision_of(sp9.curve).term_cell.size() == 5);
}

TEST_CASE("dual check: local P2 at q = 0.01 passes") {
    auto cert = dual_check(local_p2(), QValue::uniform(1, 0.01), 1e-6);
    INFO(cert.message);
    CHECK(cert.pass);
    CHECK(cert.dual_one_cell_pairs == 6);
}

TEST_CASE("dual check: fig 9 at q1 = q2 = 1/128 passes with 7 dual pairs") {
    auto cert = dual_check(fig9_explicit(), QValue::uniform(2, 1.0 / 128), 1e-6);
    INFO(cert.message);
    CHECK(cert.pass);
    CHECK(cert.dual_one_cell_pairs == 7);
}

TEST_CASE("dual check: single triangle") {
    auto H = mirror::build_mirror_polynomial(fixtures::unit_triangle(), {});
    auto cert = dual_check(H, QValue{}, 1e-6);
    INFO(cert.message);
    CHECK(cert.pass);
    CHECK(cert.dual_one_cell_pairs == 3);
}

TEST_CASE("dual check far from the limit reports honestly") {
    CHECK_THROWS_AS(dual_check(local_p2(), QValue::uniform(1, 10.0), 1e-6), RegimeError);
}

TEST_CASE("spine agrees with the Ronkin value on dominance regions") {
    auto H9 = fig9_explicit();
    QValue q = QValue::uniform(2, 1.0 / 128);
    auto sc = spine_coefficients(H9, q, 1e-6);
    for (size_t i = 0; i < H9.tri.points.size(); ++i) {
        IVec b = H9.tri.points[i];
        auto cert = amoeba::dominance_certificate(H9, q, b);
        REQUIRE(cert.found);
        auto rv = amoeba::ronkin_value(H9, q, cert.w, 128);
        double linear = sc.gamma[i] + b.m * cert.w.x + b.n * cert.w.y;
        CHECK(rv.value == Approx(linear).margin(std::max(1e-4, 10 * rv.error_estimate)));
    }
}
