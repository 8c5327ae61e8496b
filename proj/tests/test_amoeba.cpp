#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tropimirror/amoeba.hpp"
#include "fixtures.hpp"

using namespace tropimirror;
using namespace tropimirror::amoeba;
using mirror::QValue;
using Catch::Approx;

namespace {

mirror::MirrorPolynomial local_p2() {
    return mirror::build_mirror_polynomial(fixtures::local_p2(), {});
}
mirror::MirrorPolynomial line_poly() {
    return mirror::build_mirror_polynomial(fixtures::unit_triangle(), {});
}

}  // namespace

TEST_CASE("membership: 1 + x + y") {
    auto H = line_poly();
    QValue q;
    double l3 = std::log(1.0 / 3.0);
    CHECK(amoeba_membership(H, q, {l3, l3}) == Membership::Outside);
    CHECK(amoeba_membership(H, q, {0.0, 0.0}) == Membership::Inside);
    CHECK(amoeba_membership(H, q, {5.0, 0.0}) == Membership::Outside);
    CHECK_THROWS_AS(amoeba_membership(H, q, {0, 0}, 16), Error);
}

TEST_CASE("membership: a single monomial has empty amoeba") {
    std::vector<std::pair<IVec, double>> mono = {{{2, -1}, 3.0}};
    for (double x : {-3.0, 0.0, 2.0})
        for (double y : {-2.0, 0.5})
            CHECK(amoeba_membership(mono, {x, y}) == Membership::Outside);
}

TEST_CASE("component degree: tropical-line complement") {
    auto H = line_poly();
    QValue q;
    double l3 = std::log(1.0 / 3.0);
    CHECK(component_degree(H, q, {l3, l3}).degree == IVec{0, 0});
    CHECK(component_degree(H, q, {5.0, 0.0}).degree == IVec{1, 0});
    CHECK(component_degree(H, q, {0.0, 5.0}).degree == IVec{0, 1});
}

TEST_CASE("component degree: local P2 deep corner") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto r = component_degree(H, q, {-3.0, -3.0});
    CHECK(r.degree == IVec{-1, -1});
    CHECK(r.residue1 < 0.25);
    CHECK(r.in_newton_polytope);
}

TEST_CASE("component degree is constant on an outside segment") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    Vec2d a{-3.0, -3.0}, b{-5.0, -4.0};
    auto coeffs = mirror::coefficient_values(H, q);
    for (int k = 0; k <= 6; ++k) {
        double t = k / 6.0;
        Vec2d w{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
        REQUIRE(amoeba_membership(coeffs, w) == Membership::Outside);
        CHECK(component_degree(coeffs, w).degree == IVec{-1, -1});
    }
}

TEST_CASE("degree pairing bound <a, v> <= max over the polytope") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto coeffs = mirror::coefficient_values(H, q);
    std::vector<Vec2d> pts = {{-3, -3}, {5, 0}, {0, 5}, {std::log(1.0 / 3), std::log(1.0 / 3)}};
    for (auto w : pts) {
        auto d = component_degree(coeffs, w);
        for (IVec a : {IVec{1, 0}, IVec{0, 1}, IVec{1, 1}, IVec{-1, 2}}) {
            Int lhs = dot(a, d.degree);
            Int best = std::numeric_limits<Int>::min();
            for (auto& [pt, c] : coeffs) best = std::max(best, dot(a, pt));
            CHECK(lhs <= best);
        }
    }
}

TEST_CASE("ronkin: monomial is exactly linear") {
    std::vector<std::pair<IVec, double>> mono = {{{1, 0}, 1.0}};
    for (double w1 : {-2.0, 0.3, 4.0}) {
        auto r = ronkin_value(mono, {w1, 0.7}, 64);
        CHECK(r.value == Approx(w1).margin(1e-12));
    }
}

TEST_CASE("ronkin: 1 + x + y at (2, 0) equals 2") {
    auto H = line_poly();
    auto r = ronkin_value(H, QValue{}, {2.0, 0.0}, 256);
    CHECK(r.value == Approx(2.0).margin(1e-6));
}

TEST_CASE("ronkin grid validation") {
    auto H = line_poly();
    CHECK_THROWS_AS(ronkin_value(H, QValue{}, {0, 0}, 100), Error);
    CHECK_THROWS_AS(ronkin_value(H, QValue{}, {0, 0}, 32), Error);
}

TEST_CASE("ronkin gradient equals the component degree") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto coeffs = mirror::coefficient_values(H, q);
    const double h = 1e-3;
    for (Vec2d w : {Vec2d{-3, -3}, Vec2d{4, 1}, Vec2d{1, 4}}) {
        auto deg = component_degree(coeffs, w).degree;
        double gx = (ronkin_value(coeffs, {w.x + h, w.y}, 256).value -
                     ronkin_value(coeffs, {w.x - h, w.y}, 256).value) / (2 * h);
        double gy = (ronkin_value(coeffs, {w.x, w.y + h}, 256).value -
                     ronkin_value(coeffs, {w.x, w.y - h}, 256).value) / (2 * h);
        CHECK(gx == Approx(double(deg.m)).margin(1e-2));
        CHECK(gy == Approx(double(deg.n)).margin(1e-2));
    }
}

TEST_CASE("ronkin is convex along a segment") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto coeffs = mirror::coefficient_values(H, q);
    Vec2d a{-3, 1}, b{2, -3};
    auto R = [&](double t) {
        return ronkin_value(coeffs, {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}, 128).value;
    };
    for (double t : {0.2, 0.4, 0.6, 0.8}) {
        double mid = R(t);
        double avg = 0.5 * (R(t - 0.1) + R(t + 0.1));
        CHECK(mid <= avg + 1e-6);
    }
}

TEST_CASE("dominance certificates") {
    auto tri = line_poly();
    auto c0 = dominance_certificate(tri, QValue{}, {0, 0});
    REQUIRE(c0.found);
    // the classic witness (log 1/3, log 1/3) carries ratio 2/3
    CHECK(detail::dominance_ratio(mirror::coefficient_values(tri, QValue{}), {0, 0},
                                  {std::log(1.0 / 3), std::log(1.0 / 3)}) == Approx(2.0 / 3));

    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto c4 = dominance_certificate(H, q, {-1, -1});
    REQUIRE(c4.found);
    auto coeffs = mirror::coefficient_values(H, q);
    CHECK(detail::dominance_ratio(coeffs, {-1, -1}, {-3.0, -3.0}) < 1.0);

    // far from the limit the center term has no witness
    auto cfar = dominance_certificate(H, QValue::uniform(1, 10.0), {0, 0});
    CHECK_FALSE(cfar.found);
}

TEST_CASE("order map surjectivity") {
    CHECK(order_map_surjectivity(line_poly(), QValue{}).pass);
    CHECK(order_map_surjectivity(local_p2(), QValue::uniform(1, 0.01)).pass);
    mirror::BuildOptions opt;
    opt.mode = mirror::BuildOptions::Mode::Explicit;
    opt.exponents = {{1, 0}, {1, 1}};
    auto H9 = mirror::build_mirror_polynomial(fixtures::fig9(), opt);
    auto rep = order_map_surjectivity(H9, QValue::uniform(2, 1.0 / 128));
    for (auto& e : rep.entries) {
        INFO(to_string(e.point) << ": " << e.note);
        CHECK(e.pass);
    }
    CHECK(rep.entries.size() == 5);
}

TEST_CASE("raster: local P2 degree census") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto r = raster_amoeba(H, q, -8, 8, -8, 8, 60, 64, 5e-2);
    REQUIRE(r.degrees.size() >= 4);
    std::set<std::pair<Int, Int>> classes;
    for (size_t k = 0; k < r.degrees.size(); ++k)
        if (r.degree_valid[k]) classes.insert({r.degrees[k].m, r.degrees[k].n});
    CHECK(classes == std::set<std::pair<Int, Int>>{{1, 0}, {0, 1}, {0, 0}, {-1, -1}});
}

TEST_CASE("winding residues stay within the gate on random outside points") {
    auto H = local_p2();
    QValue q = QValue::uniform(1, 0.01);
    auto coeffs = mirror::coefficient_values(H, q);
    std::mt19937 rng(20240809);
    std::uniform_real_distribution<double> U(-7.0, 7.0);
    int n = 0;
    while (n < 100) {
        Vec2d w{U(rng), U(rng)};
        if (amoeba_membership(coeffs, w) != Membership::Outside) continue;
        auto d = component_degree(coeffs, w);
        CHECK(d.residue1 < 0.25);
        CHECK(d.residue2 < 0.25);
        ++n;
    }
}
