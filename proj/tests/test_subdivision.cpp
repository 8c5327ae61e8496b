#include <catch2/catch_amalgamated.hpp>

#include "tropimirror/subdivision.hpp"
#include "fixtures.hpp"

using namespace tropimirror;
using namespace tropimirror::lattice;

TEST_CASE("Cone2 canonical forms and duals") {
    CHECK(Cone2::hull({}) == Cone2::zero());
    CHECK(Cone2::hull({{2, 4}}) == Cone2::ray({1, 2}));
    CHECK(Cone2::hull({{1, 0}, {0, 1}}) == Cone2::wedge({1, 0}, {0, 1}));
    CHECK(Cone2::hull({{1, 0}, {-1, 0}}) == Cone2::line({1, 0}));
    CHECK(Cone2::hull({{1, 0}, {-1, 0}, {0, 1}}) == Cone2::halfplane_inward({0, 1}));
    CHECK(Cone2::hull({{1, 0}, {-1, 2}, {0, -1}}) == Cone2::plane());
    CHECK(Cone2::hull({{1, 1}, {-1, 0}, {0, -1}}) == Cone2::plane());

    CHECK(Cone2::zero().dual() == Cone2::plane());
    CHECK(Cone2::ray({1, 0}).dual() == Cone2::halfplane_inward({-1, 0}));
    CHECK(Cone2::line({1, 2}).dual() == Cone2::line({2, -1}) );
    // dual of the first quadrant is the third quadrant
    CHECK(Cone2::wedge({1, 0}, {0, 1}).dual() == Cone2::wedge({-1, 0}, {0, -1}));
    // involution on a sample of cones
    for (Cone2 c : {Cone2::zero(), Cone2::plane(), Cone2::ray({3, -1}), Cone2::line({2, 5}),
                    Cone2::halfplane_inward({1, -2}), Cone2::wedge({2, 1}, {-1, 3})})
        CHECK(c.dual().dual() == c);
}

TEST_CASE("triangulation subdivision has the right cell counts") {
    auto t = fixtures::local_p2();
    auto ts = triangulation_subdivision(t);
    int d0 = 0, d1 = 0, d2 = 0;
    for (size_t i = 0; i < ts.sub.size(); ++i) {
        int d = ts.sub.cell(int(i)).dim;
        d0 += d == 0;
        d1 += d == 1;
        d2 += d == 2;
    }
    CHECK(d0 == 4);
    CHECK(d1 == 6);
    CHECK(d2 == 3);
}

TEST_CASE("tropical-line subdivision is dual to the unit triangle") {
    // Subdivision of R^2 by max{0, w1, w2}: one vertex, three rays, three cells.
    Subdivision s;
    int v = s.add_cell(0, {0, 0}, "v");
    int r01 = s.add_cell(1, {0.5, 0.5}, "ray{1,2}");   // ties terms x and y
    int r0c = s.add_cell(1, {0, -1}, "ray{1,3}");      // x against 1: w1=0, w2<=0
    int r1c = s.add_cell(1, {-1, 0}, "ray{2,3}");      // y against 1: w2=0, w1<=0
    int cx = s.add_cell(2, {2, -1}, "cell x");
    int cy = s.add_cell(2, {-1, 2}, "cell y");
    int c1 = s.add_cell(2, {-2, -2}, "cell 1");
    s.set_covering(v, r01, Cone2::ray({1, 1}));
    s.set_covering(v, r0c, Cone2::ray({0, -1}));
    s.set_covering(v, r1c, Cone2::ray({-1, 0}));
    s.set_span(r01, Cone2::line({1, 1}));
    s.set_span(r0c, Cone2::line({0, 1}));
    s.set_span(r1c, Cone2::line({1, 0}));
    s.set_covering(r01, cx, Cone2::halfplane_inward({1, -1}));
    s.set_covering(r01, cy, Cone2::halfplane_inward({-1, 1}));
    s.set_covering(r0c, cx, Cone2::halfplane_inward({1, 0}));
    s.set_covering(r0c, c1, Cone2::halfplane_inward({-1, 0}));
    s.set_covering(r1c, cy, Cone2::halfplane_inward({0, 1}));
    s.set_covering(r1c, c1, Cone2::halfplane_inward({0, -1}));
    s.finalize();

    auto ts = triangulation_subdivision(fixtures::unit_triangle());
    // corr: v -> triangle, ray{i,j} -> edge{i,j}, cell_i -> b_i
    std::vector<int> corr(s.size());
    corr[v] = ts.triangle_cell[0];
    corr[r01] = ts.edge_cell.at({0, 1});
    corr[r0c] = ts.edge_cell.at({0, 2});
    corr[r1c] = ts.edge_cell.at({1, 2});
    corr[cx] = ts.vertex_cell.at(0);
    corr[cy] = ts.vertex_cell.at(1);
    corr[c1] = ts.vertex_cell.at(2);
    auto w = check_dual_subdivision(s, ts.sub, corr);
    INFO(w.message);
    CHECK(w.ok);

    SECTION("symmetry: the inverse correspondence also passes") {
        std::vector<int> inv(ts.sub.size());
        for (size_t i = 0; i < corr.size(); ++i) inv[corr[i]] = int(i);
        auto w2 = check_dual_subdivision(ts.sub, s, inv);
        INFO(w2.message);
        CHECK(w2.ok);
    }

    SECTION("a wrong pairing fails with a witness") {
        std::swap(corr[cx], corr[cy]);
        auto w3 = check_dual_subdivision(s, ts.sub, corr);
        CHECK_FALSE(w3.ok);
        CHECK_FALSE(w3.message.empty());
    }
}

TEST_CASE("identity map on a 2-cell-only subdivision fails the dimension condition") {
    Subdivision s;
    s.add_cell(2, {0, 0}, "all");
    s.set_span(0, Cone2::plane());
    s.finalize();
    auto w = check_dual_subdivision(s, s, {0});
    CHECK_FALSE(w.ok);
    CHECK(w.message.find("dimension") != std::string::npos);
}

TEST_CASE("non-bijective correspondence is an error") {
    Subdivision s;
    s.add_cell(0, {0, 0}, "a");
    s.add_cell(0, {1, 0}, "b");
    s.finalize();
    CHECK_THROWS_AS(check_dual_subdivision(s, s, {0, 0}), Error);
}
