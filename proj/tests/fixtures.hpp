#pragma once

// Reference triangulations shared across the test suites.

#include "tropimirror/lattice.hpp"

namespace tropimirror::fixtures {

using lattice::Triangulation;

/// Single cell: the base triangle (1,0), (0,1), (0,0).
inline Triangulation unit_triangle() {
    Triangulation t;
    t.points = {{1, 0}, {0, 1}, {0, 0}};
    t.triangles = {{0, 1, 2}};
    return t;
}

/// Fan of local P^2: hull conv{(1,0),(0,1),(-1,-1)} triangulated around (0,0).
inline Triangulation local_p2() {
    Triangulation t;
    t.points = {{1, 0}, {0, 1}, {0, 0}, {-1, -1}};
    t.triangles = {{0, 1, 2}, {1, 3, 2}, {3, 0, 2}};
    return t;
}

/// The example with mirror curve 1 + x + y + q1 y^2 + q1 q2 x y (up to sign):
/// hull conv{(0,0),(1,0),(1,1),(0,2)}, diagonals from (1,0).
inline Triangulation fig9() {
    Triangulation t;
    t.points = {{1, 0}, {0, 1}, {0, 0}, {0, 2}, {1, 1}};
    t.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 4, 3}};
    return t;
}

/// hull conv{(1,0),(0,1),(-1,3)}; mirror curve 1 + x + y - q x^{-1} y^3.
inline Triangulation fig18() {
    Triangulation t;
    t.points = {{1, 0}, {0, 1}, {0, 0}, {-1, 3}};
    t.triangles = {{0, 1, 2}, {0, 3, 1}, {2, 1, 3}};
    return t;
}

/// Unit square; with a positive coefficient at (1,1) this is the
/// M-but-not-cyclic example.
inline Triangulation square() {
    Triangulation t;
    t.points = {{1, 0}, {0, 1}, {0, 0}, {1, 1}};
    t.triangles = {{0, 1, 2}, {0, 3, 1}};
    return t;
}

/// hull conv{(1,0),(0,2),(-1,-1)} with two interior points (0,0) and (0,1).
inline Triangulation two_interior() {
    Triangulation t;
    t.points = {{1, 0}, {0, 1}, {0, 0}, {0, 2}, {-1, -1}};
    t.triangles = {{0, 1, 2}, {0, 3, 1}, {2, 1, 4}, {1, 3, 4}, {2, 4, 0}};
    return t;
}

}  // namespace tropimirror::fixtures
