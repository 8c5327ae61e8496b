#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropimirror {

using Int = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// Base error for all toolkit failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input/usage failures (bad files, malformed arguments). CLI exit code 2.
struct InputError : Error {
    using Error::Error;
};

/// A certificate required "near the large radius limit" could not be produced.
/// CLI exit code 3.
struct RegimeError : Error {
    using Error::Error;
};

/// Lattice vector / point in N' = Z^2.
struct IVec {
    Int m = 0;
    Int n = 0;

    friend IVec operator+(IVec a, IVec b) { return {a.m + b.m, a.n + b.n}; }
    friend IVec operator-(IVec a, IVec b) { return {a.m - b.m, a.n - b.n}; }
    friend IVec operator*(Int k, IVec v) { return {k * v.m, k * v.n}; }
    IVec operator-() const { return {-m, -n}; }
    bool operator==(const IVec&) const = default;
    auto operator<=>(const IVec&) const = default;  // lexicographic by (m, n)
};

using LatticePoint = IVec;

inline Int dot(IVec a, IVec b) { return a.m * b.m + a.n * b.n; }
inline Int det(IVec a, IVec b) { return a.m * b.n - a.n * b.m; }
inline IVec rot90(IVec v) { return {-v.n, v.m}; }  // counterclockwise quarter turn

inline Int igcd(Int a, Int b) { return std::gcd(a, b); }

/// gcd of the components; 0 for the zero vector.
inline Int content(IVec v) { return std::gcd(std::abs(v.m), std::abs(v.n)); }

inline IVec primitive(IVec v) {
    Int g = content(v);
    if (g == 0) throw Error("primitive(): zero vector");
    return {v.m / g, v.n / g};
}

inline std::string to_string(IVec v) {
    return "(" + std::to_string(v.m) + "," + std::to_string(v.n) + ")";
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

struct Vec2d {
    double x = 0.0;
    double y = 0.0;
    friend Vec2d operator+(Vec2d a, Vec2d b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2d operator-(Vec2d a, Vec2d b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2d operator*(double k, Vec2d v) { return {k * v.x, k * v.y}; }
};

inline double dot(Vec2d a, Vec2d b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2d a) { return std::hypot(a.x, a.y); }

}  // namespace tropimirror
