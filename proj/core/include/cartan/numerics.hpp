#pragma once

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cartan/types.hpp"

namespace cartan {

inline constexpr double pi = std::numbers::pi;

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    if (a > pi) a -= 2.0 * pi;
    return a;
}

// Unsigned angle between two vectors, robust near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

// Cumulative integral of uniformly sampled f with step h.  out[0] = 0.
// Fourth-order accurate: even indices use composite Simpson, odd indices close
// the last interval with the three-point Newton-Cotes rule
//   int_{x_{i-1}}^{x_i} f = h (-f_{i-2} + 8 f_{i-1} + 5 f_i) / 12,
// and index 1 uses its forward mirror.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

// Derivative of a uniformly sampled sequence, fourth-order central stencil
//   (f_{i-2} - 8 f_{i-1} + 8 f_{i+1} - f_{i+2}) / (12 h).
// Periodic sequences wrap (samples.front() == samples.back() expected, the
// duplicate endpoint is handled); open sequences use one-sided fourth-order
// stencils at the boundary.
std::vector<double> derivative_samples(const std::vector<double>& f, double h, bool periodic);
std::vector<Vec3> derivative_samples(const std::vector<Vec3>& f, double h, bool periodic);

// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs.
// Returns the midpoint of the final bracket once |hi - lo| <= xtol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol);

// Shortest round-trip decimal representation of a double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Fixed significant-digit formatting (used by exporters for stable files).
inline std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    // normalize negative zero so exported files are deterministic
    if (buf[0] == '-' && std::strtod(buf, nullptr) == 0.0) return std::string(buf + 1);
    return std::string(buf);
}

}  // namespace cartan
