#pragma once

#include <cmath>

namespace cartan {

// Second-order truncated Taylor data of a function of one variable.
// Arithmetic on Jet1 propagates value, first and second derivative exactly,
// so curves built from these carry machine-precision velocity/acceleration.
struct Jet1 {
    double f = 0, d1 = 0, d2 = 0;

    static Jet1 constant(double c) { return {c, 0, 0}; }
    static Jet1 variable(double t) { return {t, 1, 0}; }
};

inline Jet1 operator+(Jet1 a, Jet1 b) { return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet1 operator-(Jet1 a, Jet1 b) { return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet1 operator-(Jet1 a) { return {-a.f, -a.d1, -a.d2}; }
inline Jet1 operator*(Jet1 a, Jet1 b) {
    return {a.f * b.f, a.d1 * b.f + a.f * b.d1, a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2};
}
inline Jet1 operator*(double c, Jet1 a) { return {c * a.f, c * a.d1, c * a.d2}; }
inline Jet1 operator*(Jet1 a, double c) { return c * a; }
inline Jet1 operator+(Jet1 a, double c) { return {a.f + c, a.d1, a.d2}; }
inline Jet1 operator+(double c, Jet1 a) { return a + c; }
inline Jet1 operator-(Jet1 a, double c) { return {a.f - c, a.d1, a.d2}; }
inline Jet1 operator-(double c, Jet1 a) { return {c - a.f, -a.d1, -a.d2}; }

// Chain rule for h(g) given h', h'' at g.f.
inline Jet1 chain(Jet1 g, double h, double dh, double ddh) {
    return {h, dh * g.d1, ddh * g.d1 * g.d1 + dh * g.d2};
}

inline Jet1 sin(Jet1 g) { return chain(g, std::sin(g.f), std::cos(g.f), -std::sin(g.f)); }
inline Jet1 cos(Jet1 g) { return chain(g, std::cos(g.f), -std::sin(g.f), -std::cos(g.f)); }
inline Jet1 sqrt(Jet1 g) {
    double r = std::sqrt(g.f);
    return chain(g, r, 0.5 / r, -0.25 / (r * g.f));
}
inline Jet1 operator/(Jet1 a, Jet1 b) {
    double inv = 1.0 / b.f;
    Jet1 r = chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
    return a * r;
}
inline Jet1 operator/(Jet1 a, double c) { return a * (1.0 / c); }
inline Jet1 operator/(double c, Jet1 b) { return Jet1::constant(c) / b; }

// Second-order jet of a function of two variables (u, v).
struct Jet2 {
    double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;

    static Jet2 constant(double c) { return {c, 0, 0, 0, 0, 0}; }
    static Jet2 var_u(double u) { return {u, 1, 0, 0, 0, 0}; }
    static Jet2 var_v(double v) { return {v, 0, 1, 0, 0, 0}; }
};

inline Jet2 operator+(Jet2 a, Jet2 b) {
    return {a.f + b.f, a.fu + b.fu, a.fv + b.fv, a.fuu + b.fuu, a.fuv + b.fuv, a.fvv + b.fvv};
}
inline Jet2 operator-(Jet2 a, Jet2 b) {
    return {a.f - b.f, a.fu - b.fu, a.fv - b.fv, a.fuu - b.fuu, a.fuv - b.fuv, a.fvv - b.fvv};
}
inline Jet2 operator-(Jet2 a) { return {-a.f, -a.fu, -a.fv, -a.fuu, -a.fuv, -a.fvv}; }
inline Jet2 operator*(Jet2 a, Jet2 b) {
    return {a.f * b.f,
            a.fu * b.f + a.f * b.fu,
            a.fv * b.f + a.f * b.fv,
            a.fuu * b.f + 2.0 * a.fu * b.fu + a.f * b.fuu,
            a.fuv * b.f + a.fu * b.fv + a.fv * b.fu + a.f * b.fuv,
            a.fvv * b.f + 2.0 * a.fv * b.fv + a.f * b.fvv};
}
inline Jet2 operator*(double c, Jet2 a) { return {c * a.f, c * a.fu, c * a.fv, c * a.fuu, c * a.fuv, c * a.fvv}; }
inline Jet2 operator*(Jet2 a, double c) { return c * a; }
inline Jet2 operator+(Jet2 a, double c) { a.f += c; return a; }
inline Jet2 operator+(double c, Jet2 a) { return a + c; }
inline Jet2 operator-(Jet2 a, double c) { a.f -= c; return a; }
inline Jet2 operator-(double c, Jet2 a) { return -a + c; }

inline Jet2 chain(Jet2 g, double h, double dh, double ddh) {
    return {h,
            dh * g.fu,
            dh * g.fv,
            ddh * g.fu * g.fu + dh * g.fuu,
            ddh * g.fu * g.fv + dh * g.fuv,
            ddh * g.fv * g.fv + dh * g.fvv};
}

inline Jet2 sin(Jet2 g) { return chain(g, std::sin(g.f), std::cos(g.f), -std::sin(g.f)); }
inline Jet2 cos(Jet2 g) { return chain(g, std::cos(g.f), -std::sin(g.f), -std::cos(g.f)); }
inline Jet2 sqrt(Jet2 g) {
    double r = std::sqrt(g.f);
    return chain(g, r, 0.5 / r, -0.25 / (r * g.f));
}
inline Jet2 operator/(Jet2 a, Jet2 b) {
    double inv = 1.0 / b.f;
    return a * chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}
inline Jet2 operator/(Jet2 a, double c) { return a * (1.0 / c); }
inline Jet2 operator/(double c, Jet2 b) { return Jet2::constant(c) / b; }

// Composition Jet1(Jet2 of one variable collapsed): given a surface coordinate
// jet g(u,v) and a parameter path (u(t), v(t)) as Jet1, the composite g(u(t), v(t))
// as a Jet1 in t.
inline Jet1 compose(const Jet2& g, const Jet1& u, const Jet1& v) {
    Jet1 out;
    out.f = g.f;
    out.d1 = g.fu * u.d1 + g.fv * v.d1;
    out.d2 = g.fuu * u.d1 * u.d1 + 2.0 * g.fuv * u.d1 * v.d1 + g.fvv * v.d1 * v.d1 +
             g.fu * u.d2 + g.fv * v.d2;
    return out;
}

}  // namespace cartan
