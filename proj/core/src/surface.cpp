#include "cartan/surface.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "cartan/errors.hpp"
#include "cartan/jets.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

ParametricSurface::ParametricSurface(std::string name, JetFn jet, ChartDomain domain,
                                     double degeneracy_tol)
    : name_(std::move(name)), jet_(std::move(jet)), domain_(domain), tol_(degeneracy_tol) {}

ParametricSurface ParametricSurface::from_positions(std::string name,
                                                    std::function<Vec3(double, double)> chart,
                                                    ChartDomain domain, double degeneracy_tol) {
    auto jet = [chart = std::move(chart)](double u, double v) {
        const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
        const double hu = cbrt_eps * std::max(1.0, std::abs(u));
        const double hv = cbrt_eps * std::max(1.0, std::abs(v));
        SurfaceJet j;
        const Vec3 pe = chart(u + hu, v), pw = chart(u - hu, v);
        const Vec3 pn = chart(u, v + hv), ps = chart(u, v - hv);
        j.p = chart(u, v);
        j.du = (pe - pw) / (2.0 * hu);
        j.dv = (pn - ps) / (2.0 * hv);
        j.duu = (pe - 2.0 * j.p + pw) / (hu * hu);
        j.dvv = (pn - 2.0 * j.p + ps) / (hv * hv);
        j.duv = (chart(u + hu, v + hv) - chart(u + hu, v - hv) - chart(u - hu, v + hv) +
                 chart(u - hu, v - hv)) /
                (4.0 * hu * hv);
        return j;
    };
    return ParametricSurface(std::move(name), std::move(jet), domain, degeneracy_tol);
}

Vec3 ParametricSurface::unit_normal(double u, double v) const {
    SurfaceJet j = jet_(u, v);
    Vec3 c = j.du.cross(j.dv);
    double n = c.norm();
    if (n < tol_)
        throw DegenerateChart(name_ + ": |s_u x s_v| = " + format_double(n) + " at (" +
                              format_double(u) + ", " + format_double(v) + ")");
    return c / n;
}

double ParametricSurface::gauss_curvature(double u, double v) const {
    SurfaceJet j = jet_(u, v);
    Vec3 c = j.du.cross(j.dv);
    double n = c.norm();
    if (n < tol_) throw DegenerateChart(name_ + ": degenerate chart in gauss_curvature");
    Vec3 N = c / n;
    double E = j.du.dot(j.du), F = j.du.dot(j.dv), G = j.dv.dot(j.dv);
    double L = N.dot(j.duu), M = N.dot(j.duv), P = N.dot(j.dvv);
    return (L * P - M * M) / (E * G - F * F);
}

namespace {

SurfaceJet to_jet(const std::array<Jet2, 3>& c) {
    SurfaceJet j;
    j.p = Vec3(c[0].f, c[1].f, c[2].f);
    j.du = Vec3(c[0].fu, c[1].fu, c[2].fu);
    j.dv = Vec3(c[0].fv, c[1].fv, c[2].fv);
    j.duu = Vec3(c[0].fuu, c[1].fuu, c[2].fuu);
    j.duv = Vec3(c[0].fuv, c[1].fuv, c[2].fuv);
    j.dvv = Vec3(c[0].fvv, c[1].fvv, c[2].fvv);
    return j;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw BadParams(msg);
}

double sign_param(double s, const std::string& name) {
    require(s == 1.0 || s == -1.0, name + ": sign parameters must be +1 or -1");
    return s;
}

struct EllipsoidAxes {
    double a, b, c, margin;
};

EllipsoidAxes ellipsoid_axes(const std::vector<double>& p, size_t base, double margin) {
    double a = 5, b = 4, c = 1;
    if (p.size() >= base + 3) {
        a = p[base];
        b = p[base + 1];
        c = p[base + 2];
    } else {
        require(p.size() == base, "ellipsoid charts need 0 or >= 3 parameters");
    }
    require(a > b && b > c && c > 0, "ellipsoid axes must satisfy a > b > c > 0");
    require(margin > 0 && 2 * margin < b - c && 2 * margin < a - b,
            "domain margin must be positive and small against the axis gaps");
    return {a, b, c, margin};
}

}  // namespace

ParametricSurface builtin_surface(const std::string& name, const std::vector<double>& params) {
    const auto& p = params;
    if (name == "plane") {
        double he = p.empty() ? 10.0 : p[0];
        require(p.size() <= 1 && he > 0, "plane: params are [] or [half_extent > 0]");
        auto jet = [](double u, double v) {
            std::array<Jet2, 3> c = {Jet2::var_u(u), Jet2::var_v(v), Jet2::constant(0)};
            return to_jet(c);
        };
        return ParametricSurface(name, jet, {-he, he, -he, he, false, false});
    }
    if (name == "cylinder") {
        double R = p.empty() ? 1.0 : p[0];
        double H = p.size() > 1 ? p[1] : 5.0;
        require(p.size() <= 2 && R > 0 && H > 0, "cylinder: params are [radius(, half_height)]");
        auto jet = [R](double u, double v) {
            Jet2 U = Jet2::var_u(u), V = Jet2::var_v(v);
            std::array<Jet2, 3> c = {R * cos(U), R * sin(U), V};
            return to_jet(c);
        };
        return ParametricSurface(name, jet, {-pi, pi, -H, H, true, false});
    }
    if (name == "sphere") {
        double R = p.empty() ? 1.0 : p[0];
        require(p.size() <= 1 && R > 0, "sphere: params are [] or [radius > 0]");
        auto jet = [R](double u, double v) {
            Jet2 U = Jet2::var_u(u), V = Jet2::var_v(v);
            std::array<Jet2, 3> c = {R * sin(U) * cos(V), R * sin(U) * sin(V), R * cos(U)};
            return to_jet(c);
        };
        // u is the colatitude; the chart degenerates at the poles u = 0, pi.
        return ParametricSurface(name, jet, {0, pi, -pi, pi, false, true});
    }
    if (name == "torus") {
        double R = p.empty() ? 2.0 : p[0];
        double r = p.size() > 1 ? p[1] : 1.0;
        require(p.size() <= 2 && R > r && r > 0, "torus: params are [] or [R, r] with R > r > 0");
        auto jet = [R, r](double u, double v) {
            Jet2 U = Jet2::var_u(u), V = Jet2::var_v(v);
            Jet2 w = R + r * cos(U);
            std::array<Jet2, 3> c = {w * cos(V), w * sin(V), r * sin(U)};
            return to_jet(c);
        };
        return ParametricSurface(name, jet, {-pi, pi, -pi, pi, true, true});
    }
    if (name == "ellipsoid-octant") {
        double sx = 1, sy = 1, sz = 1, margin = 1e-4;
        if (p.size() >= 6) {
            sx = sign_param(p[3], name);
            sy = sign_param(p[4], name);
            sz = sign_param(p[5], name);
        } else {
            require(p.size() <= 3, "ellipsoid-octant: params are [a,b,c(,sx,sy,sz(,margin))]");
        }
        if (p.size() >= 7) margin = p[6];
        auto ax = ellipsoid_axes(p, 0, margin);
        double a = ax.a, b = ax.b, c = ax.c;
        auto jet = [=](double u, double v) {
            Jet2 U = Jet2::var_u(u), V = Jet2::var_v(v);
            std::array<Jet2, 3> cc = {
                sx * sqrt(a * (a - U) * (a - V) / ((a - b) * (a - c))),
                sy * sqrt(b * (U - b) * (b - V) / ((a - b) * (b - c))),
                sz * sqrt(c * (U - c) * (V - c) / ((a - c) * (b - c)))};
            return to_jet(cc);
        };
        return ParametricSurface(name, jet,
                                 {b + ax.margin, a - ax.margin, c + ax.margin, b - ax.margin,
                                  false, false});
    }
    if (name == "ellipsoid-belt") {
        // Closed curvature-line band around the z axis: u is an angle with
        // period 2pi, v the usual confocal parameter in (c, b).  Covers one
        // z-hemisphere (sign sz) minus a cap around the umbilics.
        double sz = p.size() >= 4 ? sign_param(p[3], name) : 1.0;
        double margin = p.size() >= 5 ? p[4] : 1e-4;
        auto ax = ellipsoid_axes(p, 0, margin);
        double a = ax.a, b = ax.b, c = ax.c;
        auto jet = [=](double u, double v) {
            Jet2 U = Jet2::var_u(u), V = Jet2::var_v(v);
            Jet2 s2 = sin(U) * sin(U);
            std::array<Jet2, 3> cc = {
                sqrt(a * (a - V) / (a - c)) * cos(U),
                sqrt(b * (b - V) / (b - c)) * sin(U),
                sz * sqrt(c * (V - c) * ((b - c) + (a - b) * s2) / ((a - c) * (b - c)))};
            return to_jet(cc);
        };
        return ParametricSurface(name, jet,
                                 {-pi, pi, c + ax.margin, b - ax.margin, true, false});
    }
    if (name == "ellipsoid-belt-x") {
        // Closed curvature-line band around the x axis: u periodic, v in (b, a).
        double sx = p.size() >= 4 ? sign_param(p[3], name) : 1.0;
        double margin = p.size() >= 5 ? p[4] : 1e-4;
        auto ax = ellipsoid_axes(p, 0, margin);
        double a = ax.a, b = ax.b, c = ax.c;
        auto jet = [=](double u, double v) {
            Jet2 U = Jet2::var_u(u), V = Jet2::var_v(v);
            Jet2 s2 = sin(U) * sin(U);
            std::array<Jet2, 3> cc = {
                sx * sqrt(a * (a - V) * ((a - c) - (b - c) * s2) / ((a - b) * (a - c))),
                sqrt(b * (V - b) / (a - b)) * cos(U),
                sqrt(c * (V - c) / (a - c)) * sin(U)};
            return to_jet(cc);
        };
        return ParametricSurface(name, jet,
                                 {-pi, pi, b + ax.margin, a - ax.margin, true, false});
    }
    throw UnknownSurface("no builtin surface named '" + name + "'");
}

}  // namespace cartan
