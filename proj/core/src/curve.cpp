#include "cartan/curve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

Mat3 frame_matrix(const DarbouxSample& d) {
    Mat3 m;
    m.col(0) = d.e;
    m.col(1) = d.h;
    m.col(2) = d.n;
    return m;
}

CurveOnSurface::CurveOnSurface(std::shared_ptr<const ParametricSurface> surface, PathFn path,
                               double t0, double t1, bool closed, std::string name,
                               double closure_tol, double regularity_tol)
    : surface_(std::move(surface)),
      path_(std::move(path)),
      t0_(t0),
      t1_(t1),
      closed_(closed),
      name_(std::move(name)),
      reg_tol_(regularity_tol) {
    if (!(t1_ > t0_)) throw BadParams(name_ + ": parameter interval is empty");
    if (closed_) {
        DarbouxSample a = darboux_frame(*this, t0_);
        DarbouxSample b = darboux_frame(*this, t1_);
        double scale = 1.0 + a.point.norm();
        if ((a.point - b.point).norm() > closure_tol * scale ||
            (a.e - b.e).norm() > closure_tol)
            throw NotClosed(name_ + ": endpoints disagree beyond the closure tolerance");
    }
}

Vec2 CurveOnSurface::param_point(double t) const {
    PathJet pj = path_(t);
    return Vec2(pj.u.f, pj.v.f);
}

DarbouxSample darboux_frame(const CurveOnSurface& c, double t) {
    const PathJet pj = c.path(t);
    const SurfaceJet sj = c.surface().jet(pj.u.f, pj.v.f);

    const Vec3 g1 = sj.du * pj.u.d1 + sj.dv * pj.v.d1;
    const Vec3 g2 = sj.duu * (pj.u.d1 * pj.u.d1) + 2.0 * sj.duv * (pj.u.d1 * pj.v.d1) +
                    sj.dvv * (pj.v.d1 * pj.v.d1) + sj.du * pj.u.d2 + sj.dv * pj.v.d2;

    DarbouxSample d;
    d.t = t;
    d.point = sj.p;
    d.speed = g1.norm();
    if (d.speed < c.regularity_tol())
        throw IrregularCurve(c.name() + ": speed " + format_double(d.speed) + " at t = " +
                             format_double(t));

    const Vec3 cr = sj.du.cross(sj.dv);
    const double ncr = cr.norm();
    if (ncr < c.surface().degeneracy_tol())
        throw DegenerateChart(c.surface().name() + ": degenerate chart under curve '" +
                              c.name() + "' at t = " + format_double(t));

    d.n = cr / ncr;
    d.e = g1 / d.speed;
    d.h = d.n.cross(d.e);

    const double s2 = d.speed * d.speed;
    d.kappa_g = g2.dot(d.h) / s2;
    d.kappa_n = g2.dot(d.n) / s2;

    // n' along the curve via the chain rule on s_u x s_v.
    const Vec3 cr_t = (sj.duu * pj.u.d1 + sj.duv * pj.v.d1).cross(sj.dv) +
                      sj.du.cross(sj.duv * pj.u.d1 + sj.dvv * pj.v.d1);
    const Vec3 n_t = cr_t / ncr - cr * (cr.dot(cr_t) / (ncr * ncr * ncr));
    d.tau_g = -n_t.dot(d.h) / d.speed;
    return d;
}

std::vector<DarbouxSample> sample_curve(const CurveOnSurface& c, int n) {
    if (n < 16) throw TooFewSamples(c.name() + ": need at least 16 segments");
    std::vector<DarbouxSample> out;
    out.reserve(n + 1);
    const double h = (c.t1() - c.t0()) / n;
    for (int i = 0; i <= n; ++i) out.push_back(darboux_frame(c, c.t0() + h * i));
    return out;
}

// --- factories ---------------------------------------------------------------

CurveOnSurface make_torus_unknot(std::shared_ptr<const ParametricSurface> torus, int p, int q,
                                 double phase, std::string name) {
    if (!torus->domain().u_periodic || !torus->domain().v_periodic)
        throw BadParams("torus-unknot paths need a doubly periodic chart");
    if (p == 0 && q == 0) throw BadParams("torus-unknot: (p, q) must not both be zero");
    auto path = [p, q, phase](double t) {
        Jet1 T = Jet1::variable(t);
        return PathJet{static_cast<double>(p) * T, static_cast<double>(q) * T + phase};
    };
    if (name.empty())
        name = "torus-unknot(" + std::to_string(p) + "," + std::to_string(q) + ")";
    return CurveOnSurface(std::move(torus), path, -pi, pi, true, std::move(name));
}

CurveOnSurface make_latitude(std::shared_ptr<const ParametricSurface> sphere, double colatitude,
                             std::string name) {
    auto dom = sphere->domain();
    if (!dom.v_periodic) throw BadParams("latitude paths need a v-periodic chart");
    if (!(colatitude > dom.u0 && colatitude < dom.u1))
        throw BadParams("latitude: colatitude outside the chart");
    auto path = [colatitude](double t) {
        return PathJet{Jet1::constant(colatitude), Jet1::variable(t)};
    };
    return CurveOnSurface(std::move(sphere), path, -pi, pi, true, std::move(name));
}

CurveOnSurface make_coordinate_loop(std::shared_ptr<const ParametricSurface> s, double fixed_v,
                                    std::string name) {
    auto dom = s->domain();
    if (!dom.u_periodic) throw BadParams(name + ": coordinate loops need a u-periodic chart");
    if (!(fixed_v > dom.v0 && fixed_v < dom.v1))
        throw BadParams(name + ": fixed coordinate outside the chart");
    auto path = [fixed_v](double t) { return PathJet{Jet1::variable(t), Jet1::constant(fixed_v)}; };
    return CurveOnSurface(std::move(s), path, dom.u0, dom.u1, true, std::move(name));
}

CurveOnSurface make_u_arc(std::shared_ptr<const ParametricSurface> s, double fixed_v,
                          double end_margin, std::string name) {
    auto dom = s->domain();
    if (!(fixed_v >= dom.v0 && fixed_v <= dom.v1))
        throw BadParams(name + ": fixed coordinate outside the chart");
    auto path = [fixed_v](double t) { return PathJet{Jet1::variable(t), Jet1::constant(fixed_v)}; };
    return CurveOnSurface(std::move(s), path, dom.u0 + end_margin, dom.u1 - end_margin, false,
                          std::move(name));
}

CurveOnSurface make_v_arc(std::shared_ptr<const ParametricSurface> s, double fixed_u,
                          double end_margin, std::string name) {
    auto dom = s->domain();
    if (!(fixed_u >= dom.u0 && fixed_u <= dom.u1))
        throw BadParams(name + ": fixed coordinate outside the chart");
    auto path = [fixed_u](double t) { return PathJet{Jet1::constant(fixed_u), Jet1::variable(t)}; };
    return CurveOnSurface(std::move(s), path, dom.v0 + end_margin, dom.v1 - end_margin, false,
                          std::move(name));
}

namespace {

// Second derivatives of a C2 interpolating cubic with unit knot spacing.
// Natural boundary for open data, wrap-around for closed data.
std::vector<Vec2> spline_second_derivatives(const std::vector<Vec2>& pts, bool closed) {
    const int m = static_cast<int>(pts.size());
    const int n = closed ? m : m - 2;  // unknowns
    std::vector<Vec2> M(m, Vec2::Zero());
    if (n <= 0) return M;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, 2);
    auto P = [&](int i) -> const Vec2& { return pts[((i % m) + m) % m]; };
    for (int r = 0; r < n; ++r) {
        int i = closed ? r : r + 1;  // point index of this equation
        Vec2 d = 6.0 * (P(i - 1) - 2.0 * P(i) + P(i + 1));
        rhs(r, 0) = d.x();
        rhs(r, 1) = d.y();
        A(r, r) = 4.0;
        if (closed) {
            A(r, (r + 1) % n) += 1.0;
            A(r, (r + n - 1) % n) += 1.0;
        } else {
            if (r > 0) A(r, r - 1) = 1.0;
            if (r < n - 1) A(r, r + 1) = 1.0;
        }
    }
    Eigen::MatrixXd sol = A.partialPivLu().solve(rhs);
    for (int r = 0; r < n; ++r) {
        int i = closed ? r : r + 1;
        M[i] = Vec2(sol(r, 0), sol(r, 1));
    }
    return M;
}

}  // namespace

CurveOnSurface make_spline_path(std::shared_ptr<const ParametricSurface> s,
                                const std::vector<Vec2>& points, bool closed, std::string name) {
    const int m = static_cast<int>(points.size());
    if (m < (closed ? 3 : 2)) throw BadParams(name + ": spline needs more points");
    const int segments = closed ? m : m - 1;
    auto M = spline_second_derivatives(points, closed);
    auto eval = [points, M, m, segments, closed](double t) {
        if (closed) {
            t = std::fmod(t, static_cast<double>(segments));
            if (t < 0) t += segments;
        } else {
            t = std::clamp(t, 0.0, static_cast<double>(segments));
        }
        int i = std::min(static_cast<int>(t), segments - 1);
        Jet1 sj = Jet1::variable(t - i);
        const Vec2& p0 = points[i % m];
        const Vec2& p1 = points[(i + 1) % m];
        const Vec2& m0 = M[i % m];
        const Vec2& m1 = M[(i + 1) % m];
        Jet1 one_minus = 1.0 - sj;
        // S(s) = (1-s) p0 + s p1 + ((1-s)^3 - (1-s)) m0/6 + (s^3 - s) m1/6
        Jet1 c0 = (one_minus * one_minus * one_minus - one_minus) / 6.0;
        Jet1 c1 = (sj * sj * sj - sj) / 6.0;
        PathJet out;
        out.u = one_minus * p0.x() + sj * p1.x() + c0 * m0.x() + c1 * m1.x();
        out.v = one_minus * p0.y() + sj * p1.y() + c0 * m0.y() + c1 * m1.y();
        return out;
    };
    return CurveOnSurface(std::move(s), eval, 0.0, static_cast<double>(segments), closed,
                          std::move(name));
}

}  // namespace cartan
