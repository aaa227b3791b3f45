#include "cartan/ribbon.hpp"

#include <cmath>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

Vec3 ruling_direction(const DarbouxSample& d, double kn_min) {
    if (std::abs(d.kappa_n) < kn_min)
        throw VanishingNormalCurvature("no transversal ruling: kappa_n = " +
                                       format_double(d.kappa_n) + " at t = " + format_double(d.t));
    Vec3 b = d.kappa_n * d.h - d.tau_g * d.e;
    return b / b.norm();
}

Ribbon build_ribbon(const CurveOnSurface& c, int n, double w_max, const Tolerances& tol) {
    Ribbon r;
    r.name = c.name();
    r.closed = c.closed();
    r.frames = sample_curve(c, n);
    const int m = static_cast<int>(r.frames.size());
    const double h = r.frames[1].t - r.frames[0].t;

    std::vector<Vec3> beta(m);
    for (int i = 0; i < m; ++i) {
        beta[i] = ruling_direction(r.frames[i], tol.normal_curvature_min);
        // keep the ruling field continuous along t
        if (i > 0 && beta[i].dot(beta[i - 1]) < 0.0) beta[i] = -beta[i];
    }
    if (r.closed && beta.front().dot(beta.back()) < 0.0) r.mobius = true;

    // a net seam sign flip breaks the periodic stencil; mobius strips use
    // one-sided ends instead
    std::vector<Vec3> dbeta = derivative_samples(beta, h, r.closed && !r.mobius);

    r.samples.resize(m);
    std::vector<double> ustar(m, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < m; ++i) {
        RibbonSample& s = r.samples[i];
        const DarbouxSample& d = r.frames[i];
        s.t = d.t;
        s.point = d.point;
        s.ruling = beta[i];
        s.normal = d.n;
        // For a flat strip the ruling can only turn inside the strip's plane:
        // b' is a multiple of kn e + tg h (the component along n is exactly
        // the flatness error).  Using the projected derivative keeps u*
        // finite noise-free where the ruling is momentarily stationary.
        const double rho = std::hypot(d.kappa_n, d.tau_g);
        const Vec3 turn_dir = (d.kappa_n * d.e + d.tau_g * d.h) / rho;
        const double lambda = dbeta[i].dot(turn_dir);
        if (std::abs(lambda) > 1e-9 * std::max(1.0, d.speed)) {
            ustar[i] = -(d.speed * d.kappa_n) / (rho * lambda);
            s.striction = ustar[i];
            r.has_striction = true;
            r.striction_min_abs = std::min(r.striction_min_abs, std::abs(ustar[i]));
        }
    }

    double half = w_max;
    if (half <= 0.0) {
        if (!r.has_striction)
            throw UndefinedStriction(r.name +
                                     ": rulings are parallel, pass an explicit half-width");
        half = 0.25 * r.striction_min_abs;
    }
    for (int i = 0; i < m; ++i) {
        RibbonSample& s = r.samples[i];
        s.w_plus = half;
        s.w_minus = -half;
        if (!std::isnan(ustar[i])) {
            if (ustar[i] > 0.0)
                s.w_plus = std::min(s.w_plus, tol.striction_guard * ustar[i]);
            else if (ustar[i] < 0.0)
                s.w_minus = std::max(s.w_minus, tol.striction_guard * ustar[i]);
        }
    }
    if (r.closed) {
        r.samples.back().w_plus = r.samples.front().w_plus;
        r.samples.back().w_minus = r.samples.front().w_minus;
    }

    // cone: all striction points exist and coincide
    if (r.has_striction) {
        bool all = true;
        Vec3 centroid = Vec3::Zero();
        int defined = 0;
        for (int i = 0; i < m; ++i) {
            if (std::isnan(ustar[i])) {
                all = false;
                break;
            }
            centroid += r.rule_point(i, ustar[i]);
            ++defined;
        }
        if (all && defined > 0) {
            centroid /= defined;
            double spread = 0.0;
            for (int i = 0; i < m; ++i)
                spread = std::max(spread, (r.rule_point(i, ustar[i]) - centroid).norm());
            if (spread < tol.cone_spread) {
                r.cone = true;
                r.cone_tip = centroid;
                r.cone_side = ustar[0] > 0 ? 1 : -1;
            }
        }
    }
    return r;
}

std::vector<double> flatness_residuals(const Ribbon& r) {
    const int m = r.count();
    const double h = r.frames[1].t - r.frames[0].t;
    std::vector<Vec3> beta(m);
    for (int i = 0; i < m; ++i) beta[i] = r.samples[i].ruling;
    std::vector<Vec3> dbeta = derivative_samples(beta, h, r.closed && !r.mobius);
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i)
        out[i] = dbeta[i].dot(beta[i].cross(r.frames[i].e));
    return out;
}

double flatness_residual(const Ribbon& r) {
    double mx = 0.0;
    for (double v : flatness_residuals(r)) mx = std::max(mx, std::abs(v));
    return mx;
}

std::vector<Vec3> striction_points(const Ribbon& r) {
    if (!r.has_striction)
        throw UndefinedStriction(r.name + ": rulings are parallel along the whole strip");
    std::vector<Vec3> out;
    for (int i = 0; i < r.count(); ++i)
        if (!std::isnan(r.samples[i].striction))
            out.push_back(r.rule_point(i, r.samples[i].striction));
    return out;
}

PlanarRibbon develop_ribbon(const Ribbon& r, const PlanarCurve& dev) {
    const int m = r.count();
    if (static_cast<int>(dev.t.size()) != m)
        throw GridMismatch(r.name + ": development grid does not match the strip");
    const double span = std::abs(r.frames.back().t - r.frames.front().t);
    for (int i = 0; i < m; ++i)
        if (std::abs(dev.t[i] - r.frames[i].t) > 1e-12 * std::max(1.0, span))
            throw GridMismatch(r.name + ": development parameters differ at index " +
                               std::to_string(i));

    PlanarRibbon p;
    p.name = r.name;
    p.center = dev;
    p.cut = r.closed;
    p.ruling.resize(m);
    p.w_minus.resize(m);
    p.w_plus.resize(m);
    for (int i = 0; i < m; ++i) {
        const DarbouxSample& d = r.frames[i];
        const Vec3& b = r.samples[i].ruling;
        const double be = b.dot(d.e), bh = b.dot(d.h);
        const double phi = dev.heading[i];
        p.ruling[i] = Vec2(be * std::cos(phi) - bh * std::sin(phi),
                           be * std::sin(phi) + bh * std::cos(phi));
        p.w_minus[i] = r.samples[i].w_minus;
        p.w_plus[i] = r.samples[i].w_plus;
    }
    return p;
}

}  // namespace cartan
