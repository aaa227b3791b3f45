#include "cartan/development.hpp"

#include <cmath>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

PlanarCurve develop_curve(const std::vector<DarbouxSample>& samples, bool closed) {
    const size_t n = samples.size();
    if (n < 5) throw TooFewSamples("develop_curve needs at least 5 samples");
    const double h = samples[1].t - samples[0].t;

    PlanarCurve out;
    out.closed_source = closed;
    out.t.resize(n);
    out.speed.resize(n);
    out.kappa.resize(n);
    std::vector<double> rate(n);
    for (size_t i = 0; i < n; ++i) {
        out.t[i] = samples[i].t;
        out.speed[i] = samples[i].speed;
        out.kappa[i] = samples[i].kappa_g;
        rate[i] = samples[i].speed * samples[i].kappa_g;
    }
    out.heading = cumulative_integral(rate, h);

    std::vector<double> cx(n), cy(n);
    for (size_t i = 0; i < n; ++i) {
        cx[i] = out.speed[i] * std::cos(out.heading[i]);
        cy[i] = out.speed[i] * std::sin(out.heading[i]);
    }
    std::vector<double> x = cumulative_integral(cx, h);
    std::vector<double> y = cumulative_integral(cy, h);
    out.pos.resize(n);
    for (size_t i = 0; i < n; ++i) out.pos[i] = Vec2(x[i], y[i]);

    if (closed) {
        out.position_gap = (out.pos.back() - out.pos.front()).norm();
        out.heading_gap = wrap_angle(out.heading.back() - out.heading.front());
    }
    return out;
}

PlanarCurve develop_curve(const CurveOnSurface& c, int n) {
    if (n < 64) throw TooFewSamples(c.name() + ": development needs at least 64 segments");
    return develop_curve(sample_curve(c, n), c.closed());
}

std::vector<double> developed_curvature(const PlanarCurve& p) {
    const size_t n = p.heading.size();
    if (n < 5) throw TooFewSamples("developed_curvature needs at least 5 samples");
    const double h = p.t[1] - p.t[0];
    std::vector<double> dtheta = derivative_samples(p.heading, h, false);
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = dtheta[i] / p.speed[i];
    return out;
}

DarbouxSample planar_darboux(const PlanarCurve& p, int i) {
    DarbouxSample d;
    d.t = p.t[i];
    d.point = Vec3(p.pos[i].x(), p.pos[i].y(), 0.0);
    const double th = p.heading[i];
    d.e = Vec3(std::cos(th), std::sin(th), 0.0);
    d.n = Vec3(0, 0, 1);
    d.h = d.n.cross(d.e);
    d.speed = p.speed[i];
    d.kappa_g = p.kappa[i];
    d.kappa_n = 0.0;
    d.tau_g = 0.0;
    return d;
}

TransportCheck parallel_transport_check(const CurveOnSurface& c, int n) {
    if (n < 16) throw TooFewSamples(c.name() + ": transport check needs at least 16 segments");
    const double h = (c.t1() - c.t0()) / n;

    // dY/dt = -(Y . n') n keeps Y tangent and covariantly constant;
    // n' = -speed (kappa_n e + tau_g h) comes from the frame equations.
    auto slope = [](const DarbouxSample& d, const Vec3& y) {
        Vec3 n_t = -d.speed * (d.kappa_n * d.e + d.tau_g * d.h);
        return (-(y.dot(n_t))) * d.n;
    };

    std::vector<DarbouxSample> grid = sample_curve(c, n);
    std::vector<DarbouxSample> mid(n);
    for (int i = 0; i < n; ++i) mid[i] = darboux_frame(c, c.t0() + h * (i + 0.5));

    Vec3 y = grid[0].e;
    std::vector<double> theta(n + 1);
    theta[0] = 0.0;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec3 k1 = slope(grid[i], y);
        Vec3 k2 = slope(mid[i], y + 0.5 * h * k1);
        Vec3 k3 = slope(mid[i], y + 0.5 * h * k2);
        Vec3 k4 = slope(grid[i + 1], y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        // curb drift: keep y in the tangent plane with unit length
        const DarbouxSample& d = grid[i + 1];
        y -= y.dot(d.n) * d.n;
        y.normalize();
        double raw = std::atan2(y.dot(d.h), y.dot(d.e));
        theta[i + 1] = prev + wrap_angle(raw - wrap_angle(prev));
        prev = theta[i + 1];
    }

    std::vector<double> dtheta = derivative_samples(theta, h, false);
    TransportCheck out;
    for (int i = 0; i <= n; ++i)
        out.max_rate_deviation =
            std::max(out.max_rate_deviation,
                     std::abs(dtheta[i] + grid[i].speed * grid[i].kappa_g));
    out.holonomy = theta.back() - theta.front();
    return out;
}

}  // namespace cartan
