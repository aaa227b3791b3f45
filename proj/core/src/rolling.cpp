#include "cartan/rolling.hpp"

#include <cmath>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

const char* to_string(MotionClass m) {
    switch (m) {
        case MotionClass::NotRotational: return "not-rotational";
        case MotionClass::PureSpinning: return "pure-spinning";
        case MotionClass::PureTwisting: return "pure-twisting";
        case MotionClass::StandardRolling: return "standard-rolling";
        case MotionClass::Mixed: return "mixed";
    }
    return "?";
}

RigidMotion frame_motion(const DarbouxSample& source, const DarbouxSample& target) {
    RigidMotion g;
    g.R = frame_matrix(target) * frame_matrix(source).transpose();
    g.c = target.point - g.R * source.point;
    return g;
}

MotionClass classify_motion(const Vec3& w, double omega_scale, double tol) {
    const double norm = w.norm();
    if (norm <= tol * omega_scale) return MotionClass::NotRotational;
    // w holds frame components (e, h, n) of the angular velocity.
    const double we = w.x(), wh = w.y(), wn = w.z();
    if (std::abs(wn) <= tol * norm) {
        if (std::abs(wh) <= tol * norm) return MotionClass::PureTwisting;
        return MotionClass::StandardRolling;
    }
    if (std::hypot(we, wh) <= tol * norm) return MotionClass::PureSpinning;
    return MotionClass::Mixed;
}

MotionSample rolling_sample(const DarbouxSample& source, const DarbouxSample& target,
                            double speed_tol, double classify_tol) {
    const double scale = std::max(source.speed, target.speed);
    if (std::abs(source.speed - target.speed) > speed_tol * scale)
        throw SpeedMismatch("rolling requires matching speeds: " + format_double(source.speed) +
                            " vs " + format_double(target.speed) + " at t = " +
                            format_double(source.t));

    MotionSample out;
    out.t = source.t;
    out.g = frame_motion(source, target);

    // Components of the angular velocity in the target frame; the same triple
    // expresses the pulled-back angular velocity in the source frame.
    const double s = source.speed;
    out.omega_frame = Vec3(-s * (source.tau_g - target.tau_g),
                           s * (source.kappa_n - target.kappa_n),
                           -s * (source.kappa_g - target.kappa_g));
    out.omega = frame_matrix(target) * out.omega_frame;
    out.omega_hat = frame_matrix(source) * out.omega_frame;

    const double invariant_scale =
        s * (1.0 + std::abs(source.kappa_g) + std::abs(source.kappa_n) + std::abs(source.tau_g) +
             std::abs(target.kappa_g) + std::abs(target.kappa_n) + std::abs(target.tau_g));
    out.cls = classify_motion(out.omega_frame, invariant_scale, classify_tol);
    return out;
}

MotionSample check_plane_rolling(const std::vector<DarbouxSample>& samples,
                                 const PlanarCurve& development, double t, double init_tol,
                                 double speed_tol, double classify_tol, double kn_min) {
    if (samples.size() != development.t.size())
        throw GridMismatch("curve samples and development have different grids");
    const double h = development.t.size() > 1 ? development.t[1] - development.t[0] : 1.0;

    // locate t on the grid
    const double rel = (t - development.t.front()) / h;
    const long i = std::lround(rel);
    if (i < 0 || i >= static_cast<long>(development.t.size()) ||
        std::abs(rel - static_cast<double>(i)) > 1e-9 * std::max(1.0, std::abs(rel)))
        throw GridMismatch("t = " + format_double(t) + " is not a grid parameter");

    // initial contact: development starts at the source start, same tangent
    // after the frame motion at sample 0.
    MotionSample start = rolling_sample(samples[0], planar_darboux(development, 0), speed_tol,
                                        classify_tol);
    const Vec3 p0 = start.g.apply(samples[0].point);
    const Vec3 e0 = start.g.rotate(samples[0].e);
    DarbouxSample flat0 = planar_darboux(development, 0);
    if ((p0 - flat0.point).norm() > init_tol || (e0 - flat0.e).norm() > init_tol)
        throw InitialConditionMismatch("development does not start at the rolled contact");

    const DarbouxSample& d = samples[static_cast<size_t>(i)];
    if (std::abs(d.kappa_n) < kn_min)
        throw VanishingNormalCurvature("kappa_n = " + format_double(d.kappa_n) + " at t = " +
                                       format_double(t));
    return rolling_sample(d, planar_darboux(development, static_cast<int>(i)), speed_tol,
                          classify_tol);
}

}  // namespace cartan
