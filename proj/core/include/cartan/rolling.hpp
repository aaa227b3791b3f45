#pragma once

#include <string>
#include <vector>

#include "cartan/curve.hpp"
#include "cartan/development.hpp"
#include "cartan/types.hpp"

namespace cartan {

// Direct rigid motion x -> R x + c with R in SO(3).
struct RigidMotion {
    Mat3 R = Mat3::Identity();
    Vec3 c = Vec3::Zero();

    Vec3 apply(const Vec3& x) const { return R * x + c; }
    // Rotates directions only (for frame vectors).
    Vec3 rotate(const Vec3& x) const { return R * x; }
};

enum class MotionClass {
    NotRotational,    // omega ~ 0
    PureSpinning,     // omega parallel to the contact normal
    PureTwisting,     // omega parallel to the contact tangent e
    StandardRolling,  // no normal component, nonzero h component
    Mixed,
};

const char* to_string(MotionClass m);

// Instantaneous kinematics of the motion g(t) carrying one curve's frame onto
// another's.  omega is the angular velocity in world coordinates at the target;
// omega_frame holds its components in the target frame (e~, h~, n~);
// omega_hat = R^T omega is the pull-back, whose components in the source frame
// (e, h, n) coincide with omega_frame.
struct MotionSample {
    double t = 0;
    RigidMotion g;
    Vec3 omega = Vec3::Zero();
    Vec3 omega_frame = Vec3::Zero();
    Vec3 omega_hat = Vec3::Zero();
    MotionClass cls = MotionClass::NotRotational;
};

// The unique direct motion taking the source position and frame onto the
// target's: R = D~ D^T, c = p~ - R p.
RigidMotion frame_motion(const DarbouxSample& source, const DarbouxSample& target);

// Angular velocity of the frame-carrying motion between two curves sampled at
// the same parameter.  Both samples must move at matching speed
// (relative tolerance speed_tol), otherwise SpeedMismatch.
MotionSample rolling_sample(const DarbouxSample& source, const DarbouxSample& target,
                            double speed_tol = 1e-6, double classify_tol = 1e-8);

// Rolling of a surface along its developed image in the plane z = 0.
// The development must share the curve's sample grid; t must be one of the
// grid parameters (GridMismatch otherwise).  Checks the initial contact
// (position and tangent at the first sample, tolerance init_tol) and that the
// normal curvature does not vanish at t (VanishingNormalCurvature), since the
// rolling axis degenerates there.
MotionSample check_plane_rolling(const std::vector<DarbouxSample>& samples,
                                 const PlanarCurve& development, double t,
                                 double init_tol = 1e-6, double speed_tol = 1e-6,
                                 double classify_tol = 1e-8, double kn_min = 1e-6);

MotionClass classify_motion(const Vec3& omega_frame, double omega_scale, double tol = 1e-8);

}  // namespace cartan
