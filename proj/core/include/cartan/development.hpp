#pragma once

#include <vector>

#include "cartan/curve.hpp"
#include "cartan/types.hpp"

namespace cartan {

// Arc-length-preserving planar image of a surface curve: the planar curve with
// the same speed whose curvature equals the geodesic curvature of the source.
struct PlanarCurve {
    std::vector<double> t;        // source parameters (uniform grid)
    std::vector<Vec2> pos;        // planar positions, starts at the origin
    std::vector<double> heading;  // tangent angle, continuous (unwrapped)
    std::vector<double> speed;    // source speeds
    std::vector<double> kappa;    // source geodesic curvatures = planar curvature
    bool closed_source = false;
    double position_gap = 0;      // |end - start| for closed sources
    double heading_gap = 0;       // wrapped heading mismatch for closed sources
};

// Integrates heading' = speed * kappa_g and position' = speed (cos, sin) with
// a fourth-order cumulative rule over n+1 uniform samples.  Requires n >= 64.
PlanarCurve develop_curve(const CurveOnSurface& c, int n);
PlanarCurve develop_curve(const std::vector<DarbouxSample>& samples, bool closed);

// Curvature of the development recovered from the stored headings by finite
// differences; equals kappa up to discretization error.  Needs >= 5 samples.
std::vector<double> developed_curvature(const PlanarCurve& p);

// Planar frame of the development at sample i, embedded in z = 0:
// e = (cos heading, sin heading, 0), n = +z, h = n x e; kappa_g = kappa,
// kappa_n = tau_g = 0.
DarbouxSample planar_darboux(const PlanarCurve& p, int i);

// Transports a tangent vector along the curve (fourth-order RK on the sample
// grid) and compares the turning rate of the transported field against
// -speed * kappa_g.  holonomy is the net rotation angle over the whole curve.
struct TransportCheck {
    double max_rate_deviation = 0;  // max |theta' + speed * kappa_g|
    double holonomy = 0;            // theta(t1) - theta(t0), unwrapped
};
TransportCheck parallel_transport_check(const CurveOnSurface& c, int n);

}  // namespace cartan
