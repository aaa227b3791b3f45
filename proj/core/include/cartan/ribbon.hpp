#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cartan/curve.hpp"
#include "cartan/development.hpp"
#include "cartan/types.hpp"

namespace cartan {

// One ruling of a ribbon.  The strip's material points are
// point + u * ruling for u in [w_minus, w_plus], w_minus <= 0 <= w_plus.
// normal is the surface normal at the center, which the strip shares along
// the whole ruling.
struct RibbonSample {
    double t = 0;
    Vec3 point, ruling, normal;
    double w_minus = 0, w_plus = 0;
    double striction = std::numeric_limits<double>::quiet_NaN();  // u*, NaN when undefined
};

// A developable strip tangent to a surface along a curve, discretized by
// rulings at the curve's sample grid.  For closed curves the last sample
// duplicates the first.
struct Ribbon {
    std::string name;
    bool closed = false;
    bool mobius = false;  // net ruling-direction flip across the closure
    std::vector<DarbouxSample> frames;
    std::vector<RibbonSample> samples;

    bool has_striction = false;       // at least one sample has a striction point
    double striction_min_abs = std::numeric_limits<double>::infinity();

    // Set when all striction points coincide: the strip is a cone.
    bool cone = false;
    Vec3 cone_tip = Vec3::Zero();
    int cone_side = 0;  // sign of u* at the tip

    int count() const { return static_cast<int>(samples.size()); }
    Vec3 rule_point(int i, double u) const {
        return samples[i].point + u * samples[i].ruling;
    }
};

// Unit ruling direction (kappa_n h - tau_g e) / sqrt(kappa_n^2 + tau_g^2).
// The direction is insensitive to the choice of normal orientation.  Throws
// VanishingNormalCurvature when |kappa_n| < kn_min: without normal curvature
// the strip degenerates into the tangent ruled surface of the curve itself.
Vec3 ruling_direction(const DarbouxSample& d, double kn_min = 1e-6);

// Builds the strip along c with n+1 rulings.  w_max > 0 bounds the ruling
// parameter symmetrically; w_max <= 0 selects 0.25 * min |u*| automatically
// (UndefinedStriction when the rulings are parallel everywhere).  On the side
// that contains the striction point, widths are additionally clamped to
// striction_guard * |u*| per sample so the strip never folds through its
// regression locus.
Ribbon build_ribbon(const CurveOnSurface& c, int n, double w_max, const Tolerances& tol = {});

// Per-sample developability residual b' . (b x e); exactly zero for rulings
// obtained from the rolling axis of a strip tangent along the curve.
std::vector<double> flatness_residuals(const Ribbon& r);
double flatness_residual(const Ribbon& r);  // max |.|

// Striction points gamma + u* b for all samples where they exist.
std::vector<Vec3> striction_points(const Ribbon& r);  // UndefinedStriction if none

// Development of the strip into the plane: the center develops to `dev`, and
// each ruling keeps its components against the Darboux frame.
struct PlanarRibbon {
    std::string name;
    PlanarCurve center;
    std::vector<Vec2> ruling;
    std::vector<double> w_minus, w_plus;
    bool cut = false;  // closed strips are presented cut at the seam

    Vec2 rule_point(int i, double u) const {
        return center.pos[i] + u * ruling[i];
    }
};

// Requires dev to be the development of r's center on the same grid
// (GridMismatch otherwise).
PlanarRibbon develop_ribbon(const Ribbon& r, const PlanarCurve& dev);

}  // namespace cartan
