#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cartan/jets.hpp"
#include "cartan/surface.hpp"
#include "cartan/types.hpp"

namespace cartan {

// Parameter path (u(t), v(t)) with exact first and second derivatives.
struct PathJet {
    Jet1 u, v;
};

// Adapted frame and scalar invariants of a surface curve at one parameter.
//   e  unit tangent, n  surface unit normal, h = n x e,
//   kappa_g geodesic curvature, kappa_n normal curvature, tau_g geodesic torsion,
// all with respect to arc length; speed = |dgamma/dt|.
struct DarbouxSample {
    double t = 0;
    Vec3 point, e, h, n;
    double speed = 0, kappa_g = 0, kappa_n = 0, tau_g = 0;
};

// Orthonormal frame matrix with columns (e, h, n); determinant +1.
Mat3 frame_matrix(const DarbouxSample& d);

class CurveOnSurface {
  public:
    using PathFn = std::function<PathJet(double)>;

    // Closure (position and tangent agreement at t0/t1 within tol) is
    // verified at construction when closed = true; violation throws NotClosed.
    CurveOnSurface(std::shared_ptr<const ParametricSurface> surface, PathFn path, double t0,
                   double t1, bool closed, std::string name = "curve",
                   double closure_tol = 1e-8, double regularity_tol = 1e-9);

    const ParametricSurface& surface() const { return *surface_; }
    const std::shared_ptr<const ParametricSurface>& surface_ptr() const { return surface_; }
    const std::string& name() const { return name_; }
    double t0() const { return t0_; }
    double t1() const { return t1_; }
    bool closed() const { return closed_; }
    double regularity_tol() const { return reg_tol_; }

    PathJet path(double t) const { return path_(t); }
    Vec2 param_point(double t) const;

  private:
    std::shared_ptr<const ParametricSurface> surface_;
    PathFn path_;
    double t0_, t1_;
    bool closed_;
    std::string name_;
    double reg_tol_;
};

// Frame and invariants at parameter t; throws IrregularCurve when the speed
// falls below the curve's regularity tolerance, DegenerateChart off the chart.
DarbouxSample darboux_frame(const CurveOnSurface& c, double t);

// n+1 samples at uniform parameter spacing over [t0, t1], endpoints included.
// Requires n >= 16.
std::vector<DarbouxSample> sample_curve(const CurveOnSurface& c, int n);

// --- path factories ---------------------------------------------------------

// (p, q) line on a doubly periodic chart: t -> (p t, q t + phase), t in [-pi, pi].
// An empty name picks the descriptive default "torus-unknot(p,q)".
CurveOnSurface make_torus_unknot(std::shared_ptr<const ParametricSurface> torus, int p, int q,
                                 double phase = 0.0, std::string name = "");

// Latitude circle at colatitude theta on the sphere chart: t -> (theta, t).
CurveOnSurface make_latitude(std::shared_ptr<const ParametricSurface> sphere, double colatitude,
                             std::string name = "latitude");

// Coordinate loop u -> (u, fixed) on a u-periodic chart (e.g. the ellipsoid
// belt charts), closed over one period.
CurveOnSurface make_coordinate_loop(std::shared_ptr<const ParametricSurface> s, double fixed_v,
                                    std::string name = "loop");

// Open coordinate arcs on a chart: t runs over the chart's u (resp. v) range
// shrunk by the given end margin, the other coordinate held fixed.
CurveOnSurface make_u_arc(std::shared_ptr<const ParametricSurface> s, double fixed_v,
                          double end_margin = 0.0, std::string name = "u-arc");
CurveOnSurface make_v_arc(std::shared_ptr<const ParametricSurface> s, double fixed_u,
                          double end_margin = 0.0, std::string name = "v-arc");

// C2 cubic spline through parameter points (natural ends, or periodic when
// closed); t runs over [0, m] with one unit per input segment.
CurveOnSurface make_spline_path(std::shared_ptr<const ParametricSurface> s,
                                const std::vector<Vec2>& points, bool closed,
                                std::string name = "spline");

}  // namespace cartan
