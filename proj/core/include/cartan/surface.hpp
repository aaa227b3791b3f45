#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cartan/types.hpp"

namespace cartan {

// Position plus first and second partial derivatives of a chart at (u, v).
struct SurfaceJet {
    Vec3 p, du, dv, duu, duv, dvv;
};

struct ChartDomain {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    bool u_periodic = false, v_periodic = false;
};

// A parametric chart with analytic (or finite-difference) second-order jets.
class ParametricSurface {
  public:
    using JetFn = std::function<SurfaceJet(double, double)>;

    ParametricSurface(std::string name, JetFn jet, ChartDomain domain,
                      double degeneracy_tol = 1e-9);

    // Wrap a position-only chart; jets come from central differences with
    // step h = cbrt(eps) * max(1, |u|), which costs roughly a third of the
    // significant digits.  Prefer analytic jets where available.
    static ParametricSurface from_positions(std::string name,
                                            std::function<Vec3(double, double)> chart,
                                            ChartDomain domain,
                                            double degeneracy_tol = 1e-9);

    const std::string& name() const { return name_; }
    const ChartDomain& domain() const { return domain_; }
    double degeneracy_tol() const { return tol_; }

    SurfaceJet jet(double u, double v) const { return jet_(u, v); }
    Vec3 point(double u, double v) const { return jet_(u, v).p; }

    // Unit normal s_u x s_v / |s_u x s_v|; throws DegenerateChart when the
    // cross product norm falls below the degeneracy tolerance.
    Vec3 unit_normal(double u, double v) const;

    double gauss_curvature(double u, double v) const;

  private:
    std::string name_;
    JetFn jet_;
    ChartDomain domain_;
    double tol_;
};

// Builtin charts by name:
//   plane            params: [] or [half_extent]
//   cylinder         params: [radius] or [radius, half_height]
//   sphere           params: [radius]
//   torus            params: [] or [R, r]   (tube around the z axis, R > r)
//   ellipsoid-octant params: [a, b, c] or [a, b, c, sx, sy, sz] or [..., margin]
//                    curvature-line chart of one octant of x^2/a + y^2/b + z^2/c = 1,
//                    a > b > c > 0; (u, v) in (b, a) x (c, b); signs pick the octant
//   ellipsoid-belt   params: [a, b, c] or [a, b, c, sz] or [..., margin]
//                    closed band around the z axis covering one z-hemisphere;
//                    u is a 2pi-periodic angle, v in (c, b) as above
//   ellipsoid-belt-x params: [a, b, c] or [a, b, c, sx] or [..., margin]
//                    closed band around the x axis covering one x-hemisphere;
//                    u is a 2pi-periodic angle, v in (b, a)
// The belt charts reparametrize the same curvature-line coordinates, so their
// coordinate curves are lines of curvature too.
ParametricSurface builtin_surface(const std::string& name, const std::vector<double>& params = {});

}  // namespace cartan
