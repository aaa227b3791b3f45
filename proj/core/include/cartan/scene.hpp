#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cartan/curve.hpp"
#include "cartan/surface.hpp"
#include "cartan/types.hpp"

namespace cartan {

// One center curve request.  Families:
//   torus-unknot        keys p, q (integers), phase     (doubly periodic charts)
//   ellipsoid-u-curve   key v      u sweeps its range; closed when u is periodic
//   ellipsoid-v-curve   key u      v sweeps its range; closed when v is periodic
//   latitude            key theta  colatitude circle on a sphere chart
//   spline              keys points (u,v pairs "u,v; u,v; ..."), closed
// The ellipsoid families also take sign = -1 to place the curve on the
// mirrored copy of an ellipsoid-belt chart, so one scene can cover both
// hemispheres.
struct SceneCurve {
    std::string name = "curve";
    std::string family;
    int p = 1, q = 0;
    int sign = 1;
    double phase = 0;
    double fixed = 0;  // v / u / theta of the single-parameter families
    std::vector<std::array<double, 2>> points;
    bool spline_closed = true;

    friend bool operator==(const SceneCurve&, const SceneCurve&) = default;
};

// Requested artifact paths; empty string = not requested.
struct SceneOutputs {
    std::string mesh;       // OBJ ribbon lattices + wedge polylines
    std::string patterns;   // SVG flat patterns
    std::string curvature;  // CSV t, kg, kn, tg, speed per curve
    std::string widths;     // CSV t, w_minus, w_plus per ribbon
    std::string report;     // plain-text run report

    friend bool operator==(const SceneOutputs&, const SceneOutputs&) = default;
};

struct SceneConfig {
    std::string surface_kind;
    std::vector<double> surface_params;
    std::vector<SceneCurve> curves;
    int samples = 256;    // sample count per curve, >= 64
    double w_max = 0;     // half-width cap; 0 = auto from striction distance
    int lattice_nu = 17;  // lattice rulings across the width (odd)
    unsigned seed = 0;    // consumed only by randomized property tests
    Tolerances tol;
    SceneOutputs outputs;

    friend bool operator==(const SceneConfig&, const SceneConfig&) = default;
};

// Line-oriented "key = value" format with [section] headers; sections
// surface / curve (repeatable) / ribbonization / tolerances / outputs.
// '#' starts a comment.  Unknown sections or keys are ParseErrors with the
// line number; semantic violations are ValidationErrors naming the field.
SceneConfig parse_scene(const std::string& text);

// Canonical form: fixed section and key order, shortest round-trip number
// formatting, every tolerance echoed.  parse_scene(serialize_scene(c)) == c.
std::string serialize_scene(const SceneConfig& cfg);

// Instantiate the configured surface / center curves.  Each curve carries its
// own chart instance; a curve with sign = -1 gets the mirrored belt chart.
std::shared_ptr<const ParametricSurface> make_scene_surface(const SceneConfig& cfg);
CurveOnSurface make_scene_curve(const SceneConfig& cfg, const SceneCurve& c);

}  // namespace cartan
