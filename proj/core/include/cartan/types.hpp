#pragma once

#include <Eigen/Dense>
#include <string>

namespace cartan {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Exact half-integer arithmetic, used for Euler characteristics so that
// results are reported exactly rather than as rounded doubles.
struct HalfInt {
    long long twice = 0;  // stored value is twice/2

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(long long twice_units) : twice(twice_units) {}
    static constexpr HalfInt whole(long long n) { return HalfInt{2 * n}; }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr double value() const { return static_cast<double>(twice) / 2.0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }

    std::string str() const {
        if (twice % 2 == 0) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

// Numeric knobs for the whole pipeline.  Every field can be overridden from a
// scene file; effective values are echoed into the run report.
struct Tolerances {
    double chart_degeneracy = 1e-9;     // lower bound on |s_u x s_v|
    double regularity = 1e-9;           // lower bound on curve speed
    double closure = 1e-8;              // endpoint mismatch allowed for closed curves
    double frame_orthonormal = 1e-10;   // orthonormality drift of frames / rotations
    double speed_match = 1e-6;          // relative speed agreement for rolling pairs
    double initial_match = 1e-6;        // contact of initial point/direction for rolling pairs
    double classify = 1e-8;             // relative threshold for motion classification
    double normal_curvature_min = 1e-6; // |kn| below this has no transversal ruling
    double flatness = 1e-5;             // max |b' . (b x e)| accepted as developable
    double angle_defect = 1e-6;         // max interior lattice angle defect
    double isometry = 1e-5;             // max first-fundamental-form deviation
    double bisection_u = 1e-10;         // width solve convergence in the ruling parameter
    double wedge_consistency = 1e-6;    // wedge points must sit on both sheets this well
    double wedge_match = 1e-5;          // mean distance for deduplicating twin traces
    double coincident_band = 1e-7;      // |distance| below this counts as sheet overlap
    double cluster = 1e-4;              // endpoint clustering radius for vertices
    double direction_merge = 1e-2;      // radians; incident directions closer than this merge
    double guard_band_frac = 0.05;      // self-contact exclusion as fraction of the parameter span
    double bridge_frac = 0.02;          // max cut-gap (fraction of the rulings) interpolated across wedge folds
    double striction_guard = 0.98;      // widths never exceed this fraction of |u*|
    int    min_wedge_run = 4;           // shorter hit runs are treated as noise
    double audit = 0.02;                // allowed |total/2pi - chi|
    double umbilic_margin = 1e-4;       // default domain margin near umbilic parameter values
    double capture_cells = 2.0;         // capture radius for sign changes, in cell diagonals
    double vertex_exclusion = 0.0;      // arc radius around vertices excluded from edge integrals; 0 = auto
    double cone_spread = 1e-6;          // max striction-point spread that still counts as a cone tip

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

}  // namespace cartan
