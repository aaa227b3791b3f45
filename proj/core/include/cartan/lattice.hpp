#pragma once

#include <vector>

#include "cartan/ribbon.hpp"
#include "cartan/types.hpp"

namespace cartan {

// Closest-point query result against a quad lattice.
struct LatticeHit {
    bool valid = false;
    double signed_dist = 0;  // sign along the sheet normal at the hit cell
    double abs_dist = 0;
    Vec3 closest = Vec3::Zero();
    int cell_t = -1;  // ruling-row index of the hit cell
    int side = 0;     // which half of the strip holds the hit cell: -1, +1 (0 for center cells)
};

// Sampled strip r(t_i, u_j) as a quad mesh with an AABB tree for closest-point
// queries.  Rows follow the rulings; the u grid has an odd number of columns
// so u = 0 is a lattice column even with asymmetric widths.  Closed strips
// drop the duplicate seam ruling and wrap.
class QuadLattice {
  public:
    QuadLattice() = default;
    static QuadLattice from_ribbon(const Ribbon& r, int nu);

    int nt() const { return nt_; }
    int nu() const { return nu_; }
    bool wrap() const { return wrap_; }
    const Vec3& at(int i, int j) const { return pts_[static_cast<size_t>(i) * nu_ + j]; }
    double u_at(int i, int j) const;
    const Vec3& row_normal(int i) const { return normals_[i]; }
    const std::vector<Vec3>& center_polyline() const { return center_; }

    Vec3 box_min() const { return box_min_; }
    Vec3 box_max() const { return box_max_; }
    bool box_overlaps(const QuadLattice& other, double inflate) const;

    // Closest point over all cells within max_dist (early-out radius).  An
    // optional periodic row window [center - half, center + half] is skipped,
    // which self-queries use to ignore the strip near the querying ruling.
    LatticeHit closest(const Vec3& x, double max_dist, int exclude_center = -1,
                       int exclude_half = -1) const;

    // Largest |2pi - angle sum| over interior lattice nodes.
    double max_angle_defect() const;

    double min_cell_diag() const { return min_diag_; }
    double max_cell_diag() const { return max_diag_; }

  private:
    int nt_ = 0, nu_ = 0;
    bool wrap_ = false;
    std::vector<Vec3> pts_;
    std::vector<double> w_minus_, w_plus_;
    std::vector<Vec3> normals_;
    std::vector<Vec3> center_;
    Vec3 box_min_ = Vec3::Zero(), box_max_ = Vec3::Zero();
    double min_diag_ = 0, max_diag_ = 0;

    struct Node {
        Vec3 lo, hi;
        int left = -1, right = -1;  // children; leaf when left < 0
        int begin = 0, end = 0;     // leaf cell range in cells_
    };
    std::vector<Node> nodes_;
    std::vector<int> cells_;  // cell id = row * (nu-1) + col
    int cell_rows() const { return wrap_ ? nt_ : nt_ - 1; }
    void build_index();
    int build_node(int begin, int end, std::vector<Vec3>& centroids);
};

// Distance from a point to a polyline (closed when wrap).
double distance_to_polyline(const Vec3& x, const std::vector<Vec3>& pts, bool wrap);

}  // namespace cartan
