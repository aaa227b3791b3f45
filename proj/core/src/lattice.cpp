#include "cartan/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

namespace {

Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);

    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

double box_sq_dist(const Vec3& lo, const Vec3& hi, const Vec3& p) {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) {
        double v = p[k];
        if (v < lo[k]) d += (lo[k] - v) * (lo[k] - v);
        if (v > hi[k]) d += (v - hi[k]) * (v - hi[k]);
    }
    return d;
}

}  // namespace

double QuadLattice::u_at(int i, int j) const {
    const int mid = (nu_ - 1) / 2;
    if (j == mid) return 0.0;
    if (j < mid) return w_minus_[i] * static_cast<double>(mid - j) / mid;
    return w_plus_[i] * static_cast<double>(j - mid) / mid;
}

QuadLattice QuadLattice::from_ribbon(const Ribbon& r, int nu) {
    if (nu < 3 || nu % 2 == 0) throw BadParams("lattice needs an odd column count >= 3");
    QuadLattice q;
    q.wrap_ = r.closed;
    q.nt_ = r.closed ? r.count() - 1 : r.count();
    q.nu_ = nu;
    q.pts_.resize(static_cast<size_t>(q.nt_) * nu);
    q.w_minus_.resize(q.nt_);
    q.w_plus_.resize(q.nt_);
    q.normals_.resize(q.nt_);
    q.center_.resize(q.nt_);
    for (int i = 0; i < q.nt_; ++i) {
        q.w_minus_[i] = r.samples[i].w_minus;
        q.w_plus_[i] = r.samples[i].w_plus;
        q.normals_[i] = r.samples[i].normal;
        q.center_[i] = r.samples[i].point;
        for (int j = 0; j < nu; ++j)
            q.pts_[static_cast<size_t>(i) * nu + j] = r.rule_point(i, q.u_at(i, j));
    }
    q.build_index();
    return q;
}

void QuadLattice::build_index() {
    const int rows = cell_rows();
    const int cols = nu_ - 1;
    cells_.resize(static_cast<size_t>(rows) * cols);
    std::iota(cells_.begin(), cells_.end(), 0);

    std::vector<Vec3> centroids(cells_.size());
    box_min_ = Vec3::Constant(std::numeric_limits<double>::infinity());
    box_max_ = -box_min_;
    min_diag_ = std::numeric_limits<double>::infinity();
    max_diag_ = 0.0;
    for (int id = 0; id < static_cast<int>(cells_.size()); ++id) {
        const int i = id / cols, j = id % cols;
        const int i2 = (i + 1) % nt_;
        const Vec3& p00 = at(i, j);
        const Vec3& p10 = at(i2, j);
        const Vec3& p01 = at(i, j + 1);
        const Vec3& p11 = at(i2, j + 1);
        centroids[id] = 0.25 * (p00 + p10 + p01 + p11);
        const double diag = std::max((p11 - p00).norm(), (p10 - p01).norm());
        min_diag_ = std::min(min_diag_, diag);
        max_diag_ = std::max(max_diag_, diag);
    }
    for (const Vec3& p : pts_) {
        box_min_ = box_min_.cwiseMin(p);
        box_max_ = box_max_.cwiseMax(p);
    }

    nodes_.clear();
    nodes_.reserve(2 * cells_.size() / 3 + 16);
    build_node(0, static_cast<int>(cells_.size()), centroids);
}

int QuadLattice::build_node(int begin, int end, std::vector<Vec3>& centroids) {
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    Vec3 clo = lo, chi = hi;
    const int cols = nu_ - 1;
    for (int k = begin; k < end; ++k) {
        const int id = cells_[k];
        const int i = id / cols, j = id % cols;
        const int i2 = (i + 1) % nt_;
        for (const Vec3* p : {&at(i, j), &at(i2, j), &at(i, j + 1), &at(i2, j + 1)}) {
            lo = lo.cwiseMin(*p);
            hi = hi.cwiseMax(*p);
        }
        clo = clo.cwiseMin(centroids[id]);
        chi = chi.cwiseMax(centroids[id]);
    }
    nodes_[node_id].lo = lo;
    nodes_[node_id].hi = hi;

    if (end - begin <= 4) {
        nodes_[node_id].begin = begin;
        nodes_[node_id].end = end;
        return node_id;
    }
    int axis = 0;
    Vec3 ext = chi - clo;
    if (ext[1] > ext[0]) axis = 1;
    if (ext[2] > ext[axis]) axis = 2;
    const int mid = (begin + end) / 2;
    std::nth_element(cells_.begin() + begin, cells_.begin() + mid, cells_.begin() + end,
                     [&](int a, int b) { return centroids[a][axis] < centroids[b][axis]; });
    const int l = build_node(begin, mid, centroids);
    const int r = build_node(mid, end, centroids);
    nodes_[node_id].left = l;
    nodes_[node_id].right = r;
    nodes_[node_id].begin = -1;
    return node_id;
}

bool QuadLattice::box_overlaps(const QuadLattice& other, double inflate) const {
    for (int k = 0; k < 3; ++k) {
        if (box_min_[k] - inflate > other.box_max_[k]) return false;
        if (other.box_min_[k] - inflate > box_max_[k]) return false;
    }
    return true;
}

LatticeHit QuadLattice::closest(const Vec3& x, double max_dist, int exclude_center,
                                int exclude_half) const {
    LatticeHit best;
    best.abs_dist = max_dist;
    if (nodes_.empty()) return best;

    const int cols = nu_ - 1;
    const int midcol = (nu_ - 1) / 2;
    int stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& nd = nodes_[stack[--top]];
        if (box_sq_dist(nd.lo, nd.hi, x) >= best.abs_dist * best.abs_dist) continue;
        if (nd.begin < 0) {
            // visit nearer child first
            const double dl = box_sq_dist(nodes_[nd.left].lo, nodes_[nd.left].hi, x);
            const double dr = box_sq_dist(nodes_[nd.right].lo, nodes_[nd.right].hi, x);
            if (dl < dr) {
                stack[top++] = nd.right;
                stack[top++] = nd.left;
            } else {
                stack[top++] = nd.left;
                stack[top++] = nd.right;
            }
            continue;
        }
        for (int k = nd.begin; k < nd.end; ++k) {
            const int id = cells_[k];
            const int i = id / cols, j = id % cols;
            if (exclude_center >= 0) {
                int d = std::abs(i - exclude_center);
                if (wrap_) d = std::min(d, nt_ - d);
                if (d <= exclude_half) continue;
            }
            const int i2 = (i + 1) % nt_;
            const Vec3& p00 = at(i, j);
            const Vec3& p10 = at(i2, j);
            const Vec3& p01 = at(i, j + 1);
            const Vec3& p11 = at(i2, j + 1);
            for (int tri = 0; tri < 2; ++tri) {
                const Vec3 cp = tri == 0 ? closest_on_triangle(x, p00, p10, p11)
                                         : closest_on_triangle(x, p00, p11, p01);
                const double d = (x - cp).norm();
                if (d < best.abs_dist) {
                    best.valid = true;
                    best.abs_dist = d;
                    best.closest = cp;
                    best.cell_t = i;
                    best.side = j < midcol ? -1 : 1;
                    const Vec3 nrm = (normals_[i] + normals_[i2]).normalized();
                    const double s = (x - cp).dot(nrm);
                    best.signed_dist = s >= 0 ? d : -d;
                }
            }
        }
    }
    if (!best.valid) best.abs_dist = 0.0;
    return best;
}

double QuadLattice::max_angle_defect() const {
    double worst = 0.0;
    const int i_lo = wrap_ ? 0 : 1;
    const int i_hi = wrap_ ? nt_ : nt_ - 1;
    for (int i = i_lo; i < i_hi; ++i) {
        const int ip = (i + 1) % nt_;
        const int im = (i - 1 + nt_) % nt_;
        for (int j = 1; j < nu_ - 1; ++j) {
            const Vec3& o = at(i, j);
            const Vec3 a = at(ip, j) - o;
            const Vec3 b = at(i, j + 1) - o;
            const Vec3 c = at(im, j) - o;
            const Vec3 d = at(i, j - 1) - o;
            const double sum = angle_between(a, b) + angle_between(b, c) +
                               angle_between(c, d) + angle_between(d, a);
            worst = std::max(worst, std::abs(2.0 * pi - sum));
        }
    }
    return worst;
}

double distance_to_polyline(const Vec3& x, const std::vector<Vec3>& pts, bool wrap) {
    const int n = static_cast<int>(pts.size());
    double best = std::numeric_limits<double>::infinity();
    const int segs = wrap ? n : n - 1;
    for (int i = 0; i < segs; ++i) {
        const Vec3& a = pts[i];
        const Vec3& b = pts[(i + 1) % n];
        const Vec3 ab = b - a;
        const double len2 = ab.squaredNorm();
        double s = len2 > 0 ? std::clamp((x - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, (x - (a + s * ab)).norm());
    }
    return best;
}

}  // namespace cartan
