#include "cartan/topology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <utility>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

const char* to_string(VertexCharacter c) {
    switch (c) {
        case VertexCharacter::ConePoint: return "cone-point";
        case VertexCharacter::WedgeEnd: return "wedge-end";
        case VertexCharacter::ZeroContributing: return "zero-contributing";
        case VertexCharacter::Conventional: return "conventional";
    }
    return "?";
}

namespace {

int lattice_rows(const Ribbon& rb) { return rb.closed ? rb.count() - 1 : rb.count(); }

Vec3 edge_point(const Ribbon& rb, int side, int i) {
    const RibbonSample& s = rb.samples[i];
    return s.point + (side > 0 ? s.w_plus : s.w_minus) * s.ruling;
}

// Material sector angle of the (ribbon, side) boundary where it passes the
// vertex at p near row `row`: angle between the two branch directions taken at
// the first polyline nodes outside the exclusion radius, opened toward the
// strip's material.  A self-contact fold pairs two rows of the same edge at
// the vertex; `barrier` is the partner row of such a pass, and the walk stops
// there so a branch never crosses the vertex onto the partner's run.  When a
// walk ends inside the ball (the free hairpin run looping around a fold tip),
// the run's far extreme stands in for the fold direction.  Returns a negative
// value when the branches cannot be found (degenerate pass).
double measure_sector(const Ribbon& rb, int side, int row, const Vec3& p, double excl,
                      int barrier = -1) {
    const int rows = lattice_rows(rb);
    auto norm_row = [&](int i) { return ((i % rows) + rows) % rows; };
    auto at = [&](int i) { return edge_point(rb, side, norm_row(i)); };

    auto walk = [&](int step, Vec3& v) {
        Vec3 far_v = Vec3::Zero();
        double far_d = 0;
        for (int k = 1; k <= rows / 2; ++k) {
            const int i = row + step * k;
            if (!rb.closed && (i < 0 || i >= rows)) break;
            if (barrier >= 0 && norm_row(i) == barrier) break;
            const Vec3 q = at(i);
            const double d = (q - p).norm();
            if (d > excl) {
                v = q - p;
                return true;
            }
            if (d > far_d) {
                far_d = d;
                far_v = q - p;
            }
        }
        if (far_d > 1e-12) {
            v = far_v;
            return true;
        }
        return false;
    };
    Vec3 v1 = Vec3::Zero(), v2 = Vec3::Zero();
    const bool ok1 = walk(-1, v1);
    const bool ok2 = walk(+1, v2);
    if (!ok1 || !ok2) return -1.0;

    const Vec3 a = v1.normalized(), b = v2.normalized();
    const double raw = angle_between(a, b);
    const Vec3 bis = a + b;
    if (bis.norm() < 1e-9) return raw;  // straight pass
    const Vec3 w = rb.samples[row].point - p;  // points into the material
    return bis.normalized().dot(w.normalized()) >= 0 ? raw : 2.0 * pi - raw;
}

}  // namespace

WedgeGraph detect_vertices(const Ribbonization& rz, const Tolerances& tol) {
    WedgeGraph g;

    struct End {
        int wedge = -1;
        bool at_end = false;
        Vec3 p = Vec3::Zero(), dir = Vec3::Zero();
        int row_a = -1, row_b = -1;
    };
    std::vector<End> ends;
    for (size_t w = 0; w < rz.wedges.size(); ++w) {
        const WedgeSegment& s = rz.wedges[w];
        const size_t n = s.points.size();
        if (s.closed || n < 2) continue;
        End e0{static_cast<int>(w), false, s.points.front(),
               (s.points[1] - s.points[0]).normalized(), s.rows_a.front(), s.rows_b.front()};
        End e1{static_cast<int>(w), true, s.points.back(),
               (s.points[n - 2] - s.points[n - 1]).normalized(), s.rows_a.back(),
               s.rows_b.back()};
        ends.push_back(e0);
        ends.push_back(e1);
    }

    // single-link clustering of endpoints
    const int ne = static_cast<int>(ends.size());
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < ne; ++i)
        for (int j = i + 1; j < ne; ++j)
            if ((ends[i].p - ends[j].p).norm() <= tol.cluster) parent[find(i)] = find(j);

    std::vector<std::vector<int>> groups;
    {
        std::vector<int> group_of(ne, -1);
        for (int i = 0; i < ne; ++i) {
            const int r = find(i);
            if (group_of[r] < 0) {
                group_of[r] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[group_of[r]].push_back(i);
        }
    }

    std::vector<Vec3> centers;
    for (const auto& grp : groups) {
        Vec3 c = Vec3::Zero();
        for (int i : grp) c += ends[i].p;
        centers.push_back(c / static_cast<double>(grp.size()));
    }
    for (size_t i = 0; i < centers.size(); ++i)
        for (size_t j = i + 1; j < centers.size(); ++j)
            if ((centers[i] - centers[j]).norm() < 2.0 * tol.cluster)
                throw AmbiguousCluster("vertex clusters too close to separate at distance " +
                                       format_double((centers[i] - centers[j]).norm()));

    for (size_t gi = 0; gi < groups.size(); ++gi) {
        Vertex v;
        v.position = centers[gi];

        // degree: merge incident directions
        std::vector<Vec3> reps;
        for (int ei : groups[gi]) {
            const End& e = ends[ei];
            v.incident.push_back({e.wedge, e.at_end, e.dir});
            bool merged = false;
            for (const Vec3& r : reps)
                if (angle_between(r, e.dir) < tol.direction_merge) {
                    merged = true;
                    break;
                }
            if (!merged) reps.push_back(e.dir);
        }
        v.degree = static_cast<int>(reps.size());
        v.character = v.degree == 1   ? VertexCharacter::WedgeEnd
                      : v.degree == 2 ? VertexCharacter::ZeroContributing
                                      : VertexCharacter::Conventional;
        bool all_self = !groups[gi].empty();
        for (int ei : groups[gi]) {
            const WedgeSegment& s = rz.wedges[ends[ei].wedge];
            all_self = all_self && s.self_contact;
        }
        v.capped = v.degree == 1 && all_self;

        // sheet passes through this vertex; a self-contact wedge end yields
        // two material corners on the same edge, each barred from walking
        // across the vertex onto its partner's rows
        struct RawPass {
            int ribbon, side, row, barrier;
        };
        std::vector<RawPass> raw;
        for (int ei : groups[gi]) {
            const End& e = ends[ei];
            const WedgeSegment& s = rz.wedges[e.wedge];
            const bool self_pair = s.ribbon_a == s.ribbon_b && s.side_a == s.side_b;
            raw.push_back({s.ribbon_a, s.side_a, e.row_a, self_pair ? e.row_b : -1});
            raw.push_back({s.ribbon_b, s.side_b, e.row_b, self_pair ? e.row_a : -1});
        }

        double excl = tol.vertex_exclusion;
        if (excl <= 0) {
            double d = 0;
            for (const RawPass& rp : raw)
                d = std::max(d, rz.lattices[rp.ribbon].max_cell_diag());
            excl = 2.5 * d;
        }
        v.exclusion = excl;

        for (const RawPass& rp : raw) {
            bool dup = false;
            for (const VertexPass& q : v.passes) {
                if (q.ribbon != rp.ribbon || q.side != rp.side) continue;
                if (rp.barrier >= 0 && q.row == rp.barrier) continue;  // partner corner, not a dup
                const Ribbon& rb = rz.ribbons[rp.ribbon];
                const int rows = lattice_rows(rb);
                int dr = std::abs(q.row - rp.row);
                if (rb.closed) dr = std::min(dr, rows - dr);
                const double spacing =
                    (edge_point(rb, rp.side, (rp.row + 1) % rows) - edge_point(rb, rp.side, rp.row))
                        .norm();
                const int merge_rows = spacing > 0
                                           ? static_cast<int>(std::ceil(excl / spacing)) + 2
                                           : 2;
                if (dr <= merge_rows) {
                    dup = true;
                    break;
                }
            }
            if (dup) continue;
            const double sector = measure_sector(rz.ribbons[rp.ribbon], rp.side, rp.row,
                                                 v.position, excl, rp.barrier);
            if (sector >= 0) {
                v.passes.push_back({rp.ribbon, rp.side, rp.row, sector});
                v.inner_angles.push_back(sector);
            }
        }
        g.vertices.push_back(std::move(v));
    }

    // cone points: the trimmed edge circles a ruling focus
    for (size_t r = 0; r < rz.ribbons.size(); ++r) {
        const Ribbon& rb = rz.ribbons[r];
        if (!rb.cone) continue;
        const int side = rb.cone_side;
        const int rows = lattice_rows(rb);
        int clamped = 0;
        for (int i = 0; i < rows; ++i) {
            const double us = rb.samples[i].striction;
            if (std::isnan(us)) continue;
            const double w = side > 0 ? rb.samples[i].w_plus : rb.samples[i].w_minus;
            if (std::abs(w) >= 0.9 * tol.striction_guard * std::abs(us)) ++clamped;
        }
        if (clamped < static_cast<int>(0.99 * rows)) continue;

        Vertex v;
        v.position = rb.cone_tip;
        v.degree = 0;
        v.character = VertexCharacter::ConePoint;

        double sector = 0, rho_max = 0;
        for (int i = 0; i < rows; ++i) {
            const int j = (i + 1) % rows;
            if (!rb.closed && j == 0) break;
            const Vec3 a = edge_point(rb, side, i);
            const Vec3 b = edge_point(rb, side, j);
            const double ra = (a - rb.cone_tip).norm();
            const double rd = (b - rb.cone_tip).norm();
            rho_max = std::max({rho_max, ra, rd});
            sector += (b - a).norm() / (0.5 * (ra + rd));
        }
        v.cone_angle = sector;
        v.inner_angles = {sector};
        v.exclusion = 1.5 * rho_max;
        g.vertices.push_back(std::move(v));
    }

    return g;
}

std::vector<double> Vertex::outer_angles() const {
    std::vector<double> out;
    out.reserve(inner_angles.size());
    for (double b : inner_angles) out.push_back(pi - b);
    return out;
}

HalfInt euler_characteristic(const WedgeGraph& g) {
    long long twice = 0;
    for (const Vertex& v : g.vertices)
        if (!v.boundary) twice += 2 - v.degree;
    return HalfInt{twice};
}

AuditReport gauss_bonnet_audit(const Ribbonization& rz, const WedgeGraph& g,
                               const Tolerances& tol) {
    AuditReport rep;

    struct Excl {
        Vec3 p;
        double r;
    };
    std::vector<Excl> ex;
    for (const Vertex& v : g.vertices)
        if (v.exclusion > 0 && !v.capped) ex.push_back({v.position, v.exclusion});
    auto excluded = [&](const Vec3& p) {
        for (const Excl& e : ex)
            if ((p - e.p).norm() < e.r) return true;
        return false;
    };

    for (size_t r = 0; r < rz.ribbons.size(); ++r) {
        const Ribbon& rb = rz.ribbons[r];
        const int rows = lattice_rows(rb);
        for (int side : {1, -1}) {
            auto at = [&](int i) { return edge_point(rb, side, ((i % rows) + rows) % rows); };

            // orientation: traversal by ascending row should keep material left
            long vote = 0;
            const int lo = rb.closed ? 0 : 1;
            const int hi = rb.closed ? rows : rows - 1;
            for (int i = lo; i < hi; ++i) {
                const Vec3 t = at(i + 1) - at(i - 1);
                const Vec3 m = rb.samples[i].point - at(i);
                vote += rb.samples[i].normal.cross(t).dot(m) > 0 ? 1 : -1;
            }
            const double flip = vote >= 0 ? 1.0 : -1.0;

            double sum = 0;
            for (int i = lo; i < hi; ++i) {
                const Vec3 p = at(i);
                if (excluded(p)) continue;
                const Vec3 tin = (p - at(i - 1)).normalized();
                const Vec3 tout = (at(i + 1) - p).normalized();
                sum += std::atan2(tin.cross(tout).dot(rb.samples[i].normal), tin.dot(tout));
            }
            rep.edge_total += flip * sum;
            rep.terms.push_back({rb.name + (side > 0 ? " edge+" : " edge-"), flip * sum});
        }

        if (!rb.closed) {
            // presentation-cut corners of an open strip
            double corners = 0;
            for (int side : {1, -1}) {
                for (int end : {0, rows - 1}) {
                    const Vec3 c = edge_point(rb, side, end);
                    const Vec3 v1 =
                        (edge_point(rb, side, end == 0 ? 1 : rows - 2) - c).normalized();
                    const Vec3 v2 = (edge_point(rb, -side, end) - c).normalized();
                    corners += pi - angle_between(v1, v2);
                }
            }
            rep.edge_total += corners;
            rep.terms.push_back({rb.name + " cut corners", corners});
        }
    }

    for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
        const Vertex& v = g.vertices[vi];
        if (v.inner_angles.empty())
            throw MissingAngles("vertex " + std::to_string(vi) + " (" +
                                to_string(v.character) + ") lacks angle data");
        double term = 0;
        if (v.boundary) {
            for (double b : v.inner_angles) term += pi - b;
        } else {
            double s = 0;
            for (double b : v.inner_angles) s += b;
            term = 2.0 * pi - s;
        }
        rep.vertex_total += term;
        rep.terms.push_back({std::string(to_string(v.character)) + " vertex " +
                                 std::to_string(vi),
                             term});
    }

    rep.total = rep.edge_total + rep.vertex_total;
    rep.ratio = rep.total / (2.0 * pi);
    rep.chi = euler_characteristic(g);

    bool any_boundary = false;
    for (const Vertex& v : g.vertices) any_boundary = any_boundary || v.boundary;
    bool all_closed = true;
    for (const Ribbon& rb : rz.ribbons) all_closed = all_closed && rb.closed;
    rep.chi_valid = !any_boundary && all_closed;
    rep.error = std::abs(rep.ratio - rep.chi.value());
    rep.pass = rep.chi_valid && rep.error <= tol.audit;
    return rep;
}

HalfInt euler_from_degrees(const std::vector<int>& vertex_valence, std::size_t n_faces) {
    long long twice = 0;
    for (int d : vertex_valence) twice += 2 - d;
    twice += 2 * static_cast<long long>(n_faces);
    return HalfInt{twice};
}

PolyEuler polyhedron_euler(long long v, long long e, long long f) {
    PolyEuler out;
    out.chi_degrees = HalfInt{2 * (v + f) - 2 * e};
    out.chi_vef = v - e + f;
    return out;
}

PolyEuler polyhedron_euler(const PolyMesh& mesh) {
    std::set<std::pair<int, int>> edges;
    for (const auto& face : mesh.faces) {
        if (face.size() < 3) throw BadParams("polyhedron faces need at least 3 vertices");
        const int k = static_cast<int>(face.size());
        for (int i = 0; i < k; ++i) {
            const int a = face[i], b = face[(i + 1) % k];
            if (a == b || a < 0 || b < 0 || a >= mesh.n_vertices || b >= mesh.n_vertices)
                throw BadParams("polyhedron face references invalid vertices");
            edges.insert(std::minmax(a, b));
        }
    }
    std::vector<int> valence(mesh.n_vertices, 0);
    for (const auto& e : edges) {
        ++valence[e.first];
        ++valence[e.second];
    }
    PolyEuler out;
    out.chi_degrees = euler_from_degrees(valence, mesh.faces.size());
    out.chi_vef = static_cast<long long>(mesh.n_vertices) - static_cast<long long>(edges.size()) +
                  static_cast<long long>(mesh.faces.size());
    return out;
}

}  // namespace cartan
