#pragma once

#include <string>
#include <vector>

#include "cartan/assembly.hpp"
#include "cartan/types.hpp"

namespace cartan {

enum class VertexCharacter {
    ConePoint,         // degree 0: an apex where a strip's rulings focus
    WedgeEnd,          // degree 1: a wedge arc stops inside the sheets
    ZeroContributing,  // degree 2: arcs continue through, defect ~ 0
    Conventional,      // degree >= 3: branch point of the wedge graph
};
const char* to_string(VertexCharacter c);

struct VertexIncidence {
    int wedge = -1;       // index into Ribbonization::wedges
    bool at_end = false;  // endpoint at points.back() rather than points.front()
    Vec3 direction = Vec3::Zero();  // unit tangent pointing away from the vertex
};

// A sheet passing a vertex: the (ribbon, side) boundary polyline runs through
// the vertex near row `row`; its material sector angle there is `sector`.
struct VertexPass {
    int ribbon = -1, side = 0, row = -1;
    double sector = 0;
};

struct Vertex {
    Vec3 position = Vec3::Zero();
    int degree = 0;  // distinct incident wedge directions
    VertexCharacter character = VertexCharacter::Conventional;
    bool boundary = false;  // presentation-cut corner: contributes pi - beta per angle
    // A self-contact fold tip: the trimmed edge loops around the fold in a
    // small free hairpin bounding a puncture.  The audit closes the puncture
    // with a point cap (one full turn) and keeps the hairpin's own turning in
    // the edge books instead of hiding it inside the exclusion ball.
    bool capped = false;
    std::vector<VertexIncidence> incident;
    std::vector<VertexPass> passes;
    std::vector<double> inner_angles;  // material sector angles around the vertex
    double cone_angle = 0;             // total sector angle (cone points)
    double exclusion = 0;              // arc radius absorbed into this vertex's angles

    std::vector<double> outer_angles() const;  // pi - beta per inner angle
};

struct WedgeGraph {
    std::vector<Vertex> vertices;
};

// Clusters wedge-arc endpoints into vertices (AmbiguousCluster when clusters
// come closer than twice the clustering radius), counts distinct incident
// directions for the degree, measures material sector angles per passing
// sheet, and adds cone-point vertices for strips whose trimmed edge circles a
// ruling focus.
WedgeGraph detect_vertices(const Ribbonization& rz, const Tolerances& tol = {});

// Euler characteristic of the ribbonized surface from vertex degrees:
// chi = 1/2 sum (2 - d_k) over interior vertices.  Exact.
HalfInt euler_characteristic(const WedgeGraph& g);

struct AuditTerm {
    std::string label;
    double value = 0;
};

struct AuditReport {
    double edge_total = 0;    // oriented turning along all trimmed strip edges
    double vertex_total = 0;  // angle defects (interior) and corner turns (boundary)
    double total = 0;
    HalfInt chi;        // from euler_characteristic
    bool chi_valid = false;  // false when the graph carries boundary vertices
    double ratio = 0;   // total / 2 pi
    double error = 0;   // |ratio - chi| when chi_valid
    bool pass = false;
    std::vector<AuditTerm> terms;
};

// Discrete Gauss-Bonnet: total turning of every strip's boundary (both sides,
// material kept to the left, nodes inside vertex exclusion radii skipped, cut
// corners of open strips included) plus the vertex terms 2pi - sum(beta) for
// interior vertices and sum(pi - beta) for boundary-flagged ones.  The result
// should be 2 pi times the Euler characteristic.
AuditReport gauss_bonnet_audit(const Ribbonization& rz, const WedgeGraph& g,
                               const Tolerances& tol = {});

// --- polyhedra ----------------------------------------------------------------

struct PolyMesh {
    int n_vertices = 0;
    std::vector<std::vector<int>> faces;  // vertex index loops
};

struct PolyEuler {
    HalfInt chi_degrees;    // vertex-degree route (face midpoints as cone points)
    long long chi_vef = 0;  // V - E + F
};

// Both routes; they agree identically (the degree route telescopes to V-E+F).
PolyEuler polyhedron_euler(const PolyMesh& mesh);

// Count-level version: V corner vertices of total valence 2E plus F degree-0
// face points give chi = (2(V+F) - 2E)/2 = V - E + F.
PolyEuler polyhedron_euler(long long v, long long e, long long f);

// Degree route on abstract counts: vertices with given edge valences plus one
// degree-0 cone point per face.
HalfInt euler_from_degrees(const std::vector<int>& vertex_valence, std::size_t n_faces);

}  // namespace cartan
