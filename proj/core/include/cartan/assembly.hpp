#pragma once

#include <string>
#include <vector>

#include "cartan/lattice.hpp"
#include "cartan/ribbon.hpp"
#include "cartan/types.hpp"

namespace cartan {

// Result of scanning one ruling side for the nearest crossing with a partner
// sheet.  u is the ruling parameter of the crossing (signed).
struct CutCandidate {
    bool found = false;
    bool coincident = false;  // resolved by the equidistance fallback
    bool bridged = false;     // interpolated across a fold of the wedge curve
    double u = 0;
    double partner_u = 0;  // ruling coordinate of the hit on the partner strip
    int partner = -1;      // partner ribbon index
    int partner_row = -1;
    int partner_side = 0;
};

struct RulingCuts {
    CutCandidate minus, plus;
};

// Non-fatal findings collected during assembly.
struct ContactDiagnostic {
    std::string kind;  // e.g. "non-transversal-contact", "unresolved-crossing"
    int ribbon_a = -1, ribbon_b = -1;
    double t_lo = 0, t_hi = 0;
    std::string note;
};

// Shared boundary between two trimmed sheets, sampled at the owning strip's
// rulings.  kappa_a/kappa_b hold the wedge's geodesic curvature as seen inside
// each sheet (with respect to the stored traversal order); left_a/left_b say
// whether that traversal keeps the sheet's material on the left.
struct WedgeSegment {
    int ribbon_a = -1, side_a = 0;
    int ribbon_b = -1, side_b = 0;
    bool self_contact = false;
    bool closed = false;
    bool coincident = false;
    std::vector<Vec3> points;
    std::vector<int> rows_a, rows_b;
    std::vector<double> u_a;
    std::vector<double> kappa_a, kappa_b;
    bool left_a = true, left_b = true;
};

struct Ribbonization {
    std::vector<Ribbon> ribbons;
    std::vector<QuadLattice> lattices;  // rebuilt after trimming
    std::vector<WedgeSegment> wedges;
    std::vector<ContactDiagnostic> diagnostics;
    int lattice_nu = 33;
    double max_wedge_gap = 0;  // worst wedge-point distance to its partner sheet
};

// Scans every ruling of strip a (both sides, from the center outwards) for the
// first crossing with strip b's lattice.  Crossings are located by a sign
// change of the signed distance within the capture radius and refined by
// bisection on the exact ruling line.  Sustained |distance| below the
// coincidence band triggers the equidistance fallback, which places the cut
// where the ruling parameter equals the distance to b's center curve (the
// locus midway between overlapping sheets).  Self passes exclude a periodic
// guard band of rulings around the one being scanned.
std::vector<RulingCuts> solve_widths(const Ribbon& a, const QuadLattice& la, int ia,
                                     const Ribbon& b, const QuadLattice& lb, int ib,
                                     bool self_pass, const Tolerances& tol,
                                     std::vector<ContactDiagnostic>* diagnostics = nullptr);

// Mutual trimming of a family of strips.  All cut candidates are solved
// against the untrimmed lattices, then widths are reduced simultaneously
// (order independent), lattices rebuilt, and the surviving contacts collected
// into deduplicated wedge segments.
Ribbonization assemble(std::vector<Ribbon> ribbons, int lattice_nu, const Tolerances& tol = {});

}  // namespace cartan
