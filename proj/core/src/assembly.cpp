#include "cartan/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

namespace {

// Merge rule for competing cuts on one side of one ruling: nearest wins.
void merge_cut(CutCandidate& dst, const CutCandidate& src) {
    if (!src.found) return;
    if (!dst.found || std::abs(src.u) < std::abs(dst.u)) dst = src;
}

}  // namespace

std::vector<RulingCuts> solve_widths(const Ribbon& a, const QuadLattice& la, int ia,
                                     const Ribbon& b, const QuadLattice& lb, int ib,
                                     bool self_pass, const Tolerances& tol,
                                     std::vector<ContactDiagnostic>* diagnostics) {
    const int rows = la.nt();
    const int nu = la.nu();
    const int mid = (nu - 1) / 2;
    const double capture = tol.capture_cells * lb.max_cell_diag();
    const int guard =
        self_pass ? std::max(1, static_cast<int>(std::ceil(tol.guard_band_frac * rows))) : -1;

    std::vector<RulingCuts> out(rows);
    std::vector<char> nontransversal(rows, 0);
    std::vector<char> unresolved(rows, 0);

    for (int i = 0; i < rows; ++i) {
        const Vec3 base = a.samples[i].point;
        const Vec3 dir = a.samples[i].ruling;
        auto eval = [&](double u) {
            return lb.closest(base + u * dir, 2.0 * capture, self_pass ? i : -1, guard);
        };

        for (int pass = 0; pass < 2; ++pass) {
            const bool plus = pass == 0;
            CutCandidate& cand = plus ? out[i].plus : out[i].minus;

            std::vector<double> us;
            us.reserve(mid + 1);
            if (plus)
                for (int j = mid; j < nu; ++j) us.push_back(la.u_at(i, j));
            else
                for (int j = mid; j >= 0; --j) us.push_back(la.u_at(i, j));
            const int m = static_cast<int>(us.size());

            std::vector<LatticeHit> hits(m);
            for (int k = 0; k < m; ++k) hits[k] = eval(us[k]);

            // sustained overlap with the partner sheet?
            int crun = 0, crun_max = 0;
            for (int k = 0; k < m; ++k) {
                if (hits[k].valid && std::abs(hits[k].signed_dist) < tol.coincident_band)
                    crun_max = std::max(crun_max, ++crun);
                else
                    crun = 0;
            }

            // Collect every transversal crossing along the ruling.  Near a fold
            // of the sheet-sheet intersection curve a ruling can cross several
            // times, and the crossing nearest our centerline may land deep in
            // rim material the partner cannot keep.
            std::vector<CutCandidate> cands;
            for (int k = 0; k + 1 < m; ++k) {
                if (!hits[k].valid || !hits[k + 1].valid) continue;
                const double d0 = hits[k].signed_dist, d1 = hits[k + 1].signed_dist;
                if (std::abs(d0) < tol.coincident_band && std::abs(d1) < tol.coincident_band)
                    continue;  // inside the overlap band, signs are noise
                if (d0 * d1 >= 0.0) continue;

                // refine the crossing on the exact ruling line
                double ulo = us[k], uhi = us[k + 1];
                double slo = d0;
                bool ok = true;
                while (std::abs(uhi - ulo) > tol.bisection_u) {
                    const double um = 0.5 * (ulo + uhi);
                    LatticeHit h = eval(um);
                    if (!h.valid) {
                        ok = false;
                        break;
                    }
                    if ((h.signed_dist < 0) == (slo < 0)) {
                        ulo = um;
                        slo = h.signed_dist;
                    } else {
                        uhi = um;
                    }
                }
                if (!ok) continue;
                const double ustar = 0.5 * (ulo + uhi);
                LatticeHit h = eval(ustar);
                if (!h.valid || std::abs(h.signed_dist) > tol.wedge_consistency) {
                    unresolved[i] = 1;
                    continue;
                }
                CutCandidate c;
                c.found = true;
                c.u = ustar;
                c.partner = ib;
                c.partner_row = h.cell_t;
                c.partner_side = h.side;
                const RibbonSample& ps = b.samples[h.cell_t];
                c.partner_u = (base + ustar * dir - ps.point).dot(ps.ruling);
                cands.push_back(c);
            }

            // The mutual trim is the symmetric crossing: both strips reach the
            // wedge at comparable ruling depth.  Minimizing the worse of the
            // two coordinates rejects fold branches that hug our centerline
            // while running through the partner's discarded rim.
            for (const CutCandidate& c : cands) {
                const double score = std::max(std::abs(c.u), std::abs(c.partner_u));
                const double best = std::max(std::abs(cand.u), std::abs(cand.partner_u));
                if (!cand.found || score < best ||
                    (score == best && std::abs(c.u) < std::abs(cand.u)))
                    cand = c;
            }

            if (!cand.found && crun_max >= 2) {
                // Overlapping sheets: cut where the ruling parameter equals the
                // distance to the partner's center curve, i.e. midway between
                // the two strips measured inside the shared surface.
                auto g = [&](double u) {
                    return std::abs(u) - distance_to_polyline(base + u * dir,
                                                              lb.center_polyline(), lb.wrap());
                };
                double prev_u = us[0], prev_g = g(us[0]);
                for (int k = 1; k < m && !cand.found; ++k) {
                    const double cur_g = g(us[k]);
                    if (prev_g < 0.0 && cur_g >= 0.0) {
                        const double ustar =
                            bisect([&](double u) { return g(u); }, prev_u, us[k],
                                   tol.bisection_u);
                        LatticeHit h = eval(ustar);
                        if (h.valid && std::abs(h.signed_dist) <= tol.wedge_consistency) {
                            cand.found = true;
                            cand.coincident = true;
                            cand.u = ustar;
                            cand.partner_u = ustar;
                            cand.partner = ib;
                            cand.partner_row = h.cell_t;
                            cand.partner_side = h.side;
                            nontransversal[i] = 1;
                        }
                    }
                    prev_u = us[k];
                    prev_g = cur_g;
                }
            }
        }
    }

    if (diagnostics) {
        auto merge_ranges = [&](const std::vector<char>& flags, const char* kind,
                                const char* note) {
            int start = -1;
            for (int i = 0; i <= rows; ++i) {
                const bool on = i < rows && flags[i];
                if (on && start < 0) start = i;
                if (!on && start >= 0) {
                    diagnostics->push_back(
                        {kind, ia, ib, a.samples[start].t, a.samples[i - 1].t, note});
                    start = -1;
                }
            }
        };
        merge_ranges(nontransversal, "non-transversal-contact",
                     "overlapping sheets resolved by equidistance");
        merge_ranges(unresolved, "unresolved-crossing",
                     "a sign change did not converge onto the sheet");
    }
    return out;
}

namespace {

struct RawRun {
    int ribbon = -1;
    bool plus = true;
    std::vector<int> rows;
    bool closed = false;
};

// Maximal circular runs of rows where pick() returns a candidate; runs split
// where the partner ribbon changes or the wedge point jumps.
template <class Pick, class Point>
std::vector<RawRun> find_runs(int rows, bool wrap, Pick pick, Point point, double jump_dist) {
    std::vector<RawRun> runs;
    std::vector<char> used(rows, 0);
    auto active = [&](int i) { return pick(i) != nullptr; };

    int start = 0;
    bool full = true;
    if (wrap) {
        for (int i = 0; i < rows; ++i)
            if (!active(i)) {
                start = i + 1;
                full = false;
                break;
            }
    } else {
        full = false;
    }
    if (wrap && full) {
        // every ruling participates: one closed run, but still split on jumps
        RawRun run;
        for (int i = 0; i < rows; ++i) run.rows.push_back(i);
        run.closed = true;
        // check seams; a jump anywhere converts the loop into open runs
        std::vector<int> breaks;
        for (int k = 0; k < rows; ++k) {
            const int i = run.rows[k], j = run.rows[(k + 1) % rows];
            if ((point(j) - point(i)).norm() > jump_dist || pick(i)->partner != pick(j)->partner)
                breaks.push_back(k);
        }
        if (breaks.empty()) return {run};
        std::vector<RawRun> parts;
        for (size_t bi = 0; bi < breaks.size(); ++bi) {
            RawRun part;
            int from = (breaks[bi] + 1) % rows;
            int to = breaks[(bi + 1) % breaks.size()];
            for (int k = from; ; k = (k + 1) % rows) {
                part.rows.push_back(k);
                if (k == to) break;
            }
            parts.push_back(std::move(part));
        }
        return parts;
    }

    for (int off = 0; off < rows; ++off) {
        const int i = wrap ? (start + off) % rows : off;
        if (!active(i) || used[i]) continue;
        RawRun run;
        int k = i;
        while (true) {
            run.rows.push_back(k);
            used[k] = 1;
            int next = k + 1;
            if (wrap) next %= rows;
            if ((!wrap && next >= rows) || used[next] || !active(next)) break;
            if ((point(next) - point(k)).norm() > jump_dist ||
                pick(k)->partner != pick(next)->partner)
                break;
            k = next;
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

void fill_kappa_and_sides(WedgeSegment& seg, const std::vector<Ribbon>& ribbons) {
    const int n = static_cast<int>(seg.points.size());
    seg.kappa_a.assign(n, 0.0);
    seg.kappa_b.assign(n, 0.0);
    if (n < 3) return;

    int vote_a = 0, vote_b = 0;
    for (int k = 0; k < n; ++k) {
        const bool interior = seg.closed || (k > 0 && k + 1 < n);
        if (!interior) continue;
        const Vec3& prev = seg.points[(k - 1 + n) % n];
        const Vec3& cur = seg.points[k];
        const Vec3& next = seg.points[(k + 1) % n];
        const Vec3 tin = (cur - prev).normalized();
        const Vec3 tout = (next - cur).normalized();
        const double ds = 0.5 * ((cur - prev).norm() + (next - cur).norm());
        if (!(ds > 0)) continue;

        const Vec3 na = ribbons[seg.ribbon_a].samples[seg.rows_a[k]].normal;
        const Vec3 nb = ribbons[seg.ribbon_b].samples[seg.rows_b[k]].normal;
        seg.kappa_a[k] = std::atan2(tin.cross(tout).dot(na), tin.dot(tout)) / ds;
        seg.kappa_b[k] = std::atan2(tin.cross(tout).dot(nb), tin.dot(tout)) / ds;

        const Vec3 t = (next - prev).normalized();
        const Vec3 ca = ribbons[seg.ribbon_a].samples[seg.rows_a[k]].point - cur;
        const Vec3 cb = ribbons[seg.ribbon_b].samples[seg.rows_b[k]].point - cur;
        vote_a += na.cross(t).dot(ca) > 0 ? 1 : -1;
        vote_b += nb.cross(t).dot(cb) > 0 ? 1 : -1;
    }
    if (!seg.closed && n >= 3) {
        seg.kappa_a[0] = seg.kappa_a[1];
        seg.kappa_b[0] = seg.kappa_b[1];
        seg.kappa_a[n - 1] = seg.kappa_a[n - 2];
        seg.kappa_b[n - 1] = seg.kappa_b[n - 2];
    }
    seg.left_a = vote_a >= 0;
    seg.left_b = vote_b >= 0;
}

}  // namespace

Ribbonization assemble(std::vector<Ribbon> ribbons, int lattice_nu, const Tolerances& tol) {
    Ribbonization rz;
    rz.lattice_nu = lattice_nu;
    rz.ribbons = std::move(ribbons);
    const int R = static_cast<int>(rz.ribbons.size());
    if (R == 0) return rz;

    std::vector<QuadLattice> prov(R);
    for (int r = 0; r < R; ++r) prov[r] = QuadLattice::from_ribbon(rz.ribbons[r], lattice_nu);

    std::vector<std::vector<RulingCuts>> cuts(R);
    for (int r = 0; r < R; ++r) cuts[r].resize(prov[r].nt());

    // every pass runs against the untrimmed lattices so the result does not
    // depend on the ribbon order
    for (int a = 0; a < R; ++a) {
        for (int b = 0; b < R; ++b) {
            if (a == b) continue;
            const double inflate =
                tol.capture_cells * (prov[a].max_cell_diag() + prov[b].max_cell_diag());
            if (!prov[a].box_overlaps(prov[b], inflate)) continue;
            auto c = solve_widths(rz.ribbons[a], prov[a], a, rz.ribbons[b], prov[b], b, false,
                                  tol, &rz.diagnostics);
            for (int i = 0; i < prov[a].nt(); ++i) {
                merge_cut(cuts[a][i].plus, c[i].plus);
                merge_cut(cuts[a][i].minus, c[i].minus);
            }
        }
        auto c = solve_widths(rz.ribbons[a], prov[a], a, rz.ribbons[a], prov[a], a, true, tol,
                              &rz.diagnostics);
        for (int i = 0; i < prov[a].nt(); ++i) {
            merge_cut(cuts[a][i].plus, c[i].plus);
            merge_cut(cuts[a][i].minus, c[i].minus);
        }
    }

    // Where the wedge curve folds back in t the contact becomes tangential and
    // a short run of rulings has no crossing to find.  Bridge such gaps by
    // interpolating the cut between the flanking rulings when both flanks hit
    // the same partner and the interpolated trim stays within one cell of the
    // partner sheet; this trims away the thin fold lens instead of leaving a
    // spurious break in the wedge.
    for (int r = 0; r < R; ++r) {
        const int rows = prov[r].nt();
        const bool wrap = rz.ribbons[r].closed;
        const int max_gap = std::max(1, (int)std::ceil(tol.bridge_frac * rows));
        for (int side = 0; side < 2; ++side) {
            auto cand = [&](int i) -> CutCandidate& {
                int k = ((i % rows) + rows) % rows;
                return side ? cuts[r][k].plus : cuts[r][k].minus;
            };
            const int begin = wrap ? 0 : 1;
            const int end = wrap ? rows : rows - 1;
            for (int i = begin; i < end; ++i) {
                if (cand(i).found || !cand(i - 1).found) continue;
                int len = 0;
                while (len < rows && !cand(i + len).found) ++len;
                const int after = i + len;
                if (!wrap && after >= rows) break;  // gap runs off an open end
                const CutCandidate& lo = cand(i - 1);
                const CutCandidate& hi = cand(after);
                if (len > max_gap || !hi.found) { i = after; continue; }
                if (lo.partner < 0 || lo.partner != hi.partner) { i = after; continue; }
                const QuadLattice& pl = prov[lo.partner];
                const double depth_cap = pl.max_cell_diag();
                const bool self = lo.partner == r;
                const int ex_half = self ? (int)std::ceil(tol.guard_band_frac * rows) : -1;
                bool ok = true;
                std::vector<double> us(len);
                for (int k = 0; k < len; ++k) {
                    const double f = double(k + 1) / double(len + 1);
                    us[k] = (1 - f) * lo.u + f * hi.u;
                    const int row = (i + k) % rows;
                    const auto& s = rz.ribbons[r].samples[row];
                    const Vec3 p = s.point + us[k] * s.ruling;
                    LatticeHit hit = pl.closest(p, 2 * depth_cap, self ? row : -1, ex_half);
                    if (!hit.valid || hit.abs_dist > depth_cap) { ok = false; break; }
                }
                if (ok) {
                    for (int k = 0; k < len; ++k) {
                        CutCandidate& c = cand(i + k);
                        const double f = double(k + 1) / double(len + 1);
                        const bool near_lo = (k + 1) * 2 <= len + 1;
                        const CutCandidate& src = near_lo ? lo : hi;
                        c.found = true;
                        c.bridged = true;
                        c.u = us[k];
                        c.partner_u = (1 - f) * lo.partner_u + f * hi.partner_u;
                        c.partner = src.partner;
                        c.partner_row = src.partner_row;
                        c.partner_side = src.partner_side;
                    }
                }
                i = after;
            }
        }
    }

    // shrink widths simultaneously
    for (int r = 0; r < R; ++r) {
        Ribbon& rb = rz.ribbons[r];
        const int rows = prov[r].nt();
        for (int i = 0; i < rows; ++i) {
            if (cuts[r][i].plus.found) rb.samples[i].w_plus = cuts[r][i].plus.u;
            if (cuts[r][i].minus.found) rb.samples[i].w_minus = cuts[r][i].minus.u;
        }
        if (rb.closed) {
            rb.samples.back().w_plus = rb.samples.front().w_plus;
            rb.samples.back().w_minus = rb.samples.front().w_minus;
        }
    }

    rz.lattices.resize(R);
    for (int r = 0; r < R; ++r) rz.lattices[r] = QuadLattice::from_ribbon(rz.ribbons[r], lattice_nu);

    // collect wedge traces
    for (int r = 0; r < R; ++r) {
        const int rows = prov[r].nt();
        const double jump = 5.0 * rz.lattices[r].max_cell_diag();
        for (int pass = 0; pass < 2; ++pass) {
            const bool plus = pass == 0;
            auto pick = [&](int i) -> const CutCandidate* {
                const CutCandidate& c = plus ? cuts[r][i].plus : cuts[r][i].minus;
                return c.found ? &c : nullptr;
            };
            auto pnt = [&](int i) { return rz.ribbons[r].rule_point(i, pick(i)->u); };
            for (RawRun& run : find_runs(rows, rz.ribbons[r].closed, pick, pnt, jump)) {
                if (run.rows.empty()) continue;
                WedgeSegment seg;
                seg.ribbon_a = r;
                seg.side_a = plus ? 1 : -1;
                seg.closed = run.closed;
                const CutCandidate* first = pick(run.rows.front());
                seg.ribbon_b = first->partner;
                seg.self_contact = seg.ribbon_b == r;
                int side_votes = 0;
                bool coincident = false;
                for (int i : run.rows) {
                    const CutCandidate* c = pick(i);
                    seg.points.push_back(rz.ribbons[r].rule_point(i, c->u));
                    seg.rows_a.push_back(i);
                    seg.rows_b.push_back(c->partner_row);
                    seg.u_a.push_back(c->u);
                    side_votes += c->partner_side;
                    coincident = coincident || c->coincident;
                }
                seg.side_b = side_votes >= 0 ? 1 : -1;
                seg.coincident = coincident;
                fill_kappa_and_sides(seg, rz.ribbons);
                rz.wedges.push_back(std::move(seg));
            }
        }
    }

    // drop noise runs
    std::erase_if(rz.wedges, [&](const WedgeSegment& s) {
        return !s.closed && static_cast<int>(s.points.size()) < tol.min_wedge_run;
    });

    // deterministic order, then deduplicate twin traces of the same locus
    std::sort(rz.wedges.begin(), rz.wedges.end(), [](const WedgeSegment& x, const WedgeSegment& y) {
        return std::tuple(x.ribbon_a, x.side_a, x.rows_a.empty() ? -1 : x.rows_a[0], x.ribbon_b) <
               std::tuple(y.ribbon_a, y.side_a, y.rows_a.empty() ? -1 : y.rows_a[0], y.ribbon_b);
    });
    std::vector<WedgeSegment> kept;
    for (WedgeSegment& seg : rz.wedges) {
        bool dup = false;
        for (const WedgeSegment& k : kept) {
            if (!(seg.ribbon_a == k.ribbon_b && seg.ribbon_b == k.ribbon_a)) continue;
            if (k.points.size() < 2) continue;
            const double match =
                0.75 * std::max(rz.lattices[seg.ribbon_a].max_cell_diag(),
                                rz.lattices[k.ribbon_a].max_cell_diag());
            double mean = 0.0;
            for (const Vec3& p : seg.points)
                mean += distance_to_polyline(p, k.points, k.closed);
            mean /= static_cast<double>(seg.points.size());
            if (mean < match) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(std::move(seg));
    }
    rz.wedges = std::move(kept);

    // worst wedge-point distance to the (trimmed) partner sheet
    for (const WedgeSegment& seg : rz.wedges) {
        const QuadLattice& lb = rz.lattices[seg.ribbon_b];
        const int guard = seg.self_contact
                              ? std::max(1, static_cast<int>(std::ceil(
                                                tol.guard_band_frac * lb.nt())))
                              : -1;
        for (size_t k = 0; k < seg.points.size(); ++k) {
            LatticeHit h = lb.closest(seg.points[k], 10.0 * lb.max_cell_diag(),
                                      seg.self_contact ? seg.rows_a[k] : -1, guard);
            if (h.valid) rz.max_wedge_gap = std::max(rz.max_wedge_gap, h.abs_dist);
        }
    }
    return rz;
}

}  // namespace cartan
