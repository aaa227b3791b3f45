#include "cartan/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <utility>

#include "cartan/errors.hpp"
#include "cartan/exporters.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
    if (file.empty() || file.front() == '/' || dir.empty() || dir == ".") return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fixed1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

const char* mode_name(RunMode m) {
    switch (m) {
        case RunMode::Ribbonize: return "ribbonize";
        case RunMode::Develop: return "develop";
        case RunMode::Inspect: return "inspect";
        case RunMode::Curvature: return "curvature";
    }
    return "?";
}

}  // namespace

RunMode run_mode_from_verb(const std::string& verb) {
    if (verb == "ribbonize") return RunMode::Ribbonize;
    if (verb == "develop") return RunMode::Develop;
    if (verb == "inspect") return RunMode::Inspect;
    if (verb == "curvature") return RunMode::Curvature;
    throw BadParams("unknown verb '" + verb + "'");
}

RunReport run_pipeline(const SceneConfig& cfg, const std::string& out_dir, RunMode mode) {
    RunReport rep;
    rep.cfg = cfg;
    rep.mode = mode;

    std::shared_ptr<const ParametricSurface> surface;
    std::vector<CurveOnSurface> curves;
    std::vector<Ribbon> ribbons;

    bool dead = false;  // a failed stage poisons everything downstream
    auto stage = [&](const char* name, bool enabled, auto&& body) {
        if (!enabled) return;
        StageResult sr;
        sr.name = name;
        if (dead) {
            sr.ok = false;
            sr.error = "skipped: earlier stage failed";
            rep.stages.push_back(std::move(sr));
            return;
        }
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const std::exception& e) {
            sr.ok = false;
            sr.error = e.what();
            dead = true;
            rep.ok = false;
        }
        const auto t1 = std::chrono::steady_clock::now();
        sr.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rep.stages.push_back(std::move(sr));
    };

    const bool want_ribbons = mode != RunMode::Curvature;
    const bool want_assembly = mode == RunMode::Ribbonize || mode == RunMode::Inspect;
    const bool want_patterns = mode == RunMode::Ribbonize || mode == RunMode::Develop;

    stage("surface", true, [&] { surface = make_scene_surface(cfg); });

    stage("curves", true, [&] {
        for (const SceneCurve& sc : cfg.curves)
            curves.push_back(make_scene_curve(cfg, sc));
    });

    stage("darboux", true, [&] {
        for (const CurveOnSurface& c : curves)
            rep.curve_samples.push_back(sample_curve(c, cfg.samples));
    });

    stage("ribbons", want_ribbons, [&] {
        for (const CurveOnSurface& c : curves)
            ribbons.push_back(build_ribbon(c, cfg.samples, cfg.w_max, cfg.tol));
        if (cfg.w_max <= 0)
            for (const Ribbon& r : ribbons)
                rep.log.push_back("auto width for " + r.name + ": " +
                                  format_double(r.samples.empty() ? 0.0 : r.samples[0].w_plus));
    });

    stage("assembly", want_assembly, [&] {
        rep.rz = assemble(std::move(ribbons), cfg.lattice_nu, cfg.tol);
        rep.has_assembly = true;
        for (const ContactDiagnostic& d : rep.rz.diagnostics)
            rep.log.push_back("diagnostic: " + d.kind + " between ribbon " +
                              std::to_string(d.ribbon_a) + " and " + std::to_string(d.ribbon_b) +
                              (d.note.empty() ? "" : " (" + d.note + ")"));
    });

    stage("development", want_ribbons, [&] {
        const std::vector<Ribbon>& src = rep.has_assembly ? rep.rz.ribbons : ribbons;
        for (const Ribbon& r : src) {
            PlanarCurve dev = develop_curve(r.frames, r.closed);
            rep.patterns.push_back(develop_ribbon(r, dev));
            rep.developments.push_back(std::move(dev));
        }
    });

    stage("topology", want_assembly, [&] {
        rep.graph = detect_vertices(rep.rz, cfg.tol);
        rep.audit = gauss_bonnet_audit(rep.rz, rep.graph, cfg.tol);
        rep.has_topology = true;
    });

    stage("exports", true, [&] {
        const SceneOutputs& o = cfg.outputs;
        auto note = [&](const std::string& p) { rep.log.push_back("wrote " + p); };
        if (!o.curvature.empty()) {
            std::vector<std::string> names;
            for (const CurveOnSurface& c : curves) names.push_back(c.name());
            const std::string p = join_path(out_dir, o.curvature);
            write_text_file(p, curvature_csv(rep.curve_samples, names));
            note(p);
        }
        if (!o.mesh.empty() && rep.has_assembly) {
            const std::string p = join_path(out_dir, o.mesh);
            export_mesh(rep.rz, p);
            note(p);
        }
        if (!o.patterns.empty() && want_patterns && !rep.patterns.empty()) {
            const std::string p = join_path(out_dir, o.patterns);
            export_flat_patterns(rep.patterns, p);
            note(p);
        }
        if (!o.widths.empty() && rep.has_assembly) {
            const std::string p = join_path(out_dir, o.widths);
            write_text_file(p, widths_csv(rep.rz));
            note(p);
        }
    });

    // the report itself is written even after failures, so runs stay diagnosable
    if (!cfg.outputs.report.empty()) {
        const std::string p = join_path(out_dir, cfg.outputs.report);
        try {
            write_text_file(p, rep.text());
            rep.log.push_back("wrote " + p);
        } catch (const std::exception& e) {
            rep.ok = false;
            rep.log.push_back(std::string("report write failed: ") + e.what());
        }
    }
    return rep;
}

std::string RunReport::text() const {
    std::string out;
    out += "cartan run report\n";
    out += "=================\n";
    out += "mode: " + std::string(mode_name(mode)) + "\n";
    out += "surface: " + cfg.surface_kind + ", " + std::to_string(cfg.curves.size()) +
           " center curve(s), " + std::to_string(cfg.samples) + " samples each\n";

    out += "\n[stages]\n";
    for (const StageResult& s : stages) {
        out += "  " + s.name;
        out.append(s.name.size() < 12 ? 12 - s.name.size() : 1, ' ');
        out += fixed1(s.ms) + " ms  " + (s.ok ? "ok" : "FAILED: " + s.error) + "\n";
    }

    if (!log.empty()) {
        out += "\n[log]\n";
        for (const std::string& l : log) out += "  " + l + "\n";
    }

    if (has_assembly) {
        out += "\n[wedges]\n";
        int closed = 0;
        for (const WedgeSegment& w : rz.wedges) closed += w.closed ? 1 : 0;
        out += "  segments: " + std::to_string(rz.wedges.size()) + " (" + std::to_string(closed) +
               " closed)\n";
        out += "  max gap to partner sheet: " + format_sig(rz.max_wedge_gap, 3) + "\n";
    }

    if (has_topology) {
        out += "\n[vertices]\n";
        if (graph.vertices.empty()) out += "  none\n";
        for (size_t k = 0; k < graph.vertices.size(); ++k) {
            const Vertex& v = graph.vertices[k];
            out += "  " + std::to_string(k) + ": (" + format_sig(v.position.x(), 6) + ", " +
                   format_sig(v.position.y(), 6) + ", " + format_sig(v.position.z(), 6) +
                   ")  degree " + std::to_string(v.degree) + "  " + to_string(v.character) + "\n";
        }
    }

    out += "\n[effective configuration]\n";
    {
        std::string cfgtext = serialize_scene(cfg);
        size_t pos = 0;
        while (pos < cfgtext.size()) {
            const size_t nl = cfgtext.find('\n', pos);
            out += "  " + cfgtext.substr(pos, nl - pos) + "\n";
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
    }

    out += "\n";
    if (has_topology) {
        out += "chi = " + audit.chi.str() + " (exact), audit " + fixed3(audit.ratio) + " +/- " +
               fixed3(cfg.tol.audit) + "\n";
    } else {
        out += std::string("result: ") + (ok ? "ok" : "FAILED") + "\n";
    }
    return out;
}

}  // namespace cartan
