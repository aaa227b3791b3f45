#include "cartan/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& v, int line) {
    const std::string t = trim(v);
    if (t.empty()) throw ParseError(line, "expected a number");
    char* end = nullptr;
    const double x = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw ParseError(line, "bad number '" + t + "'");
    return x;
}

long parse_int(const std::string& v, int line) {
    const double x = parse_number(v, line);
    const long n = std::lround(x);
    if (x != static_cast<double>(n)) throw ParseError(line, "expected an integer, got '" + trim(v) + "'");
    return n;
}

bool parse_bool(const std::string& v, int line) {
    const std::string t = trim(v);
    if (t == "true" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "no" || t == "0") return false;
    throw ParseError(line, "expected true/false, got '" + t + "'");
}

std::vector<double> parse_number_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) throw ParseError(line, "empty list entry");
        out.push_back(parse_number(item, line));
    }
    return out;
}

// "u,v; u,v; ..." pairs
std::vector<std::array<double, 2>> parse_point_list(const std::string& v, int line) {
    std::vector<std::array<double, 2>> out;
    std::stringstream ss(v);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        if (trim(pair).empty()) continue;
        const auto nums = parse_number_list(pair, line);
        if (nums.size() != 2) throw ParseError(line, "point needs exactly two coordinates");
        out.push_back({nums[0], nums[1]});
    }
    return out;
}

struct TolField {
    const char* name;
    double Tolerances::* dmem;
    int Tolerances::* imem;
};

const TolField kTolFields[] = {
    {"chart_degeneracy", &Tolerances::chart_degeneracy, nullptr},
    {"regularity", &Tolerances::regularity, nullptr},
    {"closure", &Tolerances::closure, nullptr},
    {"frame_orthonormal", &Tolerances::frame_orthonormal, nullptr},
    {"speed_match", &Tolerances::speed_match, nullptr},
    {"initial_match", &Tolerances::initial_match, nullptr},
    {"classify", &Tolerances::classify, nullptr},
    {"normal_curvature_min", &Tolerances::normal_curvature_min, nullptr},
    {"flatness", &Tolerances::flatness, nullptr},
    {"angle_defect", &Tolerances::angle_defect, nullptr},
    {"isometry", &Tolerances::isometry, nullptr},
    {"bisection_u", &Tolerances::bisection_u, nullptr},
    {"wedge_consistency", &Tolerances::wedge_consistency, nullptr},
    {"wedge_match", &Tolerances::wedge_match, nullptr},
    {"coincident_band", &Tolerances::coincident_band, nullptr},
    {"cluster", &Tolerances::cluster, nullptr},
    {"direction_merge", &Tolerances::direction_merge, nullptr},
    {"guard_band_frac", &Tolerances::guard_band_frac, nullptr},
    {"bridge_frac", &Tolerances::bridge_frac, nullptr},
    {"striction_guard", &Tolerances::striction_guard, nullptr},
    {"min_wedge_run", nullptr, &Tolerances::min_wedge_run},
    {"audit", &Tolerances::audit, nullptr},
    {"umbilic_margin", &Tolerances::umbilic_margin, nullptr},
    {"capture_cells", &Tolerances::capture_cells, nullptr},
    {"vertex_exclusion", &Tolerances::vertex_exclusion, nullptr},
    {"cone_spread", &Tolerances::cone_spread, nullptr},
};

const char* kCurveFamilies[] = {"torus-unknot", "ellipsoid-u-curve", "ellipsoid-v-curve",
                                "latitude", "spline"};

void validate(const SceneConfig& cfg) {
    if (cfg.surface_kind.empty()) throw ValidationError("surface.kind", "no surface configured");
    if (cfg.curves.empty()) throw ValidationError("curve", "at least one center curve required");
    if (cfg.samples < 64) throw ValidationError("ribbonization.samples", "need at least 64");
    if (cfg.w_max < 0) throw ValidationError("ribbonization.w_max", "must be positive or auto");
    if (cfg.lattice_nu < 3 || cfg.lattice_nu % 2 == 0)
        throw ValidationError("ribbonization.lattice_nu", "must be odd and at least 3");
    for (const SceneCurve& c : cfg.curves) {
        const bool known = std::any_of(std::begin(kCurveFamilies), std::end(kCurveFamilies),
                                       [&](const char* f) { return c.family == f; });
        if (!known) throw ValidationError("curve.family", "unknown family '" + c.family + "'");
        if (c.family == "spline" && c.points.size() < 2)
            throw ValidationError("curve.points", "spline needs at least 2 points");
        if (c.sign != 1 && c.sign != -1)
            throw ValidationError("curve.sign", "must be 1 or -1");
    }
    try {
        builtin_surface(cfg.surface_kind, cfg.surface_params);
    } catch (const Error& e) {
        throw ValidationError("surface", e.what());
    }
}

}  // namespace

SceneConfig parse_scene(const std::string& text) {
    SceneConfig cfg;
    cfg.samples = 0;  // sentinel: default filled after parsing

    enum class Section { None, Surface, Curve, Ribbonization, Tolerances_, Outputs };
    Section sec = Section::None;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(line, "unterminated section header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (name == "surface") sec = Section::Surface;
            else if (name == "curve") { sec = Section::Curve; cfg.curves.emplace_back(); }
            else if (name == "ribbonization") sec = Section::Ribbonization;
            else if (name == "tolerances") sec = Section::Tolerances_;
            else if (name == "outputs") sec = Section::Outputs;
            else throw ParseError(line, "unknown section [" + name + "]");
            continue;
        }

        const size_t eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ParseError(line, "empty key");

        switch (sec) {
            case Section::None:
                throw ParseError(line, "key outside any [section]");
            case Section::Surface:
                if (key == "kind") cfg.surface_kind = val;
                else if (key == "params") cfg.surface_params = parse_number_list(val, line);
                else throw ParseError(line, "unknown surface key '" + key + "'");
                break;
            case Section::Curve: {
                SceneCurve& c = cfg.curves.back();
                if (key == "name") c.name = val;
                else if (key == "family") c.family = val;
                else if (key == "p") c.p = static_cast<int>(parse_int(val, line));
                else if (key == "q") c.q = static_cast<int>(parse_int(val, line));
                else if (key == "sign") c.sign = static_cast<int>(parse_int(val, line));
                else if (key == "phase") c.phase = parse_number(val, line);
                else if (key == "v" || key == "u" || key == "theta") c.fixed = parse_number(val, line);
                else if (key == "points") c.points = parse_point_list(val, line);
                else if (key == "closed") c.spline_closed = parse_bool(val, line);
                else throw ParseError(line, "unknown curve key '" + key + "'");
                break;
            }
            case Section::Ribbonization:
                if (key == "samples") cfg.samples = static_cast<int>(parse_int(val, line));
                else if (key == "w_max")
                    cfg.w_max = (val == "auto") ? 0.0 : parse_number(val, line);
                else if (key == "lattice_nu") cfg.lattice_nu = static_cast<int>(parse_int(val, line));
                else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(val, line));
                else throw ParseError(line, "unknown ribbonization key '" + key + "'");
                break;
            case Section::Tolerances_: {
                bool found = false;
                for (const TolField& f : kTolFields) {
                    if (key != f.name) continue;
                    if (f.dmem) cfg.tol.*(f.dmem) = parse_number(val, line);
                    else cfg.tol.*(f.imem) = static_cast<int>(parse_int(val, line));
                    found = true;
                    break;
                }
                if (!found) throw ParseError(line, "unknown tolerance '" + key + "'");
                break;
            }
            case Section::Outputs:
                if (key == "mesh") cfg.outputs.mesh = val;
                else if (key == "patterns") cfg.outputs.patterns = val;
                else if (key == "curvature") cfg.outputs.curvature = val;
                else if (key == "widths") cfg.outputs.widths = val;
                else if (key == "report") cfg.outputs.report = val;
                else throw ParseError(line, "unknown output key '" + key + "'");
                break;
        }
    }

    if (cfg.samples == 0) cfg.samples = 256;
    validate(cfg);
    return cfg;
}

std::string serialize_scene(const SceneConfig& cfg) {
    std::string out;
    auto kv = [&](const char* k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    };

    out += "[surface]\n";
    kv("kind", cfg.surface_kind);
    if (!cfg.surface_params.empty()) {
        std::string v;
        for (size_t i = 0; i < cfg.surface_params.size(); ++i) {
            if (i) v += ", ";
            v += format_double(cfg.surface_params[i]);
        }
        kv("params", v);
    }

    for (const SceneCurve& c : cfg.curves) {
        out += "\n[curve]\n";
        kv("name", c.name);
        kv("family", c.family);
        if (c.family == "torus-unknot") {
            kv("p", std::to_string(c.p));
            kv("q", std::to_string(c.q));
            kv("phase", format_double(c.phase));
        } else if (c.family == "ellipsoid-u-curve") {
            kv("v", format_double(c.fixed));
            if (c.sign != 1) kv("sign", std::to_string(c.sign));
        } else if (c.family == "ellipsoid-v-curve") {
            kv("u", format_double(c.fixed));
            if (c.sign != 1) kv("sign", std::to_string(c.sign));
        } else if (c.family == "latitude") {
            kv("theta", format_double(c.fixed));
        } else if (c.family == "spline") {
            std::string v;
            for (size_t i = 0; i < c.points.size(); ++i) {
                if (i) v += "; ";
                v += format_double(c.points[i][0]) + ", " + format_double(c.points[i][1]);
            }
            kv("points", v);
            kv("closed", c.spline_closed ? "true" : "false");
        }
    }

    out += "\n[ribbonization]\n";
    kv("samples", std::to_string(cfg.samples));
    kv("w_max", cfg.w_max > 0 ? format_double(cfg.w_max) : std::string("auto"));
    kv("lattice_nu", std::to_string(cfg.lattice_nu));
    kv("seed", std::to_string(cfg.seed));

    out += "\n[tolerances]\n";
    for (const TolField& f : kTolFields) {
        if (f.dmem) kv(f.name, format_double(cfg.tol.*(f.dmem)));
        else kv(f.name, std::to_string(cfg.tol.*(f.imem)));
    }

    const SceneOutputs& o = cfg.outputs;
    if (!o.mesh.empty() || !o.patterns.empty() || !o.curvature.empty() || !o.widths.empty() ||
        !o.report.empty()) {
        out += "\n[outputs]\n";
        if (!o.mesh.empty()) kv("mesh", o.mesh);
        if (!o.patterns.empty()) kv("patterns", o.patterns);
        if (!o.curvature.empty()) kv("curvature", o.curvature);
        if (!o.widths.empty()) kv("widths", o.widths);
        if (!o.report.empty()) kv("report", o.report);
    }
    return out;
}

std::shared_ptr<const ParametricSurface> make_scene_surface(const SceneConfig& cfg) {
    return std::make_shared<const ParametricSurface>(
        builtin_surface(cfg.surface_kind, cfg.surface_params));
}

CurveOnSurface make_scene_curve(const SceneConfig& cfg, const SceneCurve& c) {
    const Tolerances& tol = cfg.tol;
    std::vector<double> params = cfg.surface_params;
    if (c.sign == -1) {
        if (cfg.surface_kind != "ellipsoid-belt" && cfg.surface_kind != "ellipsoid-belt-x")
            throw ValidationError("curve.sign",
                                  "mirrored placement needs an ellipsoid belt chart");
        if (params.empty()) params = {5, 4, 1};
        if (params.size() == 3) params.push_back(-1.0);
        else params[3] = -params[3];
    }
    auto s = std::make_shared<const ParametricSurface>(
        builtin_surface(cfg.surface_kind, params));
    const ChartDomain& dom = s->domain();
    if (c.family == "torus-unknot") return make_torus_unknot(s, c.p, c.q, c.phase, c.name);
    if (c.family == "latitude") return make_latitude(s, c.fixed, c.name);
    if (c.family == "ellipsoid-u-curve") {
        if (dom.u_periodic) return make_coordinate_loop(s, c.fixed, c.name);
        return make_u_arc(s, c.fixed, 0.0, c.name);
    }
    if (c.family == "ellipsoid-v-curve") {
        if (dom.v_periodic) {
            const double u0 = c.fixed, v0 = dom.v0;
            const double period = dom.v1 - dom.v0;
            return CurveOnSurface(
                s,
                [u0, v0](double t) {
                    return PathJet{Jet1::constant(u0), Jet1{v0 + t, 1.0, 0.0}};
                },
                0.0, period, true, c.name, tol.closure, tol.regularity);
        }
        return make_v_arc(s, c.fixed, 0.0, c.name);
    }
    if (c.family == "spline") {
        std::vector<Vec2> pts;
        pts.reserve(c.points.size());
        for (const auto& p : c.points) pts.emplace_back(p[0], p[1]);
        return make_spline_path(s, pts, c.spline_closed, c.name);
    }
    throw ValidationError("curve.family", "unknown family '" + c.family + "'");
}

}  // namespace cartan
