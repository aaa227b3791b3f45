#include "cartan/exporters.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <system_error>

#include "cartan/errors.hpp"
#include "cartan/numerics.hpp"

namespace cartan {

namespace {

std::string sanitize(const std::string& name) {
    std::string out = name;
    for (char& c : out)
        if (c == ' ' || c == '\t') c = '_';
    return out;
}

void append_vertex(std::string& out, const Vec3& p) {
    out += "v " + format_sig(p.x(), 9) + " " + format_sig(p.y(), 9) + " " + format_sig(p.z(), 9) +
           "\n";
}

std::string mm(double model_units, double unit_mm) { return format_sig(model_units * unit_mm, 7); }

}  // namespace

std::string obj_text(const Ribbonization& rz) {
    std::string out = "# cartan ribbonization\n";
    int base = 1;  // OBJ indices are 1-based
    for (size_t r = 0; r < rz.ribbons.size(); ++r) {
        const QuadLattice& l = rz.lattices[r];
        out += "o ribbon_" + std::to_string(r) + "_" + sanitize(rz.ribbons[r].name) + "\n";
        for (int i = 0; i < l.nt(); ++i)
            for (int j = 0; j < l.nu(); ++j) append_vertex(out, l.at(i, j));
        const int rows = l.wrap() ? l.nt() : l.nt() - 1;
        for (int i = 0; i < rows; ++i) {
            const int i1 = (i + 1) % l.nt();
            for (int j = 0; j + 1 < l.nu(); ++j) {
                const int a = base + i * l.nu() + j;
                const int b = base + i1 * l.nu() + j;
                out += "f " + std::to_string(a) + " " + std::to_string(b) + " " +
                       std::to_string(b + 1) + " " + std::to_string(a + 1) + "\n";
            }
        }
        base += l.nt() * l.nu();
    }
    if (!rz.wedges.empty()) {
        out += "o wedges\n";
        for (const WedgeSegment& w : rz.wedges) {
            for (const Vec3& p : w.points) append_vertex(out, p);
            out += "l";
            for (size_t k = 0; k < w.points.size(); ++k) out += " " + std::to_string(base + static_cast<int>(k));
            if (w.closed) out += " " + std::to_string(base);
            out += "\n";
            base += static_cast<int>(w.points.size());
        }
    }
    return out;
}

void export_mesh(const Ribbonization& rz, const std::string& path) {
    write_text_file(path, obj_text(rz));
}

std::string svg_text(const std::vector<PlanarRibbon>& ribbons, double unit_mm) {
    struct Box {
        double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    };
    std::vector<Box> boxes(ribbons.size());
    for (size_t r = 0; r < ribbons.size(); ++r) {
        Box b{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
              std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
        const PlanarRibbon& p = ribbons[r];
        const int n = static_cast<int>(p.center.pos.size());
        for (int i = 0; i < n; ++i) {
            for (double u : {p.w_minus[i], 0.0, p.w_plus[i]}) {
                const Vec2 q = p.rule_point(i, u);
                b.x0 = std::min(b.x0, q.x());
                b.x1 = std::max(b.x1, q.x());
                b.y0 = std::min(b.y0, q.y());
                b.y1 = std::max(b.y1, q.y());
            }
        }
        if (n == 0) b = Box{0, 0, 0, 0};
        boxes[r] = b;
    }

    const double margin = 0.5;  // model units between patterns and around the sheet
    double total_w = margin, total_h = 0;
    std::vector<double> off_x(ribbons.size());
    for (size_t r = 0; r < ribbons.size(); ++r) {
        off_x[r] = total_w - boxes[r].x0;
        total_w += (boxes[r].x1 - boxes[r].x0) + margin;
        total_h = std::max(total_h, boxes[r].y1 - boxes[r].y0);
    }
    total_h += 2 * margin;
    if (ribbons.empty()) total_w = total_h = 2 * margin;

    const std::string W = mm(total_w, unit_mm), H = mm(total_h, unit_mm);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + W + "mm\" height=\"" + H +
           "mm\" viewBox=\"0 0 " + W + " " + H + "\">\n";
    out += "<style>\n"
           ".outline{fill:none;stroke:#000;stroke-width:0.35}\n"
           ".center{fill:none;stroke:#666;stroke-width:0.25;stroke-dasharray:4 2}\n"
           ".cut{fill:none;stroke:#c00;stroke-width:0.35}\n"
           "</style>\n";

    for (size_t r = 0; r < ribbons.size(); ++r) {
        const PlanarRibbon& p = ribbons[r];
        const int n = static_cast<int>(p.center.pos.size());
        // y grows upward in the model; SVG y grows downward
        auto X = [&](const Vec2& q) { return mm(q.x() + off_x[r], unit_mm); };
        auto Y = [&](const Vec2& q) { return mm(boxes[r].y1 - q.y() + margin, unit_mm); };

        out += "<g id=\"" + sanitize(p.name) + "\">\n";

        std::string d;
        for (int i = 0; i < n; ++i) {
            const Vec2 q = p.rule_point(i, p.w_plus[i]);
            d += (i == 0 ? "M" : " L") + std::string(" ") + X(q) + " " + Y(q);
        }
        for (int i = n - 1; i >= 0; --i) {
            const Vec2 q = p.rule_point(i, p.w_minus[i]);
            d += " L " + X(q) + " " + Y(q);
        }
        d += " Z";
        out += "<path class=\"outline\" d=\"" + d + "\"/>\n";

        std::string c;
        for (int i = 0; i < n; ++i)
            c += (i == 0 ? "M" : " L") + std::string(" ") + X(p.center.pos[i]) + " " +
                 Y(p.center.pos[i]);
        out += "<path class=\"center\" d=\"" + c + "\"/>\n";

        if (p.cut && n > 0) {
            for (int i : {0, n - 1}) {
                const Vec2 a = p.rule_point(i, p.w_minus[i]);
                const Vec2 b = p.rule_point(i, p.w_plus[i]);
                out += "<path class=\"cut\" d=\"M " + X(a) + " " + Y(a) + " L " + X(b) + " " +
                       Y(b) + "\"/>\n";
            }
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

void export_flat_patterns(const std::vector<PlanarRibbon>& ribbons, const std::string& path,
                          double unit_mm) {
    write_text_file(path, svg_text(ribbons, unit_mm));
}

std::string curvature_csv(const std::vector<std::vector<DarbouxSample>>& curves,
                          const std::vector<std::string>& names) {
    std::string out = "curve,t,kappa_g,kappa_n,tau_g,speed\n";
    for (size_t c = 0; c < curves.size(); ++c) {
        const std::string& name = c < names.size() ? names[c] : std::to_string(c);
        for (const DarbouxSample& d : curves[c]) {
            out += name + "," + format_double(d.t) + "," + format_double(d.kappa_g) + "," +
                   format_double(d.kappa_n) + "," + format_double(d.tau_g) + "," +
                   format_double(d.speed) + "\n";
        }
    }
    return out;
}

std::string widths_csv(const Ribbonization& rz) {
    std::string out = "ribbon,t,w_minus,w_plus\n";
    for (const Ribbon& r : rz.ribbons) {
        for (const RibbonSample& s : r.samples) {
            out += r.name + "," + format_double(s.t) + "," + format_double(s.w_minus) + "," +
                   format_double(s.w_plus) + "\n";
        }
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) throw IoError(path, "cannot create directory: " + ec.message());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError(path, "cannot open for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError(path, "write failed");
}

}  // namespace cartan
