#pragma once

#include <string>
#include <vector>

#include "cartan/assembly.hpp"
#include "cartan/curve.hpp"
#include "cartan/development.hpp"
#include "cartan/ribbon.hpp"

namespace cartan {

// Wavefront OBJ: one object per ribbon holding its lattice as quads, then the
// wedge polylines as `l` elements.  Vertices are written with 9 significant
// digits in a fixed order (ribbon, then ruling row, then width column), so a
// re-export of the same scene is byte-identical.
std::string obj_text(const Ribbonization& rz);
void export_mesh(const Ribbonization& rz, const std::string& path);

// Flat patterns as one SVG document: a group per developed strip (laid out in
// a row), closed outline, dashed center curve, cut rulings stroked
// separately.  Coordinates in millimeters; 1 model unit = unit_mm (10 by
// default).
std::string svg_text(const std::vector<PlanarRibbon>& ribbons, double unit_mm = 10.0);
void export_flat_patterns(const std::vector<PlanarRibbon>& ribbons, const std::string& path,
                          double unit_mm = 10.0);

// Scalar traces: one row per sample.
std::string curvature_csv(const std::vector<std::vector<DarbouxSample>>& curves,
                          const std::vector<std::string>& names);
std::string widths_csv(const Ribbonization& rz);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace cartan
