#pragma once

#include <string>
#include <vector>

#include "cartan/assembly.hpp"
#include "cartan/curve.hpp"
#include "cartan/development.hpp"
#include "cartan/ribbon.hpp"
#include "cartan/scene.hpp"
#include "cartan/topology.hpp"

namespace cartan {

// What a run computes (and therefore which artifacts it can write):
//   Curvature  surface, curves, invariant traces
//   Develop    + ribbons and their flat patterns (untrimmed)
//   Inspect    + mutual trimming, wedge graph, Euler/audit (no mesh/patterns)
//   Ribbonize  everything
enum class RunMode { Ribbonize, Develop, Inspect, Curvature };

RunMode run_mode_from_verb(const std::string& verb);  // BadParams on unknown verb

struct StageResult {
    std::string name;
    double ms = 0;
    bool ok = true;
    std::string error;
};

struct RunReport {
    SceneConfig cfg;  // effective configuration (defaults filled)
    RunMode mode = RunMode::Ribbonize;
    std::vector<StageResult> stages;
    std::vector<std::string> log;  // notes and written artifacts

    std::vector<std::vector<DarbouxSample>> curve_samples;
    std::vector<PlanarCurve> developments;
    std::vector<PlanarRibbon> patterns;
    Ribbonization rz;
    WedgeGraph graph;
    AuditReport audit;
    bool has_assembly = false;
    bool has_topology = false;
    bool ok = true;

    std::string text() const;  // plain-text run report
};

// Runs the staged pipeline, writing the artifacts requested by cfg.outputs
// (paths resolved against out_dir unless absolute).  Stage failures are
// recorded and skip dependent stages; `ok` is false iff any stage errored.
RunReport run_pipeline(const SceneConfig& cfg, const std::string& out_dir = ".",
                       RunMode mode = RunMode::Ribbonize);

}  // namespace cartan
