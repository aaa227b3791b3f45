// Command-line driver: approximate a surface by developable ribbons along the
// configured center curves, develop them into the plane, and inspect the
// topology of the result.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cartan/errors.hpp"
#include "cartan/pipeline.hpp"
#include "cartan/scene.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw cartan::IoError(path, "cannot open for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct VerbOptions {
    std::string scene_path;
    std::string out_dir = ".";
    int samples = 0;       // 0 = keep the scene's value
    unsigned seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, VerbOptions& opt) {
    cmd->add_option("scene", opt.scene_path, "scene configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out-dir", opt.out_dir, "directory for requested artifacts");
    cmd->add_option("--samples", opt.samples, "override the scene's per-curve sample count");
    cmd->add_option("--seed", opt.seed, "seed echoed into the run (randomized tests only)")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
}

int run_verb(const std::string& verb, const VerbOptions& opt) {
    cartan::SceneConfig cfg = cartan::parse_scene(read_file(opt.scene_path));
    if (opt.samples > 0) cfg.samples = opt.samples;
    if (opt.seed_set) cfg.seed = opt.seed;

    const cartan::RunReport rep =
        cartan::run_pipeline(cfg, opt.out_dir, cartan::run_mode_from_verb(verb));
    std::fputs(rep.text().c_str(), stdout);
    return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"developable ribbon approximation of parametric surfaces"};
    app.require_subcommand(1);

    VerbOptions opt;
    const char* verbs[][2] = {
        {"ribbonize", "build, trim, and export the full ribbonization"},
        {"develop", "build ribbons and their flat patterns (no trimming)"},
        {"inspect", "trim and report wedge topology: vertices, Euler number, audit"},
        {"curvature", "write Darboux invariant traces for the scene's curves"},
    };
    for (auto& v : verbs) add_common(app.add_subcommand(v[0], v[1]), opt);

    CLI11_PARSE(app, argc, argv);

    try {
        return run_verb(app.get_subcommands().front()->get_name(), opt);
    } catch (const cartan::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
