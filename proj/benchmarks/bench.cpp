// Microbenchmarks for the hot paths: frame sampling, development, strip
// construction, lattice queries, and the width solve.
#include <benchmark/benchmark.h>

#include <memory>

#include "cartan/assembly.hpp"
#include "cartan/curve.hpp"
#include "cartan/development.hpp"
#include "cartan/lattice.hpp"
#include "cartan/numerics.hpp"
#include "cartan/ribbon.hpp"
#include "cartan/surface.hpp"

namespace {

using namespace cartan;

std::shared_ptr<const ParametricSurface> torus() {
    static auto s = std::make_shared<const ParametricSurface>(builtin_surface("torus", {2, 1}));
    return s;
}

void bm_darboux_sampling(benchmark::State& state) {
    const auto c = make_torus_unknot(torus(), 3, 1);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sample_curve(c, n));
    state.SetItemsProcessed(state.iterations() * (n + 1));
}
BENCHMARK(bm_darboux_sampling)->Arg(256)->Arg(2048);

void bm_development(benchmark::State& state) {
    const auto c = make_torus_unknot(torus(), 3, 1);
    const auto samples = sample_curve(c, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(develop_curve(samples, true));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(samples.size()));
}
BENCHMARK(bm_development)->Arg(256)->Arg(2048);

void bm_ribbon_build(benchmark::State& state) {
    const auto c = make_torus_unknot(torus(), 3, 1);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_ribbon(c, n, 1.6));
    state.SetItemsProcessed(state.iterations() * (n + 1));
}
BENCHMARK(bm_ribbon_build)->Arg(256)->Arg(2048);

void bm_lattice_closest(benchmark::State& state) {
    const auto c = make_torus_unknot(torus(), 3, 1);
    const Ribbon r = build_ribbon(c, 1024, 1.6);
    const QuadLattice l = QuadLattice::from_ribbon(r, 17);
    const double radius = 10 * l.max_cell_diag();
    int i = 0;
    for (auto _ : state) {
        const Vec3 x = r.rule_point(i % r.count(), 0.3) + 0.05 * r.samples[i % r.count()].normal;
        benchmark::DoNotOptimize(l.closest(x, radius));
        ++i;
    }
}
BENCHMARK(bm_lattice_closest);

void bm_solve_widths(benchmark::State& state) {
    const auto c1 = make_torus_unknot(torus(), 3, 1);
    const auto c2 = make_torus_unknot(torus(), 3, 1, pi / 3);
    const int n = static_cast<int>(state.range(0));
    const Ribbon a = build_ribbon(c1, n, 1.6);
    const Ribbon b = build_ribbon(c2, n, 1.6);
    const QuadLattice la = QuadLattice::from_ribbon(a, 17);
    const QuadLattice lb = QuadLattice::from_ribbon(b, 17);
    const Tolerances tol;
    for (auto _ : state) benchmark::DoNotOptimize(solve_widths(a, la, 0, b, lb, 1, false, tol));
}
BENCHMARK(bm_solve_widths)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
