// Microbenchmarks for the hot paths: complex construction, dual geometry,
// assembly, saddle matvec, face elimination, and the full solve.

#include <map>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "tetdec/assembly.hpp"
#include "tetdec/complex.hpp"
#include "tetdec/crack_sim.hpp"
#include "tetdec/geometry.hpp"
#include "tetdec/mesh.hpp"
#include "tetdec/solver.hpp"

using namespace tetdec;

namespace {

const RawMesh& cube_mesh(int n) {
    static std::map<int, RawMesh> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, generate_cube(n)).first;
    return it->second;
}

struct Problem {
    SimplicialComplex cx;
    DualGeometry geom;
    SaddleSystem sys;
};

const Problem& cube_problem(int n) {
    static std::map<int, Problem> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        Problem p;
        p.cx = build_complex(cube_mesh(n));
        p.geom = compute_geometry(p.cx);
        p.sys = assemble(p.cx, p.geom, Conductivity::uniform(p.cx.cell_count(2), 1.0));
        apply_boundary(p.sys, p.cx, ExperimentConfig{}.boundary_table());
        it = cache.emplace(n, std::move(p)).first;
    }
    return it->second;
}

} // namespace

static void BM_BuildComplex(benchmark::State& state) {
    const RawMesh& mesh = cube_mesh(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_complex(mesh));
}
BENCHMARK(BM_BuildComplex)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ComputeGeometry(benchmark::State& state) {
    const SimplicialComplex cx = build_complex(cube_mesh(int(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(compute_geometry(cx));
}
BENCHMARK(BM_ComputeGeometry)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Assemble(benchmark::State& state) {
    const SimplicialComplex cx = build_complex(cube_mesh(int(state.range(0))));
    const DualGeometry geom = compute_geometry(cx);
    const Conductivity cond = Conductivity::uniform(cx.cell_count(2), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(cx, geom, cond));
}
BENCHMARK(BM_Assemble)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SaddleMatvec(benchmark::State& state) {
    const Problem& p = cube_problem(int(state.range(0)));
    const Eigen::VectorXd x = Eigen::VectorXd::Random(p.sys.unknowns());
    for (auto _ : state) benchmark::DoNotOptimize(p.sys.multiply(x));
}
BENCHMARK(BM_SaddleMatvec)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_EliminateUndo(benchmark::State& state) {
    Problem p = cube_problem(int(state.range(0)));
    const std::vector<int> interior = non_boundary_faces(p.cx);
    std::size_t i = 0;
    for (auto _ : state) {
        eliminate_face(p.sys, interior[i++ % interior.size()], 0.0);
        undo_last_elimination(p.sys);
    }
}
BENCHMARK(BM_EliminateUndo)->Arg(8)->Unit(benchmark::kNanosecond);

static void BM_Solve(benchmark::State& state) {
    const Problem& p = cube_problem(int(state.range(0)));
    SolverConfig config;
    config.rtol = 1e-8;
    for (auto _ : state) benchmark::DoNotOptimize(solve(p.sys, config));
}
BENCHMARK(BM_Solve)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
