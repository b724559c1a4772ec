// Command-line front end: steady-state solves, crack-population runs,
// refinement studies, and mesh preparation on tetrahedral complexes.
//
// Subcommands: solve, crack, convergence, prep. Options may come from a JSON
// config file (--config), with command-line flags overriding individual
// entries; the effective configuration is echoed into the output directory
// so a run can be reproduced from its artifacts alone.
//
// Exit codes: 0 success, 2 configuration/usage error, 3 mesh error,
// 4 solver error (including non-convergence).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tetdec/assembly.hpp"
#include "tetdec/complex.hpp"
#include "tetdec/crack_sim.hpp"
#include "tetdec/csv_io.hpp"
#include "tetdec/errors.hpp"
#include "tetdec/geometry.hpp"
#include "tetdec/mesh.hpp"
#include "tetdec/obj_io.hpp"
#include "tetdec/parallel.hpp"
#include "tetdec/partition.hpp"
#include "tetdec/solver.hpp"
#include "tetdec/tetgen_io.hpp"
#include "tetdec/verification.hpp"
#include "tetdec/vtk_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    // Mesh source: exactly one of the two.
    std::string mesh_prefix;
    int cube_n = 0;

    double kappa = 1.0;
    double limiter = 1e-8;
    int ranks = 1;

    // Hot/cold unit-cube experiment markers (used unless explicit boundary
    // assignments are given).
    int hot_marker = 5;
    int cold_marker = 6;
    std::vector<int> insulated = {1, 2, 3, 4};
    std::vector<std::string> dirichlet; // "marker=value"
    std::vector<std::string> neumann;   // "marker=value"

    double rtol = 1e-10;
    double atol = 1e-10;
    int max_iters = 10000;
    int restart = 30;
    std::string precond = "jacobi";
    int schur_inner = 0;

    // Crack-run parameters.
    std::string mode = "deterministic"; // deterministic | stochastic | monte-carlo
    int paths = 1;
    std::uint64_t seed = 1;
    double kappa_stop = -1.0;
    int max_steps = -1;
    std::string select_by = "density"; // density | flux

    // Convergence levels (cube subdivisions and/or mesh prefixes, in order).
    std::vector<int> level_cubes;
    std::vector<std::string> level_meshes;

    std::string out_dir;
};

std::string default_out_dir() {
    const char* env = std::getenv("TETDEC_OUT");
    return env && *env ? env : "tetdec_out";
}

// ---------------------------------------------------------------------------
// Config file handling. The JSON keys mirror the long option names; unknown
// keys are rejected so typos cannot silently fall back to defaults.

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw tetdec::ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw tetdec::ConfigError("config file " + path + ": " + e.what());
    }
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "command") continue; // informational echo only
            else if (key == "mesh") cfg.mesh_prefix = value.get<std::string>();
            else if (key == "cube_n") cfg.cube_n = value.get<int>();
            else if (key == "kappa") cfg.kappa = value.get<double>();
            else if (key == "limiter") cfg.limiter = value.get<double>();
            else if (key == "ranks") cfg.ranks = value.get<int>();
            else if (key == "hot_marker") cfg.hot_marker = value.get<int>();
            else if (key == "cold_marker") cfg.cold_marker = value.get<int>();
            else if (key == "insulated") cfg.insulated = value.get<std::vector<int>>();
            else if (key == "dirichlet") cfg.dirichlet = value.get<std::vector<std::string>>();
            else if (key == "neumann") cfg.neumann = value.get<std::vector<std::string>>();
            else if (key == "rtol") cfg.rtol = value.get<double>();
            else if (key == "atol") cfg.atol = value.get<double>();
            else if (key == "max_iters") cfg.max_iters = value.get<int>();
            else if (key == "restart") cfg.restart = value.get<int>();
            else if (key == "precond") cfg.precond = value.get<std::string>();
            else if (key == "schur_inner") cfg.schur_inner = value.get<int>();
            else if (key == "mode") cfg.mode = value.get<std::string>();
            else if (key == "paths") cfg.paths = value.get<int>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "kappa_stop") cfg.kappa_stop = value.get<double>();
            else if (key == "max_steps") cfg.max_steps = value.get<int>();
            else if (key == "select_by") cfg.select_by = value.get<std::string>();
            else if (key == "level_cubes") cfg.level_cubes = value.get<std::vector<int>>();
            else if (key == "level_meshes")
                cfg.level_meshes = value.get<std::vector<std::string>>();
            else if (key == "out") cfg.out_dir = value.get<std::string>();
            else throw tetdec::ConfigError("unknown config key: " + key);
        }
    } catch (const json::exception& e) {
        throw tetdec::ConfigError("config file " + path + ": " + e.what());
    }
}

json config_to_json(const RunConfig& cfg, const std::string& command) {
    json j;
    j["command"] = command;
    j["mesh"] = cfg.mesh_prefix;
    j["cube_n"] = cfg.cube_n;
    j["kappa"] = cfg.kappa;
    j["limiter"] = cfg.limiter;
    j["ranks"] = cfg.ranks;
    j["hot_marker"] = cfg.hot_marker;
    j["cold_marker"] = cfg.cold_marker;
    j["insulated"] = cfg.insulated;
    j["dirichlet"] = cfg.dirichlet;
    j["neumann"] = cfg.neumann;
    j["rtol"] = cfg.rtol;
    j["atol"] = cfg.atol;
    j["max_iters"] = cfg.max_iters;
    j["restart"] = cfg.restart;
    j["precond"] = cfg.precond;
    j["schur_inner"] = cfg.schur_inner;
    j["mode"] = cfg.mode;
    j["paths"] = cfg.paths;
    j["seed"] = cfg.seed;
    j["kappa_stop"] = cfg.kappa_stop;
    j["max_steps"] = cfg.max_steps;
    j["select_by"] = cfg.select_by;
    j["level_cubes"] = cfg.level_cubes;
    j["level_meshes"] = cfg.level_meshes;
    j["out"] = cfg.out_dir;
    return j;
}

void echo_effective_config(const RunConfig& cfg, const std::string& command) {
    const fs::path path = fs::path(cfg.out_dir) / "config_effective.json";
    std::ofstream out(path);
    if (!out) throw tetdec::MeshError("cannot write " + path.string());
    out << config_to_json(cfg, command).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Shared plumbing.

tetdec::SolverConfig solver_config(const RunConfig& cfg) {
    tetdec::SolverConfig sc;
    sc.rtol = cfg.rtol;
    sc.atol = cfg.atol;
    sc.max_iters = cfg.max_iters;
    sc.restart = cfg.restart;
    sc.schur_precond = tetdec::schur_precond_from_string(cfg.precond);
    sc.schur_inner = cfg.schur_inner;
    return sc;
}

tetdec::RawMesh load_mesh(const RunConfig& cfg) {
    const bool has_file = !cfg.mesh_prefix.empty();
    const bool has_cube = cfg.cube_n > 0;
    if (has_file == has_cube)
        throw tetdec::ConfigError("exactly one mesh source required (--mesh or --cube-n)");
    if (has_cube) return tetdec::generate_cube(cfg.cube_n);
    const std::string edge = cfg.mesh_prefix + ".edge";
    return tetdec::parse_tetgen(cfg.mesh_prefix + ".node", cfg.mesh_prefix + ".ele",
                                cfg.mesh_prefix + ".face",
                                fs::exists(edge) ? edge : std::string());
}

std::pair<int, double> parse_marker_value(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw tetdec::ConfigError("expected marker=value, got: " + text);
    try {
        return {std::stoi(text.substr(0, eq)), std::stod(text.substr(eq + 1))};
    } catch (const std::exception&) {
        throw tetdec::ConfigError("expected marker=value, got: " + text);
    }
}

tetdec::ExperimentConfig experiment_config(const RunConfig& cfg) {
    tetdec::ExperimentConfig ec;
    ec.hot_marker = cfg.hot_marker;
    ec.cold_marker = cfg.cold_marker;
    ec.insulated_markers = cfg.insulated;
    ec.kappa = cfg.kappa;
    ec.kappa_stop = cfg.kappa_stop;
    ec.solver = solver_config(cfg);
    if (cfg.select_by == "density") ec.select_by_density = true;
    else if (cfg.select_by == "flux") ec.select_by_density = false;
    else throw tetdec::ConfigError("select_by must be 'density' or 'flux'");
    ec.max_steps = cfg.max_steps;
    return ec;
}

// Boundary table plus the marker whose total flux is reported: explicit
// assignments if any were given, the hot/cold experiment otherwise.
std::pair<tetdec::BoundaryTable, int> boundary_setup(const RunConfig& cfg) {
    if (cfg.dirichlet.empty() && cfg.neumann.empty()) {
        tetdec::ExperimentConfig ec = experiment_config(cfg);
        return {ec.boundary_table(), ec.hot_marker};
    }
    tetdec::BoundaryTable table;
    int report_marker = -1;
    for (const std::string& text : cfg.dirichlet) {
        const auto [marker, value] = parse_marker_value(text);
        table[marker] = {tetdec::BoundaryKind::Dirichlet, value};
        if (report_marker < 0) report_marker = marker;
    }
    for (const std::string& text : cfg.neumann) {
        const auto [marker, value] = parse_marker_value(text);
        if (table.count(marker))
            throw tetdec::ConfigError("marker assigned twice: " + std::to_string(marker));
        table[marker] = {tetdec::BoundaryKind::Neumann, value};
    }
    if (report_marker < 0)
        throw tetdec::ConfigError("at least one Dirichlet marker is required");
    return {table, report_marker};
}

void write_residual_log(const tetdec::Solution& sol, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw tetdec::MeshError("cannot write " + path.string());
    char line[64];
    for (double r : sol.residual_history) {
        std::snprintf(line, sizeof line, "%.17g\n", r);
        out << line;
    }
}

void write_text(const std::string& text, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw tetdec::MeshError("cannot write " + path.string());
    out << text;
}

// ---------------------------------------------------------------------------
// solve: assemble, apply boundary conditions, solve, report.

int cmd_solve(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    echo_effective_config(cfg, "solve");

    const tetdec::RawMesh mesh = load_mesh(cfg);
    const tetdec::SimplicialComplex cx = tetdec::build_complex(mesh);
    const tetdec::DualGeometry geom = tetdec::compute_geometry(cx, cfg.limiter);
    const auto [table, report_marker] = boundary_setup(cfg);
    const tetdec::Conductivity cond =
        tetdec::Conductivity::uniform(cx.cell_count(2), cfg.kappa);

    const tetdec::Solution sol =
        tetdec::solve_partitioned(cx, geom, cond, table, solver_config(cfg), cfg.ranks);

    const double kappa_e = tetdec::effective_conductivity(sol, cx, report_marker);
    std::printf("unknowns: %d\n", int(cx.cell_count(2) + cx.cell_count(3)));
    std::printf("iterations: %d\n", sol.iterations);
    std::printf("residual: %.6g\n", sol.residual_norm);
    std::printf("kappa_e = %.12g\n", kappa_e);
    if (!sol.converged)
        std::fprintf(stderr, "solver did not converge: %s\n", sol.diagnostics.c_str());

    tetdec::write_vtk(cx, geom, sol, (fs::path(cfg.out_dir) / "solution.vtk").string());
    write_residual_log(sol, fs::path(cfg.out_dir) / "residuals.txt");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g\n", kappa_e);
    write_text(buf, fs::path(cfg.out_dir) / "kappa_e.txt");
    return sol.converged ? 0 : 4;
}

// ---------------------------------------------------------------------------
// crack: deterministic / stochastic / Monte Carlo crack-population runs.

int cmd_crack(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    echo_effective_config(cfg, "crack");

    const tetdec::RawMesh mesh = load_mesh(cfg);
    const tetdec::SimplicialComplex cx = tetdec::build_complex(mesh);
    const tetdec::DualGeometry geom = tetdec::compute_geometry(cx, cfg.limiter);
    const tetdec::ExperimentConfig ec = experiment_config(cfg);

    if (cfg.mode == "monte-carlo") {
        if (cfg.paths < 1) throw tetdec::ConfigError("paths must be >= 1");
        const std::vector<tetdec::CrackState> paths =
            tetdec::run_monte_carlo(cx, geom, ec, cfg.paths, cfg.seed);
        tetdec::write_csv_monte_carlo(paths,
                                      (fs::path(cfg.out_dir) / "paths.csv").string());
        int failed = 0;
        for (const tetdec::CrackState& s : paths) {
            if (!s.completed) {
                ++failed;
                std::fprintf(stderr, "path seed %llu aborted: %s\n",
                             static_cast<unsigned long long>(s.rng_seed), s.note.c_str());
            }
        }
        std::printf("paths: %d completed, %d failed\n", cfg.paths - failed, failed);
        return failed == 0 ? 0 : 4;
    }

    tetdec::CrackState state;
    if (cfg.mode == "deterministic") state = tetdec::run_deterministic(cx, geom, ec);
    else if (cfg.mode == "stochastic") state = tetdec::run_stochastic(cx, geom, ec, cfg.seed);
    else throw tetdec::ConfigError("mode must be deterministic, stochastic, or monte-carlo");

    tetdec::write_csv_history(state, (fs::path(cfg.out_dir) / "history.csv").string());
    std::printf("cracks: %zu of %d interior faces (terminal damage %.6g)\n",
                state.cracked.size(), state.n_interior_faces, state.terminal_damage());
    if (!state.kappa_e_history.empty())
        std::printf("kappa_e: %.12g -> %.12g\n", state.kappa_e_history.front(),
                    state.kappa_e_history.back());
    if (!state.note.empty()) std::printf("note: %s\n", state.note.c_str());

    // Terminal-state snapshot, re-rendered from the recorded crack sequence.
    const tetdec::Solution snap = tetdec::solve_with_cracks(cx, geom, ec, state.cracked);
    tetdec::write_vtk(cx, geom, snap, (fs::path(cfg.out_dir) / "crack_final.vtk").string());
    return state.completed ? 0 : 4;
}

// ---------------------------------------------------------------------------
// convergence: refinement study against the affine exact solution of the
// hot/cold experiment.

int cmd_convergence(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    echo_effective_config(cfg, "convergence");

    const int hot_axis = (cfg.hot_marker - 1) / 2, hot_side = (cfg.hot_marker - 1) % 2;
    const int cold_axis = (cfg.cold_marker - 1) / 2, cold_side = (cfg.cold_marker - 1) % 2;
    if (cfg.hot_marker < 1 || cfg.hot_marker > 6 || cfg.cold_marker < 1 ||
        cfg.cold_marker > 6 || hot_axis != cold_axis || hot_side == cold_side)
        throw tetdec::ConfigError(
            "convergence needs hot and cold markers on opposite cube faces");
    // Affine exact temperature: 1 on the hot plane, 0 on the cold plane.
    tetdec::AffineField exact;
    exact.gradient[hot_axis] = hot_side == 0 ? -1.0 : 1.0;
    exact.offset = hot_side == 0 ? 1.0 : 0.0;

    struct Level {
        std::string label;
        tetdec::RawMesh mesh;
    };
    std::vector<Level> levels;
    for (int n : cfg.level_cubes) levels.push_back({"cube:" + std::to_string(n),
                                                    tetdec::generate_cube(n)});
    for (const std::string& prefix : cfg.level_meshes) {
        RunConfig one = cfg;
        one.mesh_prefix = prefix;
        one.cube_n = 0;
        levels.push_back({prefix, load_mesh(one)});
    }
    if (levels.empty())
        throw tetdec::ConfigError("convergence needs at least one level "
                                  "(--level-cube or --level-mesh)");

    const auto [table, report_marker] = boundary_setup(cfg);
    std::vector<tetdec::ConvergenceRow> rows;
    bool aborted = false;
    std::printf("%-16s %14s %14s %10s\n", "level", "max_tet_vol", "rms_error", "limited");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const tetdec::SimplicialComplex cx = tetdec::build_complex(levels[i].mesh);
        const tetdec::DualGeometry geom = tetdec::compute_geometry(cx, cfg.limiter);
        tetdec::SaddleSystem sys = tetdec::assemble(
            cx, geom, tetdec::Conductivity::uniform(cx.cell_count(2), cfg.kappa));
        tetdec::apply_boundary(sys, cx, table);
        const tetdec::Solution sol = tetdec::solve(sys, solver_config(cfg));
        if (!sol.converged) {
            std::fprintf(stderr, "level %s did not converge: %s\n", levels[i].label.c_str(),
                         sol.diagnostics.c_str());
            aborted = true;
            break;
        }
        tetdec::ConvergenceRow row;
        row.level = int(i);
        row.max_tet_volume = tetdec::max_tet_volume(geom);
        row.rms_error = tetdec::rms_error(cx, geom, sol.alpha, exact);
        row.limited_fraction = geom.limited_fraction();
        rows.push_back(row);
        std::printf("%-16s %14.6e %14.6e %9.4f%%\n", levels[i].label.c_str(),
                    row.max_tet_volume, row.rms_error, 100.0 * row.limited_fraction);
    }
    tetdec::write_csv_convergence(rows, (fs::path(cfg.out_dir) / "convergence.csv").string());
    return aborted ? 4 : 0;
}

// ---------------------------------------------------------------------------
// prep: sort a mesh for contiguous block partitions, report the partition,
// optionally export primal/dual surfaces.

int cmd_prep(const RunConfig& cfg, const std::string& obj_primal,
             const std::string& obj_dual) {
    fs::create_directories(cfg.out_dir);
    echo_effective_config(cfg, "prep");

    const tetdec::RawMesh mesh = load_mesh(cfg);
    const tetdec::RawMesh sorted = tetdec::sort_mesh(mesh);
    const std::string prefix = (fs::path(cfg.out_dir) / "sorted").string();
    tetdec::write_tetgen(sorted, prefix);
    std::printf("sorted mesh written to %s.{node,ele,face}\n", prefix.c_str());

    if (cfg.ranks > 0) {
        const tetdec::PartitionPlan plan =
            tetdec::block_partition(int(sorted.nodes.size()), cfg.ranks);
        std::fputs(tetdec::partition_report(plan).c_str(), stdout);
    }
    if (!obj_primal.empty() || !obj_dual.empty()) {
        const tetdec::SimplicialComplex cx = tetdec::build_complex(sorted);
        const tetdec::DualGeometry geom = tetdec::compute_geometry(cx, cfg.limiter);
        if (!obj_primal.empty())
            tetdec::write_obj(cx, geom, tetdec::ObjSurface::Primal, obj_primal);
        if (!obj_dual.empty())
            tetdec::write_obj(cx, geom, tetdec::ObjSurface::Dual, obj_dual);
    }
    return 0;
}

// ---------------------------------------------------------------------------

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags override)");
    cmd->add_option("--mesh", cfg.mesh_prefix, "TetGen file prefix (.node/.ele/.face)");
    cmd->add_option("--cube-n", cfg.cube_n, "built-in structured cube with n^3 cells");
    cmd->add_option("--kappa", cfg.kappa, "uniform conductivity");
    cmd->add_option("--limiter", cfg.limiter, "lower clamp for dual edge lengths");
    cmd->add_option("--hot", cfg.hot_marker, "hot-side marker (temperature 1)");
    cmd->add_option("--cold", cfg.cold_marker, "cold-side marker (temperature 0)");
    cmd->add_option("--insulated", cfg.insulated, "insulated markers")->delimiter(',');
    cmd->add_option("--rtol", cfg.rtol, "relative solver tolerance");
    cmd->add_option("--atol", cfg.atol, "absolute solver tolerance");
    cmd->add_option("--max-iters", cfg.max_iters, "Krylov iteration cap");
    cmd->add_option("--restart", cfg.restart, "restart length");
    cmd->add_option("--precond", cfg.precond,
                    "Schur preconditioner: jacobi | incomplete-cholesky | "
                    "sparse-approximate-inverse");
    cmd->add_option("--schur-inner", cfg.schur_inner,
                    "inner CG steps refining the Schur block");
    cmd->add_option("--out", cfg.out_dir, "output directory");
}

// The config file is located by scanning the raw arguments before CLI11
// runs, so its values act as defaults and explicitly passed flags win.
std::string find_config_argument(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return "";
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    cfg.out_dir = default_out_dir();
    std::string config_path;
    std::string obj_primal, obj_dual;

    CLI::App app{"discrete exterior calculus toolkit for steady heat conduction\n"
                 "on tetrahedral meshes with circumcentric duals"};
    app.require_subcommand(1);

    try {
        const std::string pre = find_config_argument(argc, argv);
        if (!pre.empty()) load_config_file(pre, cfg);
    } catch (const tetdec::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    CLI::App* solve = app.add_subcommand("solve", "assemble and solve one problem");
    add_common_options(solve, cfg, config_path);
    solve->add_option("--ranks", cfg.ranks, "partitioned solve across this many ranks");
    solve->add_option("--dirichlet", cfg.dirichlet, "marker=value temperature assignment")
        ->take_all();
    solve->add_option("--neumann", cfg.neumann, "marker=value flux assignment")->take_all();

    CLI::App* crack = app.add_subcommand("crack", "crack-population simulation");
    add_common_options(crack, cfg, config_path);
    crack->add_option("--mode", cfg.mode, "deterministic | stochastic | monte-carlo");
    crack->add_option("--paths", cfg.paths, "Monte Carlo path count");
    crack->add_option("--seed", cfg.seed, "RNG seed (stochastic) or base seed (Monte Carlo)");
    crack->add_option("--kappa-stop", cfg.kappa_stop,
                      "stop threshold (< 0 selects 1e-6 * kappa)");
    crack->add_option("--max-steps", cfg.max_steps, "crack count cap, -1 = unlimited");
    crack->add_option("--select-by", cfg.select_by, "crack ranking: density | flux");

    CLI::App* conv = app.add_subcommand("convergence", "refinement study (RMS error table)");
    add_common_options(conv, cfg, config_path);
    conv->add_option("--level-cube", cfg.level_cubes, "cube subdivision level")->take_all();
    conv->add_option("--level-mesh", cfg.level_meshes, "TetGen prefix level")->take_all();

    CLI::App* prep = app.add_subcommand("prep", "sort mesh, report partition, export OBJ");
    add_common_options(prep, cfg, config_path);
    prep->add_option("--ranks", cfg.ranks, "rank count for the partition report");
    prep->add_option("--obj-primal", obj_primal, "write the primal surface as OBJ");
    prep->add_option("--obj-dual", obj_dual, "write the dual 1-skeleton faces as OBJ");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return cmd_solve(cfg);
        if (crack->parsed()) return cmd_crack(cfg);
        if (conv->parsed()) return cmd_convergence(cfg);
        if (prep->parsed()) return cmd_prep(cfg, obj_primal, obj_dual);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const tetdec::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const tetdec::MeshError& e) {
        std::fprintf(stderr, "mesh error: %s\n", e.what());
        return 3;
    } catch (const tetdec::SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 4;
    }
}
