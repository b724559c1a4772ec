#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "oracles.hpp"
#include "temp_path.hpp"

namespace fs = std::filesystem;
using tetdec::testing::parse_csv;
using tetdec::testing::parse_obj;
using tetdec::testing::parse_vtk;
using tetdec::testing::read_file;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

std::string binary_path() {
    const char* bin = std::getenv("TETDEC_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "TETDEC_BIN must point at the tetdec executable");
    return bin;
}

RunResult run_cli(const std::string& args) {
    const std::string command = binary_path() + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
        result.output.append(buffer, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

double stdout_kappa(const std::string& output) {
    const std::string needle = "kappa_e = ";
    const std::size_t at = output.find(needle);
    REQUIRE(at != std::string::npos);
    return std::stod(output.substr(at + needle.size()));
}

double file_scalar(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    double value = 0.0;
    in >> value;
    return value;
}

bool column_non_increasing(const std::vector<std::vector<double>>& rows, std::size_t col,
                           double slack) {
    for (std::size_t k = 1; k < rows.size(); ++k)
        if (rows[k][col] > rows[k - 1][col] + slack) return false;
    return true;
}

} // namespace

TEST_CASE("solve: unit cube writes the full artifact set") {
    tetdec_test::TempDir dir("cli_solve");
    const RunResult run =
        run_cli("solve --cube-n 2 --rtol 1e-11 --out " + dir.path.string());
    CAPTURE(run.output);
    REQUIRE(run.exit_code == 0);

    const double kappa_printed = stdout_kappa(run.output);
    CHECK(kappa_printed == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(file_scalar(dir.path / "kappa_e.txt") ==
          doctest::Approx(kappa_printed).epsilon(1e-12));

    const auto vtk = parse_vtk((dir.path / "solution.vtk").string());
    CHECK(vtk.points.size() == 27);
    CHECK(vtk.cells.size() == 48);
    CHECK(vtk.temperature.size() == 48);
    CHECK(vtk.flux.size() == 48);

    CHECK(fs::file_size(dir.path / "residuals.txt") > 0);
    CHECK(fs::file_size(dir.path / "config_effective.json") > 0);
}

TEST_CASE("exit codes distinguish usage, mesh, and configuration failures") {
    tetdec_test::TempDir dir("cli_exit");
    CHECK(run_cli("solve --cube-n 2 --bogus-flag --out " + dir.path.string()).exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("solve --mesh /no/such/prefix --out " + dir.path.string()).exit_code == 3);
    CHECK(run_cli("solve --out " + dir.path.string()).exit_code == 2); // no mesh source
    CHECK(run_cli("crack --cube-n 2 --mode monte-carlo --paths 0 --out " +
                  dir.path.string())
              .exit_code == 2);
    CHECK(run_cli("crack --cube-n 2 --mode nonsense --out " + dir.path.string()).exit_code ==
          2);
}

TEST_CASE("partitioned and serial solves print matching conductivities") {
    tetdec_test::TempDir serial("cli_serial"), ranks("cli_ranks");
    const RunResult a =
        run_cli("solve --cube-n 2 --rtol 1e-12 --out " + serial.path.string());
    const RunResult b = run_cli("solve --cube-n 2 --rtol 1e-12 --ranks 4 --out " +
                                ranks.path.string());
    CAPTURE(a.output);
    CAPTURE(b.output);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const double ka = file_scalar(serial.path / "kappa_e.txt");
    const double kb = file_scalar(ranks.path / "kappa_e.txt");
    CHECK(kb == doctest::Approx(ka).epsilon(1e-8));
}

TEST_CASE("crack deterministic: history file and terminal snapshot") {
    tetdec_test::TempDir dir("cli_crack");
    const RunResult run = run_cli(
        "crack --cube-n 2 --mode deterministic --kappa-stop 0.25 --rtol 1e-10 --out " +
        dir.path.string());
    CAPTURE(run.output);
    REQUIRE(run.exit_code == 0);
    CHECK(run.output.find("terminal damage") != std::string::npos);

    const auto rows =
        parse_csv((dir.path / "history.csv").string(), "step,cracked_face_id,D_n,kappa_e");
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0][0] == 0.0);
    CHECK(rows[0][1] == -1.0);
    CHECK(rows[0][3] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(column_non_increasing(rows, 3, 1e-7));
    CHECK(rows.back()[3] <= 0.25 + 1e-9);

    const auto snapshot = parse_vtk((dir.path / "crack_final.vtk").string());
    CHECK(snapshot.cells.size() == 48);
}

TEST_CASE("identical crack configurations produce byte-identical CSV files") {
    tetdec_test::TempDir a("cli_rep_a"), b("cli_rep_b");
    const std::string mc_args =
        "crack --cube-n 2 --mode monte-carlo --paths 3 --seed 77 --max-steps 6 --rtol 1e-10";
    REQUIRE(run_cli(mc_args + " --out " + a.path.string()).exit_code == 0);
    REQUIRE(run_cli(mc_args + " --out " + b.path.string()).exit_code == 0);
    const std::string text_a = read_file((a.path / "paths.csv").string());
    CHECK(text_a == read_file((b.path / "paths.csv").string()));
    CHECK(text_a.find("# rng=mt19937_64+rejection") != std::string::npos);

    tetdec_test::TempDir c("cli_rep_c"), d("cli_rep_d");
    const std::string st_args =
        "crack --cube-n 2 --mode stochastic --seed 5 --max-steps 8 --rtol 1e-10";
    REQUIRE(run_cli(st_args + " --out " + c.path.string()).exit_code == 0);
    REQUIRE(run_cli(st_args + " --out " + d.path.string()).exit_code == 0);
    CHECK(read_file((c.path / "history.csv").string()) ==
          read_file((d.path / "history.csv").string()));
}

TEST_CASE("convergence: refinement rows for built-in cube levels") {
    tetdec_test::TempDir dir("cli_conv");
    const RunResult run = run_cli("convergence --level-cube 1 --level-cube 2 --rtol 1e-11 --out " +
                                  dir.path.string());
    CAPTURE(run.output);
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv((dir.path / "convergence.csv").string(),
                                "level,max_tet_volume,rms_error,limited_fraction");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == 0.0);
    CHECK(rows[1][0] == 1.0);
    CHECK(rows[1][1] < rows[0][1]); // refinement shrinks the largest tet
    for (const auto& row : rows) CHECK(row[2] < 1e-6);
}

TEST_CASE("a saved effective config reproduces the run exactly") {
    tetdec_test::TempDir first("cli_cfg_a"), second("cli_cfg_b");
    REQUIRE(run_cli("solve --cube-n 2 --kappa 2.5 --rtol 1e-11 --out " +
                    first.path.string())
                .exit_code == 0);
    const RunResult replay =
        run_cli("solve --config " + (first.path / "config_effective.json").string() +
                " --out " + second.path.string());
    CAPTURE(replay.output);
    REQUIRE(replay.exit_code == 0);
    CHECK(read_file((first.path / "kappa_e.txt").string()) ==
          read_file((second.path / "kappa_e.txt").string()));
}

TEST_CASE("prep: sorted mesh round-trips and geometry exports parse") {
    tetdec_test::TempDir dir("cli_prep");
    const fs::path primal = dir.path / "surface.obj";
    const fs::path dual = dir.path / "dual.obj";
    const RunResult run = run_cli("prep --cube-n 2 --ranks 3 --obj-primal " + primal.string() +
                                  " --obj-dual " + dual.string() + " --out " +
                                  dir.path.string());
    CAPTURE(run.output);
    REQUIRE(run.exit_code == 0);
    CHECK(run.output.find("rank") != std::string::npos);
    for (const char* ext : {".node", ".ele", ".face"})
        CHECK(fs::exists(dir.path / ("sorted" + std::string(ext))));

    const auto surface = parse_obj(primal.string());
    CHECK(surface.vertices.size() == 27);
    CHECK(!surface.faces.empty());
    const auto skeleton = parse_obj(dual.string());
    CHECK(!skeleton.vertices.empty());

    // Sorting is idempotent: prep on its own output reproduces it.
    tetdec_test::TempDir again("cli_prep2");
    REQUIRE(run_cli("prep --mesh " + (dir.path / "sorted").string() + " --out " +
                    again.path.string())
                .exit_code == 0);
    for (const char* ext : {".node", ".ele", ".face"})
        CHECK(read_file((dir.path / ("sorted" + std::string(ext))).string()) ==
              read_file((again.path / ("sorted" + std::string(ext))).string()));
}
