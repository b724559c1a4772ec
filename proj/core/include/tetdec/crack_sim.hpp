#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tetdec/assembly.hpp"
#include "tetdec/complex.hpp"
#include "tetdec/geometry.hpp"
#include "tetdec/solver.hpp"

namespace tetdec {

// Identifier of the random stream used by the stochastic runs. Recorded in
// CSV headers so histories state how they were produced. mt19937_64 output
// is fixed by the standard and the rejection step avoids the
// implementation-defined std::uniform_int_distribution, so sequences are
// reproducible across platforms and standard libraries.
inline constexpr const char* kRngAlgorithm = "mt19937_64+rejection";

// History of one cracking run. kappa_e_history[k] is the effective
// conductivity after the first k cracks, so it is one longer than `cracked`
// unless the run was aborted mid-step.
struct CrackState {
    std::vector<int> cracked;
    std::vector<double> kappa_e_history;
    int n_interior_faces = 0;
    std::uint64_t rng_seed = 0;
    bool stochastic = false;
    bool completed = true; // false when the solver failed mid-run
    std::string note;

    double terminal_damage() const {
        return n_interior_faces > 0
                   ? static_cast<double>(cracked.size()) / n_interior_faces
                   : 0.0;
    }
};

// Unit-cube thermal experiment: one hot side (temperature 1), one cold side
// (temperature 0), remaining sides insulated (zero flux), uniform
// conductivity. kappa_stop < 0 selects the default 1e-6 * kappa.
struct ExperimentConfig {
    int hot_marker = 5;
    int cold_marker = 6;
    std::vector<int> insulated_markers = {1, 2, 3, 4};
    double kappa = 1.0;
    double kappa_stop = -1.0;
    SolverConfig solver;
    // Rank faces by |omega|/area (a flux density) when true, by |omega| when
    // false; exposed because the two differ on graded meshes.
    bool select_by_density = true;
    int max_steps = -1; // safety cap, -1 = unlimited

    double stop_threshold() const { return kappa_stop >= 0.0 ? kappa_stop : 1e-6 * kappa; }
    BoundaryTable boundary_table() const; // throws ConfigError on marker overlap
};

// Magnitude of the total flux through one Dirichlet side. Each face's
// incidence sign reorients its flux outward, so contributions add coherently
// regardless of how the sorted-tuple normals happen to point. On the unit
// cube with unit temperature difference this is the effective conductivity.
// Throws ConfigError when no face carries the marker.
double effective_conductivity(const Solution& sol, const SimplicialComplex& cx,
                              int side_marker);

// Face with the largest flux among interior faces not yet excluded, ranked
// by |omega|/area (or plain |omega| when by_density is false). Ties resolve
// to the lowest face index. Returns -1 when no candidate remains.
int max_flux_face(const Solution& sol, const SimplicialComplex& cx, const DualGeometry& geom,
                  const std::vector<char>& excluded, bool by_density = true);

// Greedy run: solve, record kappa_e, crack the max-flux face, repeat until
// kappa_e falls to the stop threshold (or candidates run out / the solver
// fails / max_steps is hit, all recorded in the returned state).
CrackState run_deterministic(const SimplicialComplex& cx, const DualGeometry& geom,
                             const ExperimentConfig& config);

// Same loop but cracking a uniformly random remaining interior face each
// step. Identical seeds give identical histories.
CrackState run_stochastic(const SimplicialComplex& cx, const DualGeometry& geom,
                          const ExperimentConfig& config, std::uint64_t seed);

// n_paths independent stochastic runs seeded base_seed + path index, each
// restarted from one pristine assembled system. Failed paths are returned
// flagged; the rest are unaffected.
std::vector<CrackState> run_monte_carlo(const SimplicialComplex& cx, const DualGeometry& geom,
                                        const ExperimentConfig& config, int n_paths,
                                        std::uint64_t base_seed);

// Fresh assembly with the given faces cracked, then a cold solve. Used to
// re-render snapshots after a run and to check that replaying a recorded
// sequence reproduces its history.
Solution solve_with_cracks(const SimplicialComplex& cx, const DualGeometry& geom,
                           const ExperimentConfig& config, const std::vector<int>& cracked);

} // namespace tetdec
