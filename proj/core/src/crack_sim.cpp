#include "tetdec/crack_sim.hpp"

#include <random>
#include <set>

namespace tetdec {

BoundaryTable ExperimentConfig::boundary_table() const {
    BoundaryTable table;
    table[hot_marker] = {BoundaryKind::Dirichlet, 1.0};
    table[cold_marker] = {BoundaryKind::Dirichlet, 0.0};
    if (table.size() != 2)
        throw ConfigError("hot and cold markers must differ");
    for (int m : insulated_markers) {
        if (table.count(m))
            throw ConfigError("marker " + std::to_string(m) +
                              " assigned to more than one boundary condition");
        table[m] = {BoundaryKind::Neumann, 0.0};
    }
    return table;
}

double effective_conductivity(const Solution& sol, const SimplicialComplex& cx,
                              int side_marker) {
    double oriented_sum = 0.0;
    bool found = false;
    for (std::size_t f = 0; f < cx.face_markers.size(); ++f) {
        if (cx.face_markers[f] != side_marker) continue;
        found = true;
        int t = cx.face_tets[f][0];
        // Same sign rule as the assembled incidence block: +1 when the
        // sorted-tuple face normal points into the tet, i.e. inward here.
        double incidence = -cx.tet_orientation[t] *
                           cx.boundary3.coeff(static_cast<int>(f), t);
        oriented_sum += incidence * sol.omega[static_cast<Eigen::Index>(f)];
    }
    if (!found)
        throw ConfigError("no boundary face carries marker " + std::to_string(side_marker));
    return std::abs(oriented_sum);
}

int max_flux_face(const Solution& sol, const SimplicialComplex& cx, const DualGeometry& geom,
                  const std::vector<char>& excluded, bool by_density) {
    int best = -1;
    double best_value = -1.0;
    for (std::size_t f = 0; f < cx.cell_count(2); ++f) {
        if (cx.face_tets[f][1] == -1) continue; // boundary face
        if (f < excluded.size() && excluded[f]) continue;
        double value = std::abs(sol.omega[static_cast<Eigen::Index>(f)]);
        if (by_density) value /= geom.primal_volume[2][f];
        if (value > best_value) {
            best_value = value;
            best = static_cast<int>(f);
        }
    }
    return best;
}

namespace {

// Uniform integer in [0, n) from the 64-bit generator, rejecting the biased
// tail of the modulus so every value is exactly equally likely.
std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

// Shared driver: solve, record, pick (via `choose`), crack, repeat.
template <typename Chooser>
CrackState run_path(const SimplicialComplex& cx, const DualGeometry& geom,
                    const ExperimentConfig& config, const SaddleSystem* pristine,
                    Chooser&& choose) {
    CrackState state;
    state.n_interior_faces = static_cast<int>(non_boundary_faces(cx).size());

    SaddleSystem sys;
    if (pristine) {
        sys = *pristine;
    } else {
        Conductivity cond = Conductivity::uniform(cx.cell_count(2), config.kappa);
        sys = assemble(cx, geom, cond);
        apply_boundary(sys, cx, config.boundary_table());
    }

    const double stop = config.stop_threshold();
    Eigen::VectorXd guess;

    while (true) {
        Solution sol =
            solve(sys, config.solver, guess.size() > 0 ? &guess : nullptr);
        if (!sol.converged) {
            state.completed = false;
            state.note = "solver did not converge after " + std::to_string(state.cracked.size()) +
                         " cracks: " + sol.diagnostics;
            break;
        }
        guess.resize(sys.unknowns());
        guess.head(sys.n_faces) = sol.omega;
        guess.tail(sys.n_tets) = sol.alpha;

        state.kappa_e_history.push_back(effective_conductivity(sol, cx, config.hot_marker));
        if (state.kappa_e_history.back() <= stop) break;
        if (config.max_steps >= 0 &&
            static_cast<int>(state.cracked.size()) >= config.max_steps) {
            state.note = "stopped at the configured step limit";
            break;
        }

        int face = choose(sol, sys);
        if (face < 0) {
            state.note = "no crack candidates remain";
            break;
        }
        crack_face(sys, cx, face);
        state.cracked.push_back(face);
    }
    return state;
}

} // namespace

CrackState run_deterministic(const SimplicialComplex& cx, const DualGeometry& geom,
                             const ExperimentConfig& config) {
    return run_path(cx, geom, config, nullptr, [&](const Solution& sol, const SaddleSystem& sys) {
        return max_flux_face(sol, cx, geom, sys.cracked, config.select_by_density);
    });
}

namespace {

CrackState run_stochastic_from(const SimplicialComplex& cx, const DualGeometry& geom,
                               const ExperimentConfig& config, const SaddleSystem* pristine,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> candidates = non_boundary_faces(cx);
    CrackState state =
        run_path(cx, geom, config, pristine, [&](const Solution&, const SaddleSystem&) {
            if (candidates.empty()) return -1;
            std::size_t pick = bounded_random(rng, candidates.size());
            int face = candidates[pick];
            candidates[pick] = candidates.back();
            candidates.pop_back();
            return face;
        });
    state.stochastic = true;
    state.rng_seed = seed;
    return state;
}

} // namespace

CrackState run_stochastic(const SimplicialComplex& cx, const DualGeometry& geom,
                          const ExperimentConfig& config, std::uint64_t seed) {
    return run_stochastic_from(cx, geom, config, nullptr, seed);
}

std::vector<CrackState> run_monte_carlo(const SimplicialComplex& cx, const DualGeometry& geom,
                                        const ExperimentConfig& config, int n_paths,
                                        std::uint64_t base_seed) {
    if (n_paths < 1) throw ConfigError("Monte Carlo needs at least one path");
    Conductivity cond = Conductivity::uniform(cx.cell_count(2), config.kappa);
    SaddleSystem pristine = assemble(cx, geom, cond);
    apply_boundary(pristine, cx, config.boundary_table());

    std::vector<CrackState> paths;
    paths.reserve(static_cast<std::size_t>(n_paths));
    for (int i = 0; i < n_paths; ++i)
        paths.push_back(run_stochastic_from(cx, geom, config, &pristine,
                                            base_seed + static_cast<std::uint64_t>(i)));
    return paths;
}

Solution solve_with_cracks(const SimplicialComplex& cx, const DualGeometry& geom,
                           const ExperimentConfig& config, const std::vector<int>& cracked) {
    Conductivity cond = Conductivity::uniform(cx.cell_count(2), config.kappa);
    SaddleSystem sys = assemble(cx, geom, cond);
    apply_boundary(sys, cx, config.boundary_table());
    std::set<int> seen;
    for (int f : cracked) {
        if (!seen.insert(f).second)
            throw ConfigError("face " + std::to_string(f) + " cracked twice in replay");
        crack_face(sys, cx, f);
    }
    return solve(sys, config.solver);
}

} // namespace tetdec
