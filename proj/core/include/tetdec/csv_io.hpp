#pragma once

#include <string>
#include <vector>

#include "tetdec/crack_sim.hpp"

namespace tetdec {

// One cracking history as CSV. Comment lines ("#") record how the run was
// produced (RNG algorithm and seed for stochastic runs, interior face count,
// abnormal termination notes), then a header row and one data row per solved
// state: step k, the face cracked at step k (-1 on the pristine row), damage
// D_n = k / interior faces, and kappa_e after k cracks. %.17g formatting
// keeps repeated runs byte-identical. Throws MeshError when the path is not
// writable.
void write_csv_history(const CrackState& state, const std::string& path);

// All Monte Carlo paths in one file, same row layout prefixed by path index
// and seed columns. Failed paths are included with a note comment.
void write_csv_monte_carlo(const std::vector<CrackState>& paths, const std::string& path);

// Mesh refinement study rows: level, max tet volume, volume-weighted RMS
// temperature error, fraction of limited Hodge entries.
struct ConvergenceRow {
    int level = 0;
    double max_tet_volume = 0.0;
    double rms_error = 0.0;
    double limited_fraction = 0.0;
};

void write_csv_convergence(const std::vector<ConvergenceRow>& rows, const std::string& path);

// The exact strings the writers above put on disk; exposed so tests and the
// CLI can validate or echo without re-reading files.
std::string csv_history_text(const CrackState& state);
std::string csv_monte_carlo_text(const std::vector<CrackState>& paths);
std::string csv_convergence_text(const std::vector<ConvergenceRow>& rows);

} // namespace tetdec
