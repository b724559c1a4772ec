#pragma once

#include <utility>
#include <vector>

#include "tetdec/assembly.hpp"
#include "tetdec/geometry.hpp"
#include "tetdec/partition.hpp"
#include "tetdec/solver.hpp"

namespace tetdec {

// Partitioned solve: nodes are block-partitioned across `n_ranks`, each rank
// (a thread) assembles the system restricted to its owned and ghost cells and
// runs the same flexible GMRES iteration as the serial solver, with halo
// exchanges inside the operator and preconditioner and ownership-masked,
// rank-ordered reductions so every rank sees identical scalars. The gathered
// global solution is returned; its residual is recomputed serially.
//
// `eliminations` lists (global face, prescribed flux) pairs applied after the
// boundary table on every rank that sees the face, so cracked or forced faces
// stay consistent across ranks.
//
// The partitioned preconditioner supports the Jacobi Schur approximation
// (plus inner CG refinement via config.schur_inner); other Schur kinds raise
// ConfigError when n_ranks > 1. With n_ranks == 1 this is exactly the serial
// solver.
Solution solve_partitioned(const SimplicialComplex& cx, const DualGeometry& geom,
                           const Conductivity& cond, const BoundaryTable& bcs,
                           const SolverConfig& config, int n_ranks,
                           const std::vector<std::pair<int, double>>& eliminations = {});

} // namespace tetdec
