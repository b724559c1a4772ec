#pragma once

#include <cstdint>
#include <vector>

#include "tetdec/mesh.hpp"

namespace tetdec::testing {

// Delaunay tetrahedralization by incremental insertion (Bowyer-Watson with a
// brute-force cavity search; quadratic but plenty fast for test meshes).
// Returns positively oriented tets over the given points. Throws MeshError
// when the result fails its own checks (conformity, hull coverage).
std::vector<std::array<int, 4>> bowyer_watson(const std::vector<Vec3>& points);

// Unit-cube test meshes: a corner lattice with n cells per side, plus cell
// body centers and boundary-square centers. The unjittered body-centered
// interior triangulates into well-centered disphenoids; the extra boundary
// points keep boundary tets from flattening against the walls. jitter is an
// absolute amplitude applied per coordinate, skipping coordinates that lie
// on a boundary plane so the cube stays exactly [0,1]^3.
//
// Jitter around 0.1/n breaks all structural circumsphere ties wide open,
// giving meshes whose dual edges are all comfortably positive. Jitter far
// below the Hodge limiter (e.g. 1e-9) breaks the same ties only nominally,
// leaving near-zero dual edges concentrated at the boundary ties.
struct LatticeOptions {
    int n = 3;
    double jitter = 0.0;
    std::uint64_t seed = 1;
    // Midpoints along the twelve cube edges keep boundary tets there Gabriel
    // (positive boundary duals) once jitter is healthy. They sit exactly on
    // the cube-edge lines, so sub-limiter jitter makes near-degenerate
    // slivers around them; the near-degenerate families turn them off and
    // accept clamped boundary duals instead.
    bool edge_midpoints = true;
};

RawMesh lattice_mesh(const LatticeOptions& options);

// Smallest dual edge length over all faces (signed; negative means some tet
// circumcenter sits on the wrong side). Test meshes for exactness checks are
// screened with this before use.
double min_dual_edge(const RawMesh& mesh);

} // namespace tetdec::testing
