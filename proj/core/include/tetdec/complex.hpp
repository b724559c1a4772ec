#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "tetdec/mesh.hpp"

namespace tetdec {

// Simplicial 3-complex over a tetrahedral mesh.
//
// Conventions, fixed once here and relied on everywhere downstream:
//
//  * Cells of each dimension store their vertex indices as sorted tuples and
//    are ordered lexicographically by those tuples, so construction is
//    deterministic for a given RawMesh.
//  * boundary[p] maps p-chains to (p-1)-chains: rows are (p-1)-cells, columns
//    are p-cells, and the entry for the face obtained by deleting the i-th
//    vertex of a sorted tuple is (-1)^i. With that convention
//    boundary[p] * boundary[p+1] = 0 holds exactly in integer arithmetic.
//  * tet_orientation[t] is +1 when the sorted vertex order of tet t spans a
//    positive volume and -1 otherwise. Combinatorial boundary signs times
//    this orientation give geometric (outward/inward) incidence, which is
//    what the physical assembly needs; the raw matrices stay integer and
//    purely combinatorial.
//  * face_markers[f] is 0 for interior faces and carries the RawMesh boundary
//    marker otherwise. face_tets[f] lists the one or two incident tets
//    (second slot -1 on the boundary).
struct SimplicialComplex {
    std::vector<Vec3> positions;                       // 0-cells
    std::vector<std::array<int, 2>> edges;             // 1-cells
    std::vector<std::array<int, 3>> faces;             // 2-cells
    std::vector<std::array<int, 4>> tets;              // 3-cells

    std::vector<int> tet_orientation;                  // +-1 per tet
    std::vector<int> face_markers;                     // 0 = interior
    std::vector<std::array<int, 2>> face_tets;         // incident tets, -1 = none

    Eigen::SparseMatrix<int> boundary1;                // n0 x n1
    Eigen::SparseMatrix<int> boundary2;                // n1 x n2
    Eigen::SparseMatrix<int> boundary3;                // n2 x n3

    std::size_t cell_count(int p) const;

    // Index of a face/edge given its (not necessarily sorted) vertex tuple;
    // -1 when absent.
    int face_index(std::array<int, 3> vertices) const;
    int edge_index(std::array<int, 2> vertices) const;
};

// Builds vertices/edges/faces/tets, incidence matrices, orientations and
// boundary markers. Throws MeshError on non-manifold faces (more than two
// incident tets), degenerate (zero-volume) tets, or face records that match
// no tet face.
SimplicialComplex build_complex(const RawMesh& mesh);

// Coboundary d_p = boundary[p+1]^T (p-cochains to (p+1)-cochains), p in [0,2].
Eigen::SparseMatrix<int> coboundary(const SimplicialComplex& complex, int p);

// Indices of faces with exactly two incident tets. Faces with markers but two
// tets are rejected earlier; a face with zero tets cannot arise from tets.
std::vector<int> non_boundary_faces(const SimplicialComplex& complex);

} // namespace tetdec
