#pragma once

#include <array>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "tetdec/errors.hpp"

namespace tetdec {

using Vec3 = Eigen::Vector3d;

// Raw simplicial mesh as read from disk or produced by a generator: nodes,
// tetrahedra (by node index), and the boundary triangles that carry integer
// markers. Edges are optional; most inputs do not provide them and the cell
// complex derives them from the tetrahedra anyway.
struct RawMesh {
    std::vector<Vec3> nodes;
    std::vector<std::array<int, 4>> tets;
    std::vector<int> tet_attributes;              // empty or one per tet
    std::vector<std::array<int, 3>> boundary_faces;
    std::vector<int> face_markers;                // one per boundary face
    std::vector<std::array<int, 2>> edges;        // optional

    // Throws MeshError on out-of-range node references, repeated vertices
    // within a cell, or marker/face count mismatch.
    void validate() const;
};

// How a boundary marker participates in the problem. Interior is the implicit
// kind of unmarked faces and never appears in a BoundaryTable.
enum class BoundaryKind { Interior, Dirichlet, Neumann };

struct BoundaryTag {
    BoundaryKind kind = BoundaryKind::Interior;
    double value = 0.0;   // Dirichlet: temperature; Neumann: flux density
};

// Marker -> condition. std::map keeps iteration deterministic.
using BoundaryTable = std::map<int, BoundaryTag>;

// Structured cube [0,1]^3: n^3 hexahedral cells, each split into the six
// tetrahedra around the cell's main diagonal. Every cell corner lies on the
// cell's circumsphere, so the six tets share one circumcenter and the duals
// of intra-cell faces have length zero; this generator deliberately stresses
// the Hodge limiter. Boundary markers: 1/2 = x=0/x=1, 3/4 = y=0/y=1,
// 5/6 = z=0/z=1.
RawMesh generate_cube(int n);

// Renumber nodes so that index order follows space: lexicographic by (x, y, z),
// i.e. z varies fastest along the sorted sequence. Tets, boundary faces and
// edges are remapped and then ordered by their sorted vertex tuples, which
// makes the operation idempotent. Contiguous index blocks of the result are
// spatially contiguous, which is what the block partitioner relies on.
RawMesh sort_mesh(const RawMesh& mesh);

} // namespace tetdec
