#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "tetdec/complex.hpp"

namespace tetdec {

// Circumcentric (Voronoi) dual geometry of a simplicial 3-complex.
//
// The dual cell of a p-simplex is assembled from elementary pieces, one per
// ascending chain sigma_p < tau_{p+1} < ... < tau_3. Consecutive circumcenters
// along a chain are mutually orthogonal offsets, so each piece is a right
// simplex with measure (1/(3-p)!) * prod h_k, where h_k is the distance from
// the circumcenter of tau_{k+1} to the affine hull of tau_k. Every h_k is
// signed: positive when the larger simplex's circumcenter lies on the same
// side of that hull as the simplex itself, negative otherwise. Summed over
// all chains this reproduces total volume exactly even on meshes whose
// circumcenters wander outside their cells.
//
// dual_volume[2][f] is the signed dual edge length of face f. The diagonal
// Hodge star divides dual by primal measure; for p = 2 the dual length is
// first clamped from below to the limiter (default 1e-8), which keeps the
// flux equation invertible on meshes where adjacent circumcenters coincide.
// The clamp applies to zero and negative lengths alike, so hodge[2] is
// strictly positive. dual_volume itself is stored unclamped.
struct DualGeometry {
    std::vector<Vec3> edge_circumcenters;
    std::vector<Vec3> face_circumcenters;
    std::vector<Vec3> tet_circumcenters;

    // Indexed by dimension p, then cell. primal_volume[0] and dual_volume[3]
    // are all ones by convention (a point has measure 1).
    std::array<std::vector<double>, 4> primal_volume;
    std::array<std::vector<double>, 4> dual_volume;
    std::array<std::vector<double>, 4> hodge;

    std::vector<char> face_limited;   // limiter fired for this face
    int limited_count = 0;
    double limiter = 0.0;

    double limited_fraction() const {
        return face_limited.empty() ? 0.0
                                    : double(limited_count) / double(face_limited.size());
    }
};

// Circumcenter of a k-simplex given its k+1 vertices (k in [0,3]): the unique
// point of the affine hull equidistant from all vertices. Throws MeshError on
// degenerate input (collinear/coplanar repeats).
Vec3 circumcenter(std::span<const Vec3> points);

DualGeometry compute_geometry(const SimplicialComplex& complex, double limiter = 1e-8);

// Piecewise-constant flux vector for one tet, reconstructed from the face
// fluxes omega via lowest-order Whitney 2-forms evaluated at the barycenter.
// omega is indexed by global face and oriented by each face's sorted-vertex
// normal, matching the saddle system's unknowns; the result is linear in
// omega and exact for fluxes that are constant over the tet.
Vec3 whitney_vector(const SimplicialComplex& complex, const Eigen::VectorXd& omega, int tet);

std::vector<Vec3> whitney_flux_vectors(const SimplicialComplex& complex,
                                       const Eigen::VectorXd& omega);

} // namespace tetdec
