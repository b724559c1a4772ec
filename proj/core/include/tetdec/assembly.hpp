#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "tetdec/complex.hpp"
#include "tetdec/errors.hpp"
#include "tetdec/geometry.hpp"
#include "tetdec/mesh.hpp"

namespace tetdec {

// Per-face material data. kappa must stay positive on every face that has not
// been cracked; cracked faces are handled by elimination, never by kappa = 0
// (a zero entry would make the flux block singular).
struct Conductivity {
    Eigen::VectorXd kappa;
    std::vector<char> cracked;

    static Conductivity uniform(std::size_t n_faces, double kappa_value);
};

// One record per eliminated face, holding everything the elimination
// overwrote. Kept so a simulation can cheaply restore the pristine operator
// (Monte Carlo restarts) and so tests can verify the "at most 5 matrix
// values" contract directly.
struct EliminationRecord {
    int face = -1;
    double a_old = 0.0;
    double rhs_face_old = 0.0;
    // (tet index, old B[face,tet] coefficient, old rhs entry of that tet row)
    std::vector<std::array<double, 3>> tet_entries;
};

// Mixed flux/temperature system
//
//   [ A  B ] [ omega ]   [ rhs_omega ]
//   [ B^T C ] [ alpha ] = [ rhs_alpha ]
//
// with A diagonal (hodge[2][f] / kappa[f]), B the face-tet incidence with
// entries in {-1, 0, +1}, and C zero except for pinned temperatures.
// Unknowns are ordered omega (one per face) then alpha (one per tet).
//
// Incidence sign convention: b(f, t) = +1 exactly when the face normal given
// by the right-hand rule on the face's sorted vertex tuple points into tet t.
// With dual lengths measured by the same normals (geometry module), the face
// row then reads  (L_f / (area_f kappa_f)) omega_f = alpha_upwind -
// alpha_downwind, which is the two-point discretization of q = -kappa grad T,
// and solved omega is the physical flux (positive from hot to cold along the
// face normal).
struct SaddleSystem {
    int n_faces = 0;
    int n_tets = 0;

    Eigen::VectorXd a_diag;                          // n_faces
    Eigen::SparseMatrix<double, Eigen::RowMajor> b;  // n_faces x n_tets
    Eigen::SparseMatrix<double, Eigen::RowMajor> bt; // transpose of b, kept in sync
    Eigen::VectorXd c_diag;                          // n_tets, zero unless pinned
    Eigen::VectorXd rhs;                             // n_faces + n_tets

    std::vector<char> eliminated; // per face
    std::vector<char> cracked;    // per face, subset of eliminated
    bool has_dirichlet = false;

    std::vector<EliminationRecord> journal;

    int unknowns() const { return n_faces + n_tets; }

    // y = M x for the full saddle matrix. Safe to call concurrently from
    // several threads as long as no elimination runs at the same time.
    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

    // Assembled (n_faces+n_tets)^2 matrix, sparse and dense forms. The dense
    // form is the direct-solve oracle; callers must keep it to small systems.
    Eigen::SparseMatrix<double> full_matrix() const;
    Eigen::MatrixXd dense_matrix() const;
};

// Builds the pristine system: a_diag[f] = hodge[2][f] / kappa[f], incidence
// entries as documented on SaddleSystem, rhs = 0. Faces already marked
// cracked in the conductivity are eliminated with value 0.
// Throws ConfigError if kappa <= 0 on a non-cracked face.
SaddleSystem assemble(const SimplicialComplex& cx, const DualGeometry& geom,
                      const Conductivity& cond);

// Prescribes temperature value on the dual-edge endpoints that boundary
// faces expose at the surface: rhs_f += b(f,t) * value for each listed face
// (t its unique tet). Throws ConfigError for interior or eliminated faces.
void apply_dirichlet(SaddleSystem& sys, const SimplicialComplex& cx,
                     const std::vector<int>& faces, double value);

// Forces omega on one face to a prescribed flux value: moves the known
// contribution to the neighbouring tet rows, zeroes the face's incidence row
// and column in place (structural zeros stay), puts 1 on the diagonal, and
// sets rhs_f to the value. Changes at most 5 matrix values (3 stored, using
// symmetry) and at most 3 rhs entries; appends a journal record.
// Throws ConfigError on double elimination.
void eliminate_face(SaddleSystem& sys, int face, double value);

// eliminate_face(face, 0) plus the cracked flag. Throws ConfigError for
// boundary faces and for faces already cracked.
void crack_face(SaddleSystem& sys, const SimplicialComplex& cx, int face);

// Reverts the most recent elimination, restoring matrix and rhs entries from
// the journal. Intended for tests and replay experiments.
void undo_last_elimination(SaddleSystem& sys);

// Fixes alpha of one tet (used when no Dirichlet face exists and the
// temperature is only defined up to a constant): zeroes the tet's incidence
// column, moves known terms to the rhs, and sets c_diag[tet] = -1 with
// rhs_tet = -value. The negative diagonal keeps the temperature block
// negative semidefinite, which the Schur preconditioners rely on.
void pin_temperature(SaddleSystem& sys, int tet, double value);

// Applies a whole boundary table: Dirichlet markers prescribe temperatures,
// Neumann markers eliminate their faces with the tag's flux value. Faces
// whose marker is absent from the table raise ConfigError, as do table
// entries that match no face. The latter check is skipped when
// require_all_markers is false, for rank-local subcomplexes that only see a
// subset of the boundary.
void apply_boundary(SaddleSystem& sys, const SimplicialComplex& cx, const BoundaryTable& table,
                    bool require_all_markers = true);

} // namespace tetdec
