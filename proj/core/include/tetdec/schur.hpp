#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "tetdec/assembly.hpp"
#include "tetdec/solver.hpp"

namespace tetdec {

// Exact Schur complement of the saddle system onto the temperature block:
// S = C - B^T A^{-1} B, computed elementwise since A is diagonal. Entries
// couple tets that share a non-eliminated face, so S has the sparsity of the
// tet adjacency graph plus the diagonal. Throws SolverError if a
// non-eliminated face has a zero diagonal.
Eigen::SparseMatrix<double> schur_complement(const SaddleSystem& sys);

// Approximate solver for the temperature block, built on N = -S (positive
// semidefinite; pinned tets contribute +1 to the diagonal through the sign
// convention of pin_temperature). Rows of N that are entirely zero (tets cut
// off by cracks on every face) act as identity so the application is always
// well defined.
class SchurPreconditioner {
  public:
    SchurPreconditioner(const SaddleSystem& sys, SchurPrecondKind kind, int inner_iters);

    // y ~= N^{-1} g by one application of the configured approximation, or by
    // `inner_iters` steps of preconditioned conjugate gradients when inner
    // refinement was requested.
    void solve_normalized(const Eigen::VectorXd& g, Eigen::VectorXd& y) const;

    const Eigen::SparseMatrix<double, Eigen::RowMajor>& normalized() const { return n_; }

  private:
    void apply_once(const Eigen::VectorXd& g, Eigen::VectorXd& y) const;

    SchurPrecondKind kind_;
    int inner_iters_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> n_;
    Eigen::VectorXd inv_diag_;                       // Jacobi
    Eigen::SparseMatrix<double> ic_lower_;           // incomplete Cholesky factor L
    Eigen::SparseMatrix<double, Eigen::RowMajor> spai_; // approximate inverse
};

// Serial saddle operator: matrix action from the assembled blocks, block
// upper-triangular preconditioner
//   y_alpha = approx_solve(N, B^T A^{-1} r_omega - r_alpha)
//   y_omega = A^{-1} (r_omega - B y_alpha)
// and the plain Euclidean inner product.
class SaddleOperator : public LinearOperator {
  public:
    SaddleOperator(const SaddleSystem& sys, const SolverConfig& config);

    Eigen::Index size() const override { return sys_.unknowns(); }
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override;
    void precondition(const Eigen::VectorXd& r, Eigen::VectorXd& z) const override;
    double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const override;

  private:
    const SaddleSystem& sys_;
    SchurPreconditioner schur_;
};

} // namespace tetdec
