#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "tetdec/assembly.hpp"
#include "tetdec/errors.hpp"

namespace tetdec {

enum class SchurPrecondKind { Jacobi, IncompleteCholesky, SparseApproximateInverse };

SchurPrecondKind schur_precond_from_string(const std::string& name);
std::string to_string(SchurPrecondKind kind);

struct SolverConfig {
    double rtol = 1e-10;
    double atol = 1e-10;
    int max_iters = 10000;
    int restart = 30;
    SchurPrecondKind schur_precond = SchurPrecondKind::Jacobi;
    // Inner Krylov steps refining the Schur block of the preconditioner;
    // 0 means a single preconditioner application.
    int schur_inner = 0;
};

struct Solution {
    Eigen::VectorXd omega; // integrated flux per face
    Eigen::VectorXd alpha; // temperature per tet circumcenter
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string diagnostics;
    std::vector<double> residual_history;
};

// Abstract operator for the Krylov loop, so the same iteration drives both
// the serial system and the rank-partitioned one. Implementations define the
// matrix action, the (possibly varying) preconditioner action, and the inner
// product; the inner product must be deterministic for a fixed operator, and
// in partitioned mode must return identical values on every rank.
class LinearOperator {
  public:
    virtual ~LinearOperator() = default;
    virtual Eigen::Index size() const = 0;
    virtual void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const = 0;
    virtual void precondition(const Eigen::VectorXd& r, Eigen::VectorXd& z) const = 0;
    virtual double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const = 0;
    double norm(const Eigen::VectorXd& v) const;
};

struct KrylovResult {
    int iterations = 0;
    double residual_norm = 0.0;
    bool converged = false;
    std::string diagnostics;
    std::vector<double> residual_history;
};

// Flexible GMRES with right preconditioning and modified Gram-Schmidt
// orthogonalization. `x` holds the initial guess on entry (resized to zero
// if it has the wrong length) and the solution on exit. Residuals in the
// result are true residuals recomputed at restart boundaries; convergence is
// declared only from a recomputed residual, never from the Givens estimate.
KrylovResult fgmres(const LinearOperator& op, const Eigen::VectorXd& rhs, Eigen::VectorXd& x,
                    const SolverConfig& config);

// Solves the saddle system. When the system has no Dirichlet face the
// temperature is only determined up to a constant; in that case the solve
// runs on an internal copy with tet 0 pinned to temperature 0. An optional
// initial guess (omega stacked over alpha) warm-starts the iteration.
Solution solve(const SaddleSystem& sys, const SolverConfig& config,
               const Eigen::VectorXd* initial_guess = nullptr);

// Direct dense solve used as the reference oracle. Refuses systems above
// 2000 unknowns and throws SolverError on a singular matrix. Applies the
// same pinning rule as solve().
Solution solve_dense(const SaddleSystem& sys);

// True residual of a candidate solution, computed from the assembled system
// independently of any Krylov recurrence.
double residual(const SaddleSystem& sys, const Solution& sol);

} // namespace tetdec
