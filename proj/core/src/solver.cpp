#include "tetdec/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "tetdec/schur.hpp"

namespace tetdec {

double LinearOperator::norm(const Eigen::VectorXd& v) const { return std::sqrt(dot(v, v)); }

SchurPrecondKind schur_precond_from_string(const std::string& name) {
    if (name == "jacobi") return SchurPrecondKind::Jacobi;
    if (name == "ic" || name == "incomplete-cholesky") return SchurPrecondKind::IncompleteCholesky;
    if (name == "spai" || name == "sparse-approximate-inverse")
        return SchurPrecondKind::SparseApproximateInverse;
    throw ConfigError("unknown Schur preconditioner: " + name);
}

std::string to_string(SchurPrecondKind kind) {
    switch (kind) {
    case SchurPrecondKind::Jacobi: return "jacobi";
    case SchurPrecondKind::IncompleteCholesky: return "incomplete-cholesky";
    case SchurPrecondKind::SparseApproximateInverse: return "sparse-approximate-inverse";
    }
    return "unknown";
}

KrylovResult fgmres(const LinearOperator& op, const Eigen::VectorXd& rhs, Eigen::VectorXd& x,
                    const SolverConfig& config) {
    if (config.rtol <= 0.0 || config.atol <= 0.0)
        throw ConfigError("solver tolerances must be positive");
    if (config.restart < 1) throw ConfigError("restart length must be at least 1");
    if (config.max_iters < 1) throw ConfigError("max_iters must be at least 1");

    const Eigen::Index n = op.size();
    if (rhs.size() != n) throw SolverError("rhs length does not match the operator");
    if (x.size() != n) x = Eigen::VectorXd::Zero(n);

    KrylovResult res;
    const double target = std::max(config.rtol * op.norm(rhs), config.atol);

    Eigen::VectorXd w(n), r(n);
    op.apply(x, w);
    r = rhs - w;
    double beta = op.norm(r);
    res.residual_history.push_back(beta);
    if (beta <= target) {
        res.converged = true;
        res.residual_norm = beta;
        return res;
    }

    const int m = config.restart;
    std::vector<Eigen::VectorXd> basis(static_cast<std::size_t>(m) + 1);
    std::vector<Eigen::VectorXd> preimages(static_cast<std::size_t>(m));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd cs(m), sn(m), g(m + 1);
    bool breakdown = false;

    while (res.iterations < config.max_iters) {
        basis[0] = r / beta;
        g.setZero();
        g(0) = beta;
        int used = 0;

        for (int j = 0; j < m && res.iterations < config.max_iters; ++j) {
            preimages[j].resize(n);
            op.precondition(basis[j], preimages[j]);
            op.apply(preimages[j], w);
            const double unreduced = op.norm(w);

            for (int i = 0; i <= j; ++i) {
                h(i, j) = op.dot(w, basis[i]);
                w -= h(i, j) * basis[i];
            }
            h(j + 1, j) = op.norm(w);
            ++res.iterations;
            used = j + 1;

            breakdown = h(j + 1, j) <= 1e-14 * unreduced;
            if (!breakdown) basis[j + 1] = w / h(j + 1, j);

            for (int i = 0; i < j; ++i) {
                const double tmp = cs(i) * h(i, j) + sn(i) * h(i + 1, j);
                h(i + 1, j) = -sn(i) * h(i, j) + cs(i) * h(i + 1, j);
                h(i, j) = tmp;
            }
            const double denom = std::hypot(h(j, j), h(j + 1, j));
            if (denom == 0.0) {
                cs(j) = 1.0;
                sn(j) = 0.0;
            } else {
                cs(j) = h(j, j) / denom;
                sn(j) = h(j + 1, j) / denom;
            }
            h(j, j) = denom;
            h(j + 1, j) = 0.0;
            g(j + 1) = -sn(j) * g(j);
            g(j) = cs(j) * g(j);
            res.residual_history.push_back(std::abs(g(j + 1)));

            if (breakdown || std::abs(g(j + 1)) <= target) break;
        }

        Eigen::VectorXd y = Eigen::VectorXd::Zero(used);
        for (int i = used - 1; i >= 0; --i) {
            double s = g(i);
            for (int k = i + 1; k < used; ++k) s -= h(i, k) * y(k);
            y(i) = h(i, i) != 0.0 ? s / h(i, i) : 0.0;
        }
        for (int i = 0; i < used; ++i) x += y(i) * preimages[i];

        const double beta_prev = beta;
        op.apply(x, w);
        r = rhs - w;
        beta = op.norm(r);
        res.residual_history.push_back(beta);
        if (beta <= target) {
            res.converged = true;
            break;
        }
        // A collapsed basis ends the cycle early; restarting from the true
        // residual usually recovers (the collapse is a rounding artifact on
        // badly scaled systems). Only give up when the cycle made no
        // progress, which means the residual really is out of reach.
        if (breakdown && beta >= 0.999 * beta_prev) {
            res.diagnostics = "Arnoldi breakdown at iteration " +
                              std::to_string(res.iterations) + " with residual " +
                              std::to_string(beta) + " above tolerance";
            break;
        }
    }

    res.residual_norm = beta;
    if (!res.converged && res.diagnostics.empty())
        res.diagnostics =
            "no convergence within " + std::to_string(config.max_iters) + " iterations";
    return res;
}

namespace {

Solution finish_solution(const SaddleSystem& solved, Eigen::VectorXd x, KrylovResult krylov) {
    Solution sol;
    sol.omega = x.head(solved.n_faces);
    sol.alpha = x.tail(solved.n_tets);
    sol.iterations = krylov.iterations;
    sol.converged = krylov.converged;
    sol.diagnostics = std::move(krylov.diagnostics);
    sol.residual_history = std::move(krylov.residual_history);
    // Report the residual of the system that was actually iterated on (the
    // pinned copy, when pinning was applied), recomputed from scratch.
    sol.residual_norm = residual(solved, sol);
    return sol;
}

// A system determines the temperature level when it has a Dirichlet face or
// the caller pinned a tet already (nonzero c_diag); only otherwise does the
// solver pin a tet itself.
bool needs_pinning(const SaddleSystem& sys) {
    return !sys.has_dirichlet && !(sys.c_diag.array() != 0.0).any();
}

} // namespace

Solution solve(const SaddleSystem& sys, const SolverConfig& config,
               const Eigen::VectorXd* initial_guess) {
    const SaddleSystem* target = &sys;
    SaddleSystem pinned;
    if (needs_pinning(sys)) {
        pinned = sys;
        pin_temperature(pinned, 0, 0.0);
        target = &pinned;
    }

    SaddleOperator op(*target, config);
    Eigen::VectorXd x;
    if (initial_guess && initial_guess->size() == target->unknowns()) x = *initial_guess;
    KrylovResult krylov = fgmres(op, target->rhs, x, config);
    if (target == &pinned) {
        if (!krylov.diagnostics.empty()) krylov.diagnostics += "; ";
        krylov.diagnostics += "temperature pinned at tet 0 (no Dirichlet face)";
    }
    return finish_solution(*target, std::move(x), std::move(krylov));
}

Solution solve_dense(const SaddleSystem& sys) {
    const SaddleSystem* target = &sys;
    SaddleSystem pinned;
    if (needs_pinning(sys)) {
        pinned = sys;
        pin_temperature(pinned, 0, 0.0);
        target = &pinned;
    }
    if (target->unknowns() > 2000)
        throw SolverError("dense reference solve limited to 2000 unknowns, got " +
                          std::to_string(target->unknowns()));

    Eigen::FullPivLU<Eigen::MatrixXd> lu(target->dense_matrix());
    if (!lu.isInvertible()) throw SolverError("singular system in dense reference solve");
    Eigen::VectorXd x = lu.solve(target->rhs);

    KrylovResult direct;
    direct.converged = true;
    if (target == &pinned)
        direct.diagnostics = "temperature pinned at tet 0 (no Dirichlet face)";
    return finish_solution(*target, std::move(x), std::move(direct));
}

double residual(const SaddleSystem& sys, const Solution& sol) {
    if (sol.omega.size() != sys.n_faces || sol.alpha.size() != sys.n_tets)
        throw SolverError("solution size does not match the system");
    Eigen::VectorXd x(sys.unknowns());
    x.head(sys.n_faces) = sol.omega;
    x.tail(sys.n_tets) = sol.alpha;
    return (sys.multiply(x) - sys.rhs).norm();
}

} // namespace tetdec
