#include "tetdec/parallel.hpp"

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <thread>

namespace tetdec {

namespace {

// Rank-local view of the saddle operator. Inputs are copied and their ghost
// entries refreshed before use; outputs are only meaningful on owned rows,
// which is all the masked inner product ever reads.
class DistributedSaddleOperator : public LinearOperator {
  public:
    DistributedSaddleOperator(const SaddleSystem& sys, const LocalSubcomplex& local,
                              Communicator& comm, int inner_iters)
        : sys_(sys), local_(local), comm_(comm), inner_iters_(inner_iters) {
        // Diagonal of N = B^T A^{-1} B - C restricted to owned tets; every
        // face of an owned tet is local, so this needs no communication.
        ndiag_inv_ = Eigen::VectorXd::Ones(sys_.n_tets);
        for (int t = 0; t < sys_.n_tets; ++t) {
            if (!local_.tet_owned[t]) continue;
            double d = -sys_.c_diag[t];
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(sys_.bt, t);
                 it; ++it)
                d += it.value() * it.value() / sys_.a_diag[it.col()];
            ndiag_inv_[t] = d != 0.0 ? 1.0 / d : 1.0;
        }
    }

    Eigen::Index size() const override { return sys_.unknowns(); }

    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override {
        Eigen::VectorXd fresh = x;
        refresh(fresh);
        y = sys_.multiply(fresh);
    }

    void precondition(const Eigen::VectorXd& r, Eigen::VectorXd& z) const override {
        Eigen::VectorXd fresh = r;
        refresh(fresh);
        Eigen::VectorXd scaled = fresh.head(sys_.n_faces).cwiseQuotient(sys_.a_diag);
        Eigen::VectorXd g = sys_.bt * scaled - fresh.tail(sys_.n_tets);

        Eigen::VectorXd y_alpha = schur_apply(g);
        if (inner_iters_ > 0) y_alpha = schur_cg(g, y_alpha);
        halo_exchange_tets(y_alpha, local_, comm_);

        z.resize(sys_.unknowns());
        z.tail(sys_.n_tets) = y_alpha;
        z.head(sys_.n_faces) =
            (fresh.head(sys_.n_faces) - sys_.b * y_alpha).cwiseQuotient(sys_.a_diag);
    }

    double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const override {
        double sum = 0.0;
        for (int f = 0; f < sys_.n_faces; ++f)
            if (local_.face_owned[f]) sum += a[f] * b[f];
        for (int t = 0; t < sys_.n_tets; ++t)
            if (local_.tet_owned[t]) sum += a[sys_.n_faces + t] * b[sys_.n_faces + t];
        return comm_.allreduce_sum(local_.rank, sum);
    }

  private:
    void refresh(Eigen::VectorXd& v) const {
        Eigen::VectorXd part = v.head(sys_.n_faces);
        halo_exchange_faces(part, local_, comm_);
        v.head(sys_.n_faces) = part;
        part = v.tail(sys_.n_tets);
        halo_exchange_tets(part, local_, comm_);
        v.tail(sys_.n_tets) = part;
    }

    Eigen::VectorXd schur_apply(const Eigen::VectorXd& g) const {
        return ndiag_inv_.cwiseProduct(g);
    }

    // y = N x on owned tets, ghost entries of x refreshed first.
    Eigen::VectorXd schur_matvec(const Eigen::VectorXd& x) const {
        Eigen::VectorXd fresh = x;
        halo_exchange_tets(fresh, local_, comm_);
        Eigen::VectorXd q = (sys_.b * fresh).cwiseQuotient(sys_.a_diag);
        return sys_.bt * q - sys_.c_diag.cwiseProduct(fresh);
    }

    double tet_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
        double sum = 0.0;
        for (int t = 0; t < sys_.n_tets; ++t)
            if (local_.tet_owned[t]) sum += a[t] * b[t];
        return comm_.allreduce_sum(local_.rank, sum);
    }

    // Fixed-count Jacobi-preconditioned CG on N y = g, warm started from the
    // single Jacobi sweep. All scalars pass through the deterministic
    // reduction, so every rank takes identical steps.
    Eigen::VectorXd schur_cg(const Eigen::VectorXd& g, const Eigen::VectorXd& y0) const {
        Eigen::VectorXd y = y0;
        Eigen::VectorXd r = g - schur_matvec(y);
        Eigen::VectorXd z = schur_apply(r);
        Eigen::VectorXd p = z, q(z.size());
        double rz = tet_dot(r, z);
        for (int k = 0; k < inner_iters_; ++k) {
            if (rz == 0.0) break;
            q = schur_matvec(p);
            double pq = tet_dot(p, q);
            if (pq <= 0.0) break;
            double step = rz / pq;
            y += step * p;
            r -= step * q;
            z = schur_apply(r);
            double rz_next = tet_dot(r, z);
            p = z + (rz_next / rz) * p;
            rz = rz_next;
        }
        return y;
    }

    const SaddleSystem& sys_;
    const LocalSubcomplex& local_;
    Communicator& comm_;
    int inner_iters_;
    Eigen::VectorXd ndiag_inv_;
};

} // namespace

Solution solve_partitioned(const SimplicialComplex& cx, const DualGeometry& geom,
                           const Conductivity& cond, const BoundaryTable& bcs,
                           const SolverConfig& config, int n_ranks,
                           const std::vector<std::pair<int, double>>& eliminations) {
    // Serial assembly validates the inputs once up front (so rank threads
    // cannot fail on bad input mid-collective) and provides the reference
    // system for the final residual.
    SaddleSystem global_sys = assemble(cx, geom, cond);
    apply_boundary(global_sys, cx, bcs);
    for (const auto& [face, value] : eliminations) eliminate_face(global_sys, face, value);

    if (n_ranks == 1) return solve(global_sys, config);
    if (config.schur_precond != SchurPrecondKind::Jacobi)
        throw ConfigError("the partitioned solver supports only the jacobi Schur "
                          "preconditioner (got " +
                          to_string(config.schur_precond) + ")");

    const bool pin = !global_sys.has_dirichlet;
    const PartitionPlan plan = block_partition(static_cast<int>(cx.cell_count(0)), n_ranks);
    Communicator comm(n_ranks);

    Eigen::VectorXd omega_global = Eigen::VectorXd::Zero(cx.cell_count(2));
    Eigen::VectorXd alpha_global = Eigen::VectorXd::Zero(cx.cell_count(3));
    KrylovResult krylov; // written by rank 0; identical on every rank

    auto rank_body = [&](int rank) {
        LocalSubcomplex local = build_local(cx, plan, rank);
        DualGeometry local_geom = compute_geometry(local.cx, geom.limiter);

        const int nf = static_cast<int>(local.cx.cell_count(2));
        const int nt = static_cast<int>(local.cx.cell_count(3));
        Conductivity local_cond;
        local_cond.kappa.resize(nf);
        local_cond.cracked.assign(nf, 0);
        for (int lf = 0; lf < nf; ++lf) {
            int gf = local.global_faces[lf];
            local_cond.kappa[lf] = cond.kappa[gf];
            if (gf < static_cast<int>(cond.cracked.size())) local_cond.cracked[lf] = cond.cracked[gf];
        }

        SaddleSystem sys = assemble(local.cx, local_geom, local_cond);
        apply_boundary(sys, local.cx, bcs, false);
        if (!eliminations.empty()) {
            std::map<int, int> face_local;
            for (int lf = 0; lf < nf; ++lf) face_local[local.global_faces[lf]] = lf;
            for (const auto& [face, value] : eliminations)
                if (auto it = face_local.find(face); it != face_local.end())
                    eliminate_face(sys, it->second, value);
        }
        if (pin) {
            for (int lt = 0; lt < nt; ++lt)
                if (local.global_tets[lt] == 0) pin_temperature(sys, lt, 0.0);
        }

        DistributedSaddleOperator op(sys, local, comm, config.schur_inner);
        Eigen::VectorXd x;
        KrylovResult result = fgmres(op, sys.rhs, x, config);

        // Owned entries land directly in the shared global vectors; ranks own
        // disjoint index sets, so the writes never collide.
        for (int lf = 0; lf < nf; ++lf)
            if (local.face_owned[lf]) omega_global[local.global_faces[lf]] = x[lf];
        for (int lt = 0; lt < nt; ++lt)
            if (local.tet_owned[lt]) alpha_global[local.global_tets[lt]] = x[nf + lt];
        if (rank == 0) krylov = std::move(result);
    };

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_ranks));
    for (int rank = 0; rank < n_ranks; ++rank)
        threads.emplace_back([&, rank] {
            try {
                rank_body(rank);
            } catch (const std::exception& e) {
                // A throwing rank would leave its peers blocked in a
                // collective; inputs were validated up front, so this is a
                // programming error and stopping hard is the safe option.
                std::fprintf(stderr, "rank %d failed: %s\n", rank, e.what());
                std::abort();
            }
        });
    for (auto& t : threads) t.join();

    const SaddleSystem* reference = &global_sys;
    SaddleSystem pinned;
    if (pin) {
        pinned = global_sys;
        pin_temperature(pinned, 0, 0.0);
        reference = &pinned;
    }

    Solution sol;
    sol.omega = std::move(omega_global);
    sol.alpha = std::move(alpha_global);
    sol.iterations = krylov.iterations;
    sol.converged = krylov.converged;
    sol.diagnostics = std::move(krylov.diagnostics);
    sol.residual_history = std::move(krylov.residual_history);
    sol.residual_norm = residual(*reference, sol);
    return sol;
}

} // namespace tetdec
