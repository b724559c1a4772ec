#include "tetdec/schur.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tetdec {

Eigen::SparseMatrix<double> schur_complement(const SaddleSystem& sys) {
    for (int f = 0; f < sys.n_faces; ++f)
        if (!sys.eliminated[f] && sys.a_diag[f] == 0.0)
            throw SolverError("zero diagonal on active face " + std::to_string(f));

    Eigen::SparseMatrix<double, Eigen::RowMajor> ainv_b = sys.b;
    for (int f = 0; f < sys.n_faces; ++f) {
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(ainv_b, f); it;
             ++it)
            it.valueRef() /= sys.a_diag[f];
    }

    Eigen::SparseMatrix<double> s = -(sys.bt * ainv_b);
    for (int t = 0; t < sys.n_tets; ++t)
        if (sys.c_diag[t] != 0.0) s.coeffRef(t, t) += sys.c_diag[t];
    s.prune(0.0);
    return s;
}

namespace {

// Incomplete Cholesky with zero fill on the lower triangle of a symmetric
// matrix. Non-positive pivots (possible for rows isolated by cracks or after
// the dropped fill) fall back to a unit pivot, which degrades the
// preconditioner locally but never produces NaN.
Eigen::SparseMatrix<double> ic0_factor(const Eigen::SparseMatrix<double, Eigen::RowMajor>& n) {
    const int size = static_cast<int>(n.rows());
    std::vector<std::vector<std::pair<int, double>>> rows(size);
    std::vector<double> diag(size, 1.0);
    std::vector<Eigen::Triplet<double>> trips;

    auto sparse_dot = [](const std::vector<std::pair<int, double>>& a,
                         const std::vector<std::pair<int, double>>& b) {
        double s = 0.0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) ++i;
            else if (a[i].first > b[j].first) ++j;
            else s += a[i++].second * b[j++].second;
        }
        return s;
    };

    for (int j = 0; j < size; ++j) {
        double njj = 0.0;
        std::vector<std::pair<int, double>> below; // (i, N(i,j)) for i > j
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(n, j); it; ++it) {
            if (it.col() == j) njj = it.value();
            else if (it.col() > j) below.emplace_back(static_cast<int>(it.col()), it.value());
        }
        double d = njj - sparse_dot(rows[j], rows[j]);
        diag[j] = d > 0.0 ? std::sqrt(d) : 1.0;
        trips.emplace_back(j, j, diag[j]);
        for (const auto& [i, nij] : below) {
            double lij = (nij - sparse_dot(rows[i], rows[j])) / diag[j];
            rows[i].emplace_back(j, lij);
            trips.emplace_back(i, j, lij);
        }
    }

    Eigen::SparseMatrix<double> lower(size, size);
    lower.setFromTriplets(trips.begin(), trips.end());
    return lower;
}

void ic0_solve(const Eigen::SparseMatrix<double>& lower, const Eigen::VectorXd& g,
               Eigen::VectorXd& y) {
    const int size = static_cast<int>(lower.rows());
    y = g;
    // Forward L t = g, column oriented: the first entry of each column is the
    // diagonal by construction.
    for (int j = 0; j < size; ++j) {
        Eigen::SparseMatrix<double>::InnerIterator it(lower, j);
        y(j) /= it.value();
        const double yj = y(j);
        for (++it; it; ++it) y(it.row()) -= it.value() * yj;
    }
    // Backward L^T y = t using the columns of L as the rows of L^T.
    for (int j = size - 1; j >= 0; --j) {
        double s = y(j);
        Eigen::SparseMatrix<double>::InnerIterator it(lower, j);
        const double djj = it.value();
        for (++it; it; ++it) s -= it.value() * y(it.row());
        y(j) = s / djj;
    }
}

// Sparse approximate inverse with the sparsity of the matrix itself: each
// column solves a small least-squares problem over the rows its pattern can
// reach. Empty rows (isolated tets) get a unit diagonal.
Eigen::SparseMatrix<double, Eigen::RowMajor>
spai0_build(const Eigen::SparseMatrix<double, Eigen::RowMajor>& n) {
    const int size = static_cast<int>(n.rows());
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<int> position(size, -1);

    for (int j = 0; j < size; ++j) {
        std::vector<int> pattern; // column pattern of column j (= row j by symmetry)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(n, j); it; ++it)
            pattern.push_back(static_cast<int>(it.col()));
        if (pattern.empty()) {
            trips.emplace_back(j, j, 1.0);
            continue;
        }

        std::vector<int> touched; // union of the patterns of the involved columns
        for (int k : pattern) {
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(n, k); it;
                 ++it) {
                int row = static_cast<int>(it.col());
                if (position[row] == -1) {
                    position[row] = static_cast<int>(touched.size());
                    touched.push_back(row);
                }
            }
        }

        Eigen::MatrixXd local = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(touched.size()),
                                                      static_cast<Eigen::Index>(pattern.size()));
        for (std::size_t c = 0; c < pattern.size(); ++c)
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(n, pattern[c]);
                 it; ++it)
                local(position[static_cast<int>(it.col())], static_cast<Eigen::Index>(c)) =
                    it.value();

        Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(touched.size()));
        e(position[j]) = 1.0;
        Eigen::VectorXd m = local.colPivHouseholderQr().solve(e);
        for (std::size_t c = 0; c < pattern.size(); ++c)
            trips.emplace_back(pattern[c], j, m(static_cast<Eigen::Index>(c)));

        for (int row : touched) position[row] = -1;
    }

    Eigen::SparseMatrix<double, Eigen::RowMajor> m(size, size);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

} // namespace

SchurPreconditioner::SchurPreconditioner(const SaddleSystem& sys, SchurPrecondKind kind,
                                         int inner_iters)
    : kind_(kind), inner_iters_(inner_iters) {
    n_ = (-schur_complement(sys)).eval();
    switch (kind_) {
    case SchurPrecondKind::Jacobi: {
        inv_diag_.resize(n_.rows());
        for (int t = 0; t < static_cast<int>(n_.rows()); ++t) {
            double d = n_.coeff(t, t);
            inv_diag_[t] = d != 0.0 ? 1.0 / d : 1.0;
        }
        break;
    }
    case SchurPrecondKind::IncompleteCholesky:
        ic_lower_ = ic0_factor(n_);
        break;
    case SchurPrecondKind::SparseApproximateInverse:
        spai_ = spai0_build(n_);
        break;
    }
}

void SchurPreconditioner::apply_once(const Eigen::VectorXd& g, Eigen::VectorXd& y) const {
    switch (kind_) {
    case SchurPrecondKind::Jacobi:
        y = inv_diag_.cwiseProduct(g);
        break;
    case SchurPrecondKind::IncompleteCholesky:
        ic0_solve(ic_lower_, g, y);
        break;
    case SchurPrecondKind::SparseApproximateInverse:
        y = spai_ * g;
        break;
    }
}

void SchurPreconditioner::solve_normalized(const Eigen::VectorXd& g, Eigen::VectorXd& y) const {
    if (inner_iters_ <= 0) {
        apply_once(g, y);
        return;
    }
    // Fixed-count preconditioned conjugate gradients on N y = g. The count is
    // fixed (no tolerance test) so the preconditioner varies smoothly, which
    // the flexible outer iteration tolerates.
    y = Eigen::VectorXd::Zero(g.size());
    Eigen::VectorXd r = g, z(g.size()), q(g.size());
    apply_once(r, z);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    for (int k = 0; k < inner_iters_; ++k) {
        if (rz == 0.0) break;
        q = n_ * p;
        double pq = p.dot(q);
        if (pq <= 0.0) break; // guard against the unit-pivot fallback rows
        double step = rz / pq;
        y += step * p;
        r -= step * q;
        apply_once(r, z);
        double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
}

SaddleOperator::SaddleOperator(const SaddleSystem& sys, const SolverConfig& config)
    : sys_(sys), schur_(sys, config.schur_precond, config.schur_inner) {}

void SaddleOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y = sys_.multiply(x);
}

void SaddleOperator::precondition(const Eigen::VectorXd& r, Eigen::VectorXd& z) const {
    const auto r_omega = r.head(sys_.n_faces);
    const auto r_alpha = r.tail(sys_.n_tets);

    Eigen::VectorXd scaled = r_omega.cwiseQuotient(sys_.a_diag);
    Eigen::VectorXd g = sys_.bt * scaled - r_alpha;
    Eigen::VectorXd y_alpha;
    schur_.solve_normalized(g, y_alpha);

    z.resize(sys_.unknowns());
    z.tail(sys_.n_tets) = y_alpha;
    z.head(sys_.n_faces) =
        (r_omega - sys_.b * y_alpha).cwiseQuotient(sys_.a_diag);
}

double SaddleOperator::dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return a.dot(b);
}

} // namespace tetdec
