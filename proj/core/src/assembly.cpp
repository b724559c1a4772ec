#include "tetdec/assembly.hpp"

#include <map>
#include <string>

namespace tetdec {

Conductivity Conductivity::uniform(std::size_t n_faces, double kappa_value) {
    Conductivity c;
    c.kappa = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_faces), kappa_value);
    c.cracked.assign(n_faces, 0);
    return c;
}

Eigen::VectorXd SaddleSystem::multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(unknowns());
    const auto omega = x.head(n_faces);
    const auto alpha = x.tail(n_tets);
    y.head(n_faces) = a_diag.cwiseProduct(omega) + b * alpha;
    y.tail(n_tets) = bt * omega + c_diag.cwiseProduct(alpha);
    return y;
}

Eigen::SparseMatrix<double> SaddleSystem::full_matrix() const {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(n_faces + 2 * b.nonZeros() + n_tets));
    for (int f = 0; f < n_faces; ++f) trips.emplace_back(f, f, a_diag[f]);
    for (int f = 0; f < n_faces; ++f) {
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(b, f); it; ++it) {
            if (it.value() == 0.0) continue; // structural zero from an elimination
            trips.emplace_back(f, n_faces + static_cast<int>(it.col()), it.value());
            trips.emplace_back(n_faces + static_cast<int>(it.col()), f, it.value());
        }
    }
    for (int t = 0; t < n_tets; ++t)
        if (c_diag[t] != 0.0) trips.emplace_back(n_faces + t, n_faces + t, c_diag[t]);
    Eigen::SparseMatrix<double> m(unknowns(), unknowns());
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

Eigen::MatrixXd SaddleSystem::dense_matrix() const { return Eigen::MatrixXd(full_matrix()); }

SaddleSystem assemble(const SimplicialComplex& cx, const DualGeometry& geom,
                      const Conductivity& cond) {
    SaddleSystem sys;
    sys.n_faces = static_cast<int>(cx.cell_count(2));
    sys.n_tets = static_cast<int>(cx.cell_count(3));

    if (cond.kappa.size() != sys.n_faces)
        throw ConfigError("conductivity has " + std::to_string(cond.kappa.size()) +
                          " entries for " + std::to_string(sys.n_faces) + " faces");

    sys.a_diag.resize(sys.n_faces);
    for (int f = 0; f < sys.n_faces; ++f) {
        bool is_cracked = f < static_cast<int>(cond.cracked.size()) && cond.cracked[f];
        if (!is_cracked && cond.kappa[f] <= 0.0)
            throw ConfigError("non-positive conductivity on face " + std::to_string(f));
        sys.a_diag[f] = is_cracked ? 1.0 : geom.hodge[2][f] / cond.kappa[f];
    }

    // Incidence entries: the combinatorial boundary sign times the negated
    // geometric orientation gives +1 exactly where the sorted-tuple face
    // normal points into the tet.
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(4 * sys.n_tets));
    for (int t = 0; t < sys.n_tets; ++t) {
        for (Eigen::SparseMatrix<int>::InnerIterator it(cx.boundary3, t); it; ++it) {
            double val = -static_cast<double>(cx.tet_orientation[t] * it.value());
            trips.emplace_back(static_cast<int>(it.row()), t, val);
        }
    }
    sys.b.resize(sys.n_faces, sys.n_tets);
    sys.b.setFromTriplets(trips.begin(), trips.end());
    sys.bt = sys.b.transpose();

    sys.c_diag = Eigen::VectorXd::Zero(sys.n_tets);
    sys.rhs = Eigen::VectorXd::Zero(sys.unknowns());
    sys.eliminated.assign(sys.n_faces, 0);
    sys.cracked.assign(sys.n_faces, 0);

    for (int f = 0; f < sys.n_faces; ++f)
        if (f < static_cast<int>(cond.cracked.size()) && cond.cracked[f]) {
            eliminate_face(sys, f, 0.0);
            sys.cracked[f] = 1;
        }
    return sys;
}

void apply_dirichlet(SaddleSystem& sys, const SimplicialComplex& cx,
                     const std::vector<int>& faces, double value) {
    for (int f : faces) {
        if (f < 0 || f >= sys.n_faces)
            throw ConfigError("Dirichlet face index out of range: " + std::to_string(f));
        if (cx.face_tets[f][1] != -1)
            throw ConfigError("Dirichlet condition on interior face " + std::to_string(f));
        if (sys.eliminated[f])
            throw ConfigError("Dirichlet condition on eliminated face " + std::to_string(f));
        int t = cx.face_tets[f][0];
        sys.rhs[f] += sys.b.coeff(f, t) * value;
    }
    if (!faces.empty()) sys.has_dirichlet = true;
}

void eliminate_face(SaddleSystem& sys, int face, double value) {
    if (face < 0 || face >= sys.n_faces)
        throw ConfigError("face index out of range: " + std::to_string(face));
    if (sys.eliminated[face])
        throw ConfigError("face " + std::to_string(face) + " already eliminated");

    EliminationRecord rec;
    rec.face = face;
    rec.a_old = sys.a_diag[face];
    rec.rhs_face_old = sys.rhs[face];

    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(sys.b, face); it;
         ++it) {
        int t = static_cast<int>(it.col());
        rec.tet_entries.push_back({static_cast<double>(t), it.value(), sys.rhs[sys.n_faces + t]});
        sys.rhs[sys.n_faces + t] -= it.value() * value;
        it.valueRef() = 0.0;
        sys.bt.coeffRef(t, face) = 0.0;
    }

    sys.a_diag[face] = 1.0;
    sys.rhs[face] = value;
    sys.eliminated[face] = 1;
    sys.journal.push_back(std::move(rec));
}

void crack_face(SaddleSystem& sys, const SimplicialComplex& cx, int face) {
    if (face < 0 || face >= sys.n_faces)
        throw ConfigError("face index out of range: " + std::to_string(face));
    if (cx.face_tets[face][1] == -1)
        throw ConfigError("cannot crack boundary face " + std::to_string(face));
    if (sys.cracked[face])
        throw ConfigError("face " + std::to_string(face) + " already cracked");
    eliminate_face(sys, face, 0.0);
    sys.cracked[face] = 1;
}

void undo_last_elimination(SaddleSystem& sys) {
    if (sys.journal.empty()) throw ConfigError("no elimination to undo");
    const EliminationRecord rec = std::move(sys.journal.back());
    sys.journal.pop_back();

    sys.a_diag[rec.face] = rec.a_old;
    sys.rhs[rec.face] = rec.rhs_face_old;
    for (const auto& e : rec.tet_entries) {
        int t = static_cast<int>(e[0]);
        sys.b.coeffRef(rec.face, t) = e[1];
        sys.bt.coeffRef(t, rec.face) = e[1];
        sys.rhs[sys.n_faces + t] = e[2];
    }
    sys.eliminated[rec.face] = 0;
    sys.cracked[rec.face] = 0;
}

void pin_temperature(SaddleSystem& sys, int tet, double value) {
    if (tet < 0 || tet >= sys.n_tets)
        throw ConfigError("tet index out of range: " + std::to_string(tet));
    if (sys.c_diag[tet] != 0.0)
        throw ConfigError("tet " + std::to_string(tet) + " already pinned");

    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(sys.bt, tet); it;
         ++it) {
        int f = static_cast<int>(it.col());
        sys.rhs[f] -= it.value() * value;
        it.valueRef() = 0.0;
        sys.b.coeffRef(f, tet) = 0.0;
    }
    // The negative sign keeps the lower-right block negative semidefinite,
    // so -Schur stays positive definite for the preconditioners.
    sys.c_diag[tet] = -1.0;
    sys.rhs[sys.n_faces + tet] = -value;
}

void apply_boundary(SaddleSystem& sys, const SimplicialComplex& cx, const BoundaryTable& table,
                    bool require_all_markers) {
    std::map<int, std::vector<int>> faces_by_marker;
    for (std::size_t f = 0; f < cx.face_markers.size(); ++f)
        if (cx.face_markers[f] != 0)
            faces_by_marker[cx.face_markers[f]].push_back(static_cast<int>(f));

    // Validate the whole table first so a bad table leaves the system intact.
    for (const auto& [marker, faces] : faces_by_marker)
        if (!table.count(marker))
            throw ConfigError("mesh has boundary marker " + std::to_string(marker) +
                              " but no boundary condition was given for it");
    for (const auto& [marker, tag] : table) {
        if (tag.kind == BoundaryKind::Interior)
            throw ConfigError("boundary table entries must be Dirichlet or Neumann");
        if (require_all_markers && !faces_by_marker.count(marker))
            throw ConfigError("boundary condition for marker " + std::to_string(marker) +
                              " matches no face");
    }

    for (const auto& [marker, tag] : table) {
        auto it = faces_by_marker.find(marker);
        if (it == faces_by_marker.end()) continue;
        switch (tag.kind) {
        case BoundaryKind::Dirichlet:
            apply_dirichlet(sys, cx, it->second, tag.value);
            break;
        case BoundaryKind::Neumann:
            for (int f : it->second) eliminate_face(sys, f, tag.value);
            break;
        case BoundaryKind::Interior:
            throw ConfigError("boundary table entries must be Dirichlet or Neumann");
        }
    }
}

} // namespace tetdec
