#include "tetdec/geometry.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace tetdec {

Vec3 circumcenter(std::span<const Vec3> points) {
    const int k = static_cast<int>(points.size()) - 1;
    if (k < 0 || k > 3) throw MeshError("circumcenter: need 1 to 4 points");
    if (k == 0) return points[0];

    // Solve 2 (p_i - p_0) . (c - p_0) = |p_i - p_0|^2 in the simplex's own
    // affine hull; the Gram matrix is singular exactly for degenerate input.
    Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    std::array<Vec3, 3> span_vecs;
    for (int i = 0; i < k; ++i) span_vecs[i] = points[i + 1] - points[0];
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) gram(i, j) = 2.0 * span_vecs[i].dot(span_vecs[j]);
        rhs(i) = span_vecs[i].squaredNorm();
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram.topLeftCorner(k, k));
    if (!lu.isInvertible())
        throw MeshError("circumcenter: degenerate simplex");
    Eigen::VectorXd x = lu.solve(rhs.head(k));

    Vec3 c = points[0];
    for (int i = 0; i < k; ++i) c += x(i) * span_vecs[i];
    return c;
}

namespace {

// Signed offset of `to` from `from` along the direction that leaves the
// affine hull of a simplex toward `opposite`. `tangent` spans the hull's
// direction space (size 0..2).
double signed_height(std::span<const Vec3> tangent, const Vec3& from, const Vec3& to,
                     const Vec3& opposite) {
    Vec3 w = opposite - from;
    // Gram-Schmidt against the tangent directions.
    std::array<Vec3, 2> basis;
    int nb = 0;
    for (const Vec3& t : tangent) {
        Vec3 u = t;
        for (int i = 0; i < nb; ++i) u -= u.dot(basis[i]) * basis[i];
        double n = u.norm();
        if (n == 0.0) throw MeshError("degenerate simplex in dual volume computation");
        basis[nb++] = u / n;
    }
    for (int i = 0; i < nb; ++i) w -= w.dot(basis[i]) * basis[i];
    double n = w.norm();
    if (n == 0.0) throw MeshError("degenerate chain in dual volume computation");
    return (to - from).dot(w / n);
}

double face_area(const SimplicialComplex& cx, int f) {
    const auto& v = cx.faces[f];
    Vec3 a = cx.positions[v[1]] - cx.positions[v[0]];
    Vec3 b = cx.positions[v[2]] - cx.positions[v[0]];
    return 0.5 * a.cross(b).norm();
}

double tet_volume(const SimplicialComplex& cx, int t) {
    const auto& v = cx.tets[t];
    Eigen::Matrix3d m;
    m.col(0) = cx.positions[v[1]] - cx.positions[v[0]];
    m.col(1) = cx.positions[v[2]] - cx.positions[v[0]];
    m.col(2) = cx.positions[v[3]] - cx.positions[v[0]];
    return std::abs(m.determinant()) / 6.0;
}

} // namespace

DualGeometry compute_geometry(const SimplicialComplex& cx, double limiter) {
    DualGeometry g;
    g.limiter = limiter;

    const std::size_t n0 = cx.cell_count(0), n1 = cx.cell_count(1);
    const std::size_t n2 = cx.cell_count(2), n3 = cx.cell_count(3);

    g.edge_circumcenters.resize(n1);
    for (std::size_t e = 0; e < n1; ++e)
        g.edge_circumcenters[e] =
            0.5 * (cx.positions[cx.edges[e][0]] + cx.positions[cx.edges[e][1]]);

    g.face_circumcenters.resize(n2);
    for (std::size_t f = 0; f < n2; ++f) {
        std::array<Vec3, 3> p = {cx.positions[cx.faces[f][0]], cx.positions[cx.faces[f][1]],
                                 cx.positions[cx.faces[f][2]]};
        g.face_circumcenters[f] = circumcenter(p);
    }

    g.tet_circumcenters.resize(n3);
    for (std::size_t t = 0; t < n3; ++t) {
        std::array<Vec3, 4> p = {cx.positions[cx.tets[t][0]], cx.positions[cx.tets[t][1]],
                                 cx.positions[cx.tets[t][2]], cx.positions[cx.tets[t][3]]};
        g.tet_circumcenters[t] = circumcenter(p);
    }

    g.primal_volume[0].assign(n0, 1.0);
    g.primal_volume[1].resize(n1);
    for (std::size_t e = 0; e < n1; ++e)
        g.primal_volume[1][e] =
            (cx.positions[cx.edges[e][1]] - cx.positions[cx.edges[e][0]]).norm();
    g.primal_volume[2].resize(n2);
    for (std::size_t f = 0; f < n2; ++f) g.primal_volume[2][f] = face_area(cx, f);
    g.primal_volume[3].resize(n3);
    for (std::size_t t = 0; t < n3; ++t) g.primal_volume[3][t] = tet_volume(cx, t);

    g.dual_volume[0].assign(n0, 0.0);
    g.dual_volume[1].assign(n1, 0.0);
    g.dual_volume[2].assign(n2, 0.0);
    g.dual_volume[3].assign(n3, 1.0);

    // Accumulate elementary dual pieces chain by chain. Local vertex sets are
    // small; indices below name positions within the sorted tuples.
    for (std::size_t t = 0; t < n3; ++t) {
        const auto& tv = cx.tets[t];
        const Vec3& ct = g.tet_circumcenters[t];
        for (int df = 0; df < 4; ++df) {
            std::array<int, 3> fv;
            int opp_f = tv[df];
            for (int i = 0, j = 0; i < 4; ++i)
                if (i != df) fv[j++] = tv[i];
            int f = cx.face_index(fv);
            const Vec3& cf = g.face_circumcenters[f];

            std::array<Vec3, 2> ftan = {cx.positions[fv[1]] - cx.positions[fv[0]],
                                        cx.positions[fv[2]] - cx.positions[fv[0]]};
            double h2 = signed_height(std::span<const Vec3>(ftan.data(), 2), cf, ct,
                                      cx.positions[opp_f]);
            g.dual_volume[2][f] += h2;

            for (int de = 0; de < 3; ++de) {
                std::array<int, 2> ev;
                int opp_e = fv[de];
                for (int i = 0, j = 0; i < 3; ++i)
                    if (i != de) ev[j++] = fv[i];
                int e = cx.edge_index(ev);
                const Vec3& ce = g.edge_circumcenters[e];

                std::array<Vec3, 1> etan = {cx.positions[ev[1]] - cx.positions[ev[0]]};
                double h1 = signed_height(std::span<const Vec3>(etan.data(), 1), ce, cf,
                                          cx.positions[opp_e]);
                g.dual_volume[1][e] += 0.5 * h1 * h2;

                for (int dv = 0; dv < 2; ++dv) {
                    int v = ev[dv];
                    int opp_v = ev[1 - dv];
                    double h0 = signed_height(std::span<const Vec3>(), cx.positions[v], ce,
                                              cx.positions[opp_v]);
                    g.dual_volume[0][v] += h0 * h1 * h2 / 6.0;
                }
            }
        }
    }

    g.hodge[0] = g.dual_volume[0];
    g.hodge[1].resize(n1);
    for (std::size_t e = 0; e < n1; ++e)
        g.hodge[1][e] = g.dual_volume[1][e] / g.primal_volume[1][e];

    g.hodge[2].resize(n2);
    g.face_limited.assign(n2, 0);
    for (std::size_t f = 0; f < n2; ++f) {
        double len = g.dual_volume[2][f];
        if (len < limiter) {
            len = limiter;
            g.face_limited[f] = 1;
            ++g.limited_count;
        }
        g.hodge[2][f] = len / g.primal_volume[2][f];
    }

    g.hodge[3].resize(n3);
    for (std::size_t t = 0; t < n3; ++t) g.hodge[3][t] = 1.0 / g.primal_volume[3][t];

    return g;
}

Vec3 whitney_vector(const SimplicialComplex& cx, const Eigen::VectorXd& omega, int tet) {
    const auto& tv = cx.tets[tet];

    Eigen::Matrix3d m;
    m.col(0) = cx.positions[tv[1]] - cx.positions[tv[0]];
    m.col(1) = cx.positions[tv[2]] - cx.positions[tv[0]];
    m.col(2) = cx.positions[tv[3]] - cx.positions[tv[0]];
    Eigen::Matrix3d minv = m.inverse();

    // Barycentric gradients: grad lambda_{1..3} are the rows of m^{-1} and
    // the four gradients sum to zero.
    std::array<Vec3, 4> grad;
    for (int i = 0; i < 3; ++i) grad[i + 1] = minv.row(i);
    grad[0] = -(grad[1] + grad[2] + grad[3]);

    // At the barycenter all lambda equal 1/4, so the Whitney 2-form of face
    // (a,b,c) evaluates to (gb x gc + gc x ga + ga x gb) / 2.
    Vec3 v = Vec3::Zero();
    for (int df = 0; df < 4; ++df) {
        std::array<int, 3> local;
        for (int i = 0, j = 0; i < 4; ++i)
            if (i != df) local[j++] = i;
        int f = cx.face_index({tv[local[0]], tv[local[1]], tv[local[2]]});
        const Vec3& ga = grad[local[0]];
        const Vec3& gb = grad[local[1]];
        const Vec3& gc = grad[local[2]];
        v += omega[f] * 0.5 * (gb.cross(gc) + gc.cross(ga) + ga.cross(gb));
    }
    return v;
}

std::vector<Vec3> whitney_flux_vectors(const SimplicialComplex& cx,
                                       const Eigen::VectorXd& omega) {
    std::vector<Vec3> out(cx.cell_count(3));
    for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = whitney_vector(cx, omega, static_cast<int>(t));
    return out;
}

} // namespace tetdec
