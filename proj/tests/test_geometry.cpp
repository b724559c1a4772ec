#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Geometry>

#include "doctest.h"

#include "tetdec/complex.hpp"
#include "tetdec/geometry.hpp"
#include "tetdec/mesh.hpp"

#include "meshgen.hpp"

using namespace tetdec;

namespace {

RawMesh regular_tet() {
    RawMesh mesh;
    mesh.nodes = {Vec3(0, 0, 0), Vec3(1, 0, 0),
                  Vec3(0.5, std::sqrt(3.0) / 2, 0),
                  Vec3(0.5, std::sqrt(3.0) / 6, std::sqrt(2.0 / 3.0))};
    mesh.tets = {{0, 1, 2, 3}};
    return mesh;
}

RawMesh quality_lattice(int n, double rel_jitter, std::uint64_t seed) {
    testing::LatticeOptions opt;
    opt.n = n;
    opt.jitter = rel_jitter / n;
    opt.seed = seed;
    return testing::lattice_mesh(opt);
}

} // namespace

TEST_CASE("circumcenter: analytic positions in low dimensions") {
    const std::vector<Vec3> segment = {Vec3(0, 0, 0), Vec3(2, 0, 0)};
    CHECK((circumcenter(segment) - Vec3(1, 0, 0)).norm() < 1e-14);

    const std::vector<Vec3> equilateral = {Vec3(0, 0, 0), Vec3(1, 0, 0),
                                           Vec3(0.5, std::sqrt(3.0) / 2, 0)};
    CHECK((circumcenter(equilateral) - Vec3(0.5, std::sqrt(3.0) / 6, 0)).norm() < 1e-14);

    const std::vector<Vec3> point = {Vec3(3, 4, 5)};
    CHECK((circumcenter(point) - Vec3(3, 4, 5)).norm() == 0.0);
}

TEST_CASE("circumcenter: equidistant from every vertex of random simplices") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec3> pts;
        for (int i = 0; i < 4; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
        const Vec3 e1 = pts[1] - pts[0], e2 = pts[2] - pts[0], e3 = pts[3] - pts[0];
        if (std::abs(e1.cross(e2).dot(e3)) < 1e-3) continue; // skip flat draws
        for (std::size_t k = 2; k <= pts.size(); ++k) {
            const std::span<const Vec3> simplex(pts.data(), k);
            const Vec3 c = circumcenter(simplex);
            const double r0 = (pts[0] - c).norm();
            for (std::size_t i = 1; i < k; ++i)
                CHECK((pts[i] - c).norm() == doctest::Approx(r0).epsilon(1e-11));
        }
    }
}

TEST_CASE("circumcenter: degenerate simplices are rejected") {
    const std::vector<Vec3> repeated = {Vec3(0, 0, 0), Vec3(0, 0, 0)};
    CHECK_THROWS_AS(circumcenter(repeated), MeshError);
    const std::vector<Vec3> collinear = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
    CHECK_THROWS_AS(circumcenter(collinear), MeshError);
    const std::vector<Vec3> coplanar = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0),
                                        Vec3(1, 1, 0)};
    CHECK_THROWS_AS(circumcenter(coplanar), MeshError);
}

TEST_CASE("regular tet: frozen dual lengths and Hodge entries") {
    const SimplicialComplex cx = build_complex(regular_tet());
    const DualGeometry geom = compute_geometry(cx);

    const double area = std::sqrt(3.0) / 4.0;
    const double dual_len = std::sqrt(1.0 / 24.0); // circumcenter height over each face
    for (int f = 0; f < 4; ++f) {
        CHECK(geom.primal_volume[2][f] == doctest::Approx(area).epsilon(1e-13));
        CHECK(geom.dual_volume[2][f] == doctest::Approx(dual_len).epsilon(1e-12));
        CHECK(geom.hodge[2][f] == doctest::Approx(dual_len / area).epsilon(1e-12));
    }
    const double volume = 1.0 / (6.0 * std::sqrt(2.0));
    CHECK(geom.primal_volume[3][0] == doctest::Approx(volume).epsilon(1e-13));
    CHECK(geom.hodge[3][0] == doctest::Approx(1.0 / volume).epsilon(1e-13));
    CHECK(geom.limited_count == 0);
}

TEST_CASE("dual volumes partition the domain volume") {
    std::vector<RawMesh> meshes;
    meshes.push_back(generate_cube(1));
    meshes.push_back(generate_cube(2));
    meshes.push_back(quality_lattice(2, 0.05, 2));
    for (const RawMesh& mesh : meshes) {
        const SimplicialComplex cx = build_complex(mesh);
        const DualGeometry geom = compute_geometry(cx);
        double vertex_duals = 0.0, edge_duals = 0.0, primal = 0.0;
        for (double v : geom.dual_volume[0]) vertex_duals += v;
        for (std::size_t e = 0; e < cx.edges.size(); ++e)
            edge_duals += geom.dual_volume[1][e] * geom.primal_volume[1][e] / 3.0;
        for (double v : geom.primal_volume[3]) primal += v;
        CHECK(primal == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(vertex_duals == doctest::Approx(1.0).epsilon(1e-10));
        // Edge support volumes: each edge-dual pair spans length * area / 3,
        // and those generalized pyramids also tile space.
        CHECK(edge_duals == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("structured cube carries exactly-zero dual edges and fires the limiter") {
    const SimplicialComplex cx = build_complex(generate_cube(2));
    const DualGeometry geom = compute_geometry(cx);
    CHECK(geom.limited_count > 0);
    CHECK(geom.limited_fraction() > 0.0);
    int exact_zeros = 0;
    for (std::size_t f = 0; f < cx.faces.size(); ++f) {
        if (std::abs(geom.dual_volume[2][f]) < 1e-13) ++exact_zeros;
        if (geom.face_limited[f]) {
            CHECK(geom.dual_volume[2][f] < geom.limiter);
            CHECK(geom.hodge[2][f] ==
                  doctest::Approx(geom.limiter / geom.primal_volume[2][f]).epsilon(1e-12));
        } else {
            CHECK(geom.hodge[2][f] ==
                  doctest::Approx(geom.dual_volume[2][f] / geom.primal_volume[2][f])
                      .epsilon(1e-12));
        }
        CHECK(geom.hodge[2][f] > 0.0);
    }
    CHECK(exact_zeros > 0);

    // A custom limiter value is honored verbatim.
    const DualGeometry wide = compute_geometry(cx, 1e-4);
    CHECK(wide.limiter == 1e-4);
    CHECK(wide.limited_count >= geom.limited_count);
}

TEST_CASE("jittered body-centered lattice has no limited entries") {
    const SimplicialComplex cx = build_complex(quality_lattice(2, 0.05, 2));
    const DualGeometry geom = compute_geometry(cx);
    CHECK(geom.limited_count == 0);
    for (std::size_t f = 0; f < cx.faces.size(); ++f) CHECK(geom.dual_volume[2][f] > 0.0);
    CHECK(geom.hodge[3].size() == cx.cell_count(3));
    for (std::size_t t = 0; t < cx.tets.size(); ++t)
        CHECK(geom.hodge[3][t] ==
              doctest::Approx(1.0 / geom.primal_volume[3][t]).epsilon(1e-12));
}

TEST_CASE("whitney reconstruction: zero, linear, and exact on constant fields") {
    const SimplicialComplex cx = build_complex(quality_lattice(2, 0.05, 2));

    Eigen::VectorXd zero = Eigen::VectorXd::Zero(cx.cell_count(2));
    for (int t = 0; t < int(cx.cell_count(3)); t += 7)
        CHECK(whitney_vector(cx, zero, t).norm() == 0.0);

    // Face fluxes of a constant field F: integral of F . n over each sorted-
    // tuple face, computed here from scratch.
    auto fluxes_of = [&](const Vec3& field) {
        Eigen::VectorXd omega(cx.cell_count(2));
        for (std::size_t f = 0; f < cx.faces.size(); ++f) {
            const auto& tri = cx.faces[f];
            const Vec3 n = (cx.positions[tri[1]] - cx.positions[tri[0]])
                               .cross(cx.positions[tri[2]] - cx.positions[tri[0]]);
            omega[f] = 0.5 * field.dot(n);
        }
        return omega;
    };

    const Vec3 fa(0.3, -1.2, 0.7), fb(-0.5, 0.25, 2.0);
    const Eigen::VectorXd wa = fluxes_of(fa), wb = fluxes_of(fb);
    for (int t = 0; t < int(cx.cell_count(3)); ++t) {
        CHECK((whitney_vector(cx, wa, t) - fa).norm() < 1e-12);
        const Vec3 lin = whitney_vector(cx, 2.0 * wa + 3.0 * wb, t);
        const Vec3 parts = 2.0 * whitney_vector(cx, wa, t) + 3.0 * whitney_vector(cx, wb, t);
        CHECK((lin - parts).norm() < 1e-12);
    }

    const std::vector<Vec3> all = whitney_flux_vectors(cx, wb);
    REQUIRE(all.size() == cx.cell_count(3));
    for (const Vec3& v : all) CHECK((v - fb).norm() < 1e-11);
}
