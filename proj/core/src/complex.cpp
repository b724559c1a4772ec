#include "tetdec/complex.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Dense>

namespace tetdec {

namespace {

template <std::size_t K>
std::array<int, K> sorted_tuple(std::array<int, K> t) {
    std::sort(t.begin(), t.end());
    return t;
}

template <std::size_t K>
int lookup(const std::vector<std::array<int, K>>& cells, std::array<int, K> key) {
    key = sorted_tuple(key);
    auto it = std::lower_bound(cells.begin(), cells.end(), key);
    if (it == cells.end() || *it != key) return -1;
    return static_cast<int>(it - cells.begin());
}

} // namespace

std::size_t SimplicialComplex::cell_count(int p) const {
    switch (p) {
        case 0: return positions.size();
        case 1: return edges.size();
        case 2: return faces.size();
        case 3: return tets.size();
        default: throw MeshError("cell_count: dimension must be in [0,3]");
    }
}

int SimplicialComplex::face_index(std::array<int, 3> vertices) const {
    return lookup(faces, vertices);
}

int SimplicialComplex::edge_index(std::array<int, 2> vertices) const {
    return lookup(edges, vertices);
}

SimplicialComplex build_complex(const RawMesh& mesh) {
    mesh.validate();

    SimplicialComplex cx;
    cx.positions = mesh.nodes;

    cx.tets.reserve(mesh.tets.size());
    for (const auto& t : mesh.tets) cx.tets.push_back(sorted_tuple(t));
    std::sort(cx.tets.begin(), cx.tets.end());
    if (std::adjacent_find(cx.tets.begin(), cx.tets.end()) != cx.tets.end())
        throw MeshError("duplicate tetrahedron in mesh");

    cx.faces.reserve(cx.tets.size() * 4);
    cx.edges.reserve(cx.tets.size() * 6);
    for (const auto& t : cx.tets) {
        cx.faces.push_back({t[1], t[2], t[3]});
        cx.faces.push_back({t[0], t[2], t[3]});
        cx.faces.push_back({t[0], t[1], t[3]});
        cx.faces.push_back({t[0], t[1], t[2]});
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) cx.edges.push_back({t[a], t[b]});
    }
    std::sort(cx.faces.begin(), cx.faces.end());
    cx.faces.erase(std::unique(cx.faces.begin(), cx.faces.end()), cx.faces.end());
    std::sort(cx.edges.begin(), cx.edges.end());
    cx.edges.erase(std::unique(cx.edges.begin(), cx.edges.end()), cx.edges.end());

    const int n0 = static_cast<int>(cx.positions.size());
    const int n1 = static_cast<int>(cx.edges.size());
    const int n2 = static_cast<int>(cx.faces.size());
    const int n3 = static_cast<int>(cx.tets.size());

    // Orientation of the sorted vertex order relative to positive volume.
    cx.tet_orientation.resize(n3);
    for (int t = 0; t < n3; ++t) {
        const auto& v = cx.tets[t];
        Eigen::Matrix3d m;
        m.col(0) = cx.positions[v[1]] - cx.positions[v[0]];
        m.col(1) = cx.positions[v[2]] - cx.positions[v[0]];
        m.col(2) = cx.positions[v[3]] - cx.positions[v[0]];
        double det = m.determinant();
        if (det == 0.0)
            throw MeshError("degenerate tetrahedron (zero volume) at index " +
                            std::to_string(t));
        cx.tet_orientation[t] = det > 0 ? 1 : -1;
    }

    // Incidence with alternating signs over sorted tuples: the sub-simplex
    // obtained by deleting vertex i picks up (-1)^i.
    std::vector<Eigen::Triplet<int>> trip;

    trip.reserve(static_cast<std::size_t>(n1) * 2);
    for (int e = 0; e < n1; ++e) {
        trip.emplace_back(cx.edges[e][1], e, 1);
        trip.emplace_back(cx.edges[e][0], e, -1);
    }
    cx.boundary1.resize(n0, n1);
    cx.boundary1.setFromTriplets(trip.begin(), trip.end());

    trip.clear();
    trip.reserve(static_cast<std::size_t>(n2) * 3);
    for (int f = 0; f < n2; ++f) {
        const auto& v = cx.faces[f];
        trip.emplace_back(lookup(cx.edges, {v[1], v[2]}), f, 1);
        trip.emplace_back(lookup(cx.edges, {v[0], v[2]}), f, -1);
        trip.emplace_back(lookup(cx.edges, {v[0], v[1]}), f, 1);
    }
    cx.boundary2.resize(n1, n2);
    cx.boundary2.setFromTriplets(trip.begin(), trip.end());

    trip.clear();
    trip.reserve(static_cast<std::size_t>(n3) * 4);
    cx.face_tets.assign(n2, {-1, -1});
    for (int t = 0; t < n3; ++t) {
        const auto& v = cx.tets[t];
        const std::array<std::array<int, 3>, 4> fs = {{{v[1], v[2], v[3]},
                                                       {v[0], v[2], v[3]},
                                                       {v[0], v[1], v[3]},
                                                       {v[0], v[1], v[2]}}};
        int sign = 1;
        for (const auto& fv : fs) {
            int f = lookup(cx.faces, fv);
            trip.emplace_back(f, t, sign);
            sign = -sign;
            auto& inc = cx.face_tets[f];
            if (inc[0] == -1) {
                inc[0] = t;
            } else if (inc[1] == -1) {
                inc[1] = t;
            } else {
                throw MeshError("non-manifold input: face shared by more than two tets");
            }
        }
    }
    cx.boundary3.resize(n2, n3);
    cx.boundary3.setFromTriplets(trip.begin(), trip.end());

    cx.face_markers.assign(n2, 0);
    for (std::size_t i = 0; i < mesh.boundary_faces.size(); ++i) {
        int f = lookup(cx.faces, mesh.boundary_faces[i]);
        if (f < 0)
            throw MeshError("boundary face record " + std::to_string(i) +
                            " is not a face of any tetrahedron");
        if (cx.face_tets[f][1] != -1 && mesh.face_markers[i] != 0)
            throw MeshError("boundary face record " + std::to_string(i) +
                            " carries a marker but lies in the interior");
        cx.face_markers[f] = mesh.face_markers[i];
    }

    return cx;
}

Eigen::SparseMatrix<int> coboundary(const SimplicialComplex& complex, int p) {
    switch (p) {
        case 0: return complex.boundary1.transpose();
        case 1: return complex.boundary2.transpose();
        case 2: return complex.boundary3.transpose();
        default: throw MeshError("coboundary: p must be in [0,2]");
    }
}

std::vector<int> non_boundary_faces(const SimplicialComplex& complex) {
    std::vector<int> out;
    out.reserve(complex.faces.size());
    for (std::size_t f = 0; f < complex.faces.size(); ++f) {
        const auto& inc = complex.face_tets[f];
        if (inc[0] == -1)
            throw MeshError("face with no incident tet");
        if (inc[1] != -1) out.push_back(static_cast<int>(f));
    }
    return out;
}

} // namespace tetdec
