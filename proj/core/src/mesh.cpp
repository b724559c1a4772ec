#include "tetdec/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace tetdec {

namespace {

void check_range(int v, std::size_t n_nodes, const char* what) {
    if (v < 0 || static_cast<std::size_t>(v) >= n_nodes)
        throw MeshError(std::string(what) + ": node index " + std::to_string(v) +
                        " out of range [0, " + std::to_string(n_nodes) + ")");
}

template <std::size_t K>
std::array<int, K> sorted_tuple(std::array<int, K> t) {
    std::sort(t.begin(), t.end());
    return t;
}

} // namespace

void RawMesh::validate() const {
    if (!tet_attributes.empty() && tet_attributes.size() != tets.size())
        throw MeshError("tet attribute count does not match tet count");
    if (face_markers.size() != boundary_faces.size())
        throw MeshError("face marker count does not match boundary face count");

    for (const auto& t : tets) {
        for (int v : t) check_range(v, nodes.size(), "tet");
        auto s = sorted_tuple(t);
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw MeshError("tet has repeated vertices");
    }
    for (const auto& f : boundary_faces) {
        for (int v : f) check_range(v, nodes.size(), "boundary face");
        auto s = sorted_tuple(f);
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw MeshError("boundary face has repeated vertices");
    }
    for (const auto& e : edges) {
        for (int v : e) check_range(v, nodes.size(), "edge");
        if (e[0] == e[1]) throw MeshError("edge has repeated vertices");
    }
}

RawMesh generate_cube(int n) {
    if (n < 1) throw MeshError("generate_cube: n must be >= 1");

    RawMesh m;
    const int nn = n + 1;
    auto node_id = [nn](int i, int j, int k) { return (i * nn + j) * nn + k; };

    m.nodes.reserve(static_cast<std::size_t>(nn) * nn * nn);
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j)
            for (int k = 0; k < nn; ++k)
                m.nodes.emplace_back(double(i) / n, double(j) / n, double(k) / n);

    // Six tets around the main diagonal c -> c+(1,1,1): one per permutation of
    // the axis steps. Identical in every cell, so shared cell faces meet with
    // matching diagonals and the mesh conforms.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const int base[3] = {i, j, k};
                for (const auto& p : perms) {
                    int c[3] = {base[0], base[1], base[2]};
                    std::array<int, 4> tet;
                    tet[0] = node_id(c[0], c[1], c[2]);
                    for (int s = 0; s < 3; ++s) {
                        ++c[p[s]];
                        tet[s + 1] = node_id(c[0], c[1], c[2]);
                    }
                    m.tets.push_back(tet);
                }
            }
        }
    }

    // Boundary triangles: two per grid square per side, split along the
    // diagonal the Kuhn tets induce (low corner to high corner).
    auto add_side = [&](int marker, auto corner) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                int v00 = corner(a, b), v10 = corner(a + 1, b);
                int v01 = corner(a, b + 1), v11 = corner(a + 1, b + 1);
                m.boundary_faces.push_back({v00, v10, v11});
                m.face_markers.push_back(marker);
                m.boundary_faces.push_back({v00, v11, v01});
                m.face_markers.push_back(marker);
            }
        }
    };
    add_side(1, [&](int a, int b) { return node_id(0, a, b); });
    add_side(2, [&](int a, int b) { return node_id(n, a, b); });
    add_side(3, [&](int a, int b) { return node_id(a, 0, b); });
    add_side(4, [&](int a, int b) { return node_id(a, n, b); });
    add_side(5, [&](int a, int b) { return node_id(a, b, 0); });
    add_side(6, [&](int a, int b) { return node_id(a, b, n); });

    m.validate();
    return m;
}

RawMesh sort_mesh(const RawMesh& mesh) {
    mesh.validate();

    std::vector<int> order(mesh.nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec3& pa = mesh.nodes[a];
        const Vec3& pb = mesh.nodes[b];
        if (pa.x() != pb.x()) return pa.x() < pb.x();
        if (pa.y() != pb.y()) return pa.y() < pb.y();
        return pa.z() < pb.z();
    });

    std::vector<int> remap(mesh.nodes.size());
    for (std::size_t new_id = 0; new_id < order.size(); ++new_id)
        remap[order[new_id]] = static_cast<int>(new_id);

    RawMesh out;
    out.nodes.resize(mesh.nodes.size());
    for (std::size_t old_id = 0; old_id < mesh.nodes.size(); ++old_id)
        out.nodes[remap[old_id]] = mesh.nodes[old_id];

    // Remap cells, then order records by sorted vertex tuple so a second sort
    // is a no-op. Tet/face vertex order within each record is preserved (only
    // relabeled) to keep orientation information intact.
    struct TetRec { std::array<int, 4> tet; int attr; };
    std::vector<TetRec> tets(mesh.tets.size());
    for (std::size_t i = 0; i < mesh.tets.size(); ++i) {
        for (int c = 0; c < 4; ++c) tets[i].tet[c] = remap[mesh.tets[i][c]];
        tets[i].attr = mesh.tet_attributes.empty() ? 0 : mesh.tet_attributes[i];
    }
    std::stable_sort(tets.begin(), tets.end(), [](const TetRec& a, const TetRec& b) {
        return sorted_tuple(a.tet) < sorted_tuple(b.tet);
    });
    out.tets.reserve(tets.size());
    for (const auto& r : tets) out.tets.push_back(r.tet);
    if (!mesh.tet_attributes.empty()) {
        out.tet_attributes.reserve(tets.size());
        for (const auto& r : tets) out.tet_attributes.push_back(r.attr);
    }

    struct FaceRec { std::array<int, 3> face; int marker; };
    std::vector<FaceRec> faces(mesh.boundary_faces.size());
    for (std::size_t i = 0; i < mesh.boundary_faces.size(); ++i) {
        for (int c = 0; c < 3; ++c) faces[i].face[c] = remap[mesh.boundary_faces[i][c]];
        faces[i].marker = mesh.face_markers[i];
    }
    std::stable_sort(faces.begin(), faces.end(), [](const FaceRec& a, const FaceRec& b) {
        return sorted_tuple(a.face) < sorted_tuple(b.face);
    });
    out.boundary_faces.reserve(faces.size());
    out.face_markers.reserve(faces.size());
    for (const auto& r : faces) {
        out.boundary_faces.push_back(r.face);
        out.face_markers.push_back(r.marker);
    }

    out.edges.resize(mesh.edges.size());
    for (std::size_t i = 0; i < mesh.edges.size(); ++i)
        out.edges[i] = {remap[mesh.edges[i][0]], remap[mesh.edges[i][1]]};
    std::stable_sort(out.edges.begin(), out.edges.end(),
                     [](std::array<int, 2> a, std::array<int, 2> b) {
                         return sorted_tuple(a) < sorted_tuple(b);
                     });

    return out;
}

} // namespace tetdec
