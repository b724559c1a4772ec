#include "tetdec/obj_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "tetdec/errors.hpp"

namespace tetdec {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_vertex(std::ofstream& out, const Vec3& p) {
    out << "v " << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z()) << '\n';
}

// The two faces of tet t that contain edge (a, b): drop one of the remaining
// vertices at a time.
std::array<int, 2> faces_of_tet_with_edge(const SimplicialComplex& cx, int t, int a, int b) {
    std::array<int, 2> result{-1, -1};
    int found = 0;
    const auto& tv = cx.tets[t];
    for (int drop = 0; drop < 4; ++drop) {
        std::array<int, 3> face;
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != drop) face[k++] = tv[i];
        bool has_a = face[0] == a || face[1] == a || face[2] == a;
        bool has_b = face[0] == b || face[1] == b || face[2] == b;
        if (has_a && has_b) result[found++] = cx.face_index(face);
    }
    if (found != 2) throw MeshError("edge not shared by two faces of its tet");
    return result;
}

// Vertex indices (0-based into [tet circumcenters | face circumcenters]) of
// the dual polygon around edge e, in walk order.
std::vector<int> dual_polygon(const SimplicialComplex& cx, int e) {
    const int a = cx.edges[e][0];
    const int b = cx.edges[e][1];
    const int n_tets = static_cast<int>(cx.cell_count(3));

    // Faces around the edge; the walk needs somewhere deterministic to start.
    std::vector<int> ring_faces;
    for (std::size_t f = 0; f < cx.cell_count(2); ++f) {
        const auto& fv = cx.faces[f];
        bool has_a = fv[0] == a || fv[1] == a || fv[2] == a;
        bool has_b = fv[0] == b || fv[1] == b || fv[2] == b;
        if (has_a && has_b) ring_faces.push_back(static_cast<int>(f));
    }
    if (ring_faces.empty()) throw MeshError("edge with no incident face");

    int start = ring_faces.front();
    for (int f : ring_faces)
        if (cx.face_tets[f][1] == -1) {
            start = f; // boundary edge: begin at one end of the open fan
            break;
        }

    std::vector<int> polygon;
    polygon.push_back(n_tets + start);
    int face = start;
    int prev_tet = -1;
    while (true) {
        const auto& ft = cx.face_tets[face];
        int tet = (ft[0] == prev_tet) ? ft[1] : ft[0];
        if (tet == -1) break; // reached the far boundary face
        polygon.push_back(tet);
        auto pair = faces_of_tet_with_edge(cx, tet, a, b);
        int next = (pair[0] == face) ? pair[1] : pair[0];
        if (next == start) break; // interior edge: ring closed
        polygon.push_back(n_tets + next);
        face = next;
        prev_tet = tet;
    }
    if (polygon.size() < 3) throw MeshError("degenerate dual polygon around an edge");
    return polygon;
}

} // namespace

ObjSurface obj_surface_from_string(const std::string& name) {
    if (name == "primal") return ObjSurface::Primal;
    if (name == "dual") return ObjSurface::Dual;
    throw ConfigError("unknown surface '" + name + "' (expected primal or dual)");
}

void write_obj(const SimplicialComplex& complex, const DualGeometry& geometry,
               ObjSurface which, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("cannot open for writing: " + path);

    if (which == ObjSurface::Primal) {
        out << "# primal triangular faces\n";
        for (const Vec3& p : complex.positions) write_vertex(out, p);
        for (const auto& f : complex.faces)
            out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    } else {
        out << "# dual polygons, one per primal edge\n";
        for (const Vec3& c : geometry.tet_circumcenters) write_vertex(out, c);
        for (const Vec3& c : geometry.face_circumcenters) write_vertex(out, c);
        for (std::size_t e = 0; e < complex.cell_count(1); ++e) {
            out << 'f';
            for (int v : dual_polygon(complex, static_cast<int>(e))) out << ' ' << v + 1;
            out << '\n';
        }
    }

    if (!out) throw MeshError("write failed: " + path);
}

} // namespace tetdec
