#include "tetdec/tetgen_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace tetdec {

namespace {

// Token stream over a whole file with '#' comments stripped. TetGen files are
// free-form enough that line structure only matters for comments.
class TokenReader {
public:
    TokenReader(const std::string& path, const char* what) : path_(path) {
        std::ifstream in(path);
        if (!in) throw MeshError(std::string(what) + " file not readable: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens_.push_back(tok);
        }
    }

    bool done() const { return next_ >= tokens_.size(); }

    long next_int(const char* what) {
        const std::string& t = get(what);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size())
            throw MeshError(std::string(what) + ": expected integer, got '" + t + "' in " + path_);
        return v;
    }

    double next_double(const char* what) {
        const std::string& t = get(what);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size())
            throw MeshError(std::string(what) + ": expected number, got '" + t + "' in " + path_);
        return v;
    }

private:
    const std::string& get(const char* what) {
        if (done()) throw MeshError(std::string(what) + ": unexpected end of " + path_);
        return tokens_[next_++];
    }

    std::string path_;
    std::vector<std::string> tokens_;
    std::size_t next_ = 0;
};

// TetGen indices may start at 0 or 1; the first record index decides.
struct IndexBase {
    long base = 0;
    bool known = false;

    void learn(long first_index) {
        if (known) return;
        if (first_index != 0 && first_index != 1)
            throw MeshError("record numbering must start at 0 or 1, got " +
                            std::to_string(first_index));
        base = first_index;
        known = true;
    }
};

int to_node_ref(long v, const IndexBase& ib, std::size_t n_nodes, const char* what) {
    long idx = v - ib.base;
    if (idx < 0 || static_cast<std::size_t>(idx) >= n_nodes)
        throw MeshError(std::string(what) + ": node reference " + std::to_string(v) +
                        " out of range");
    return static_cast<int>(idx);
}

} // namespace

RawMesh parse_tetgen(const std::string& node_path, const std::string& ele_path,
                     const std::string& face_path, const std::string& edge_path) {
    RawMesh mesh;

    {
        TokenReader tr(node_path, ".node");
        long n = tr.next_int(".node count");
        long dim = tr.next_int(".node dimension");
        long n_attr = tr.next_int(".node attribute count");
        long n_marker = tr.next_int(".node marker flag");
        if (n < 0 || dim != 3)
            throw MeshError(".node header: need dimension 3, got " + std::to_string(dim));
        IndexBase ib;
        mesh.nodes.reserve(n);
        for (long i = 0; i < n; ++i) {
            long id = tr.next_int(".node record index");
            ib.learn(id);
            if (id != ib.base + i)
                throw MeshError(".node: record index " + std::to_string(id) +
                                " out of sequence");
            double x = tr.next_double(".node x");
            double y = tr.next_double(".node y");
            double z = tr.next_double(".node z");
            for (long a = 0; a < n_attr; ++a) tr.next_double(".node attribute");
            if (n_marker) tr.next_int(".node marker");
            mesh.nodes.emplace_back(x, y, z);
        }
        if (!tr.done()) throw MeshError(".node: trailing data after declared records");
    }

    {
        TokenReader tr(ele_path, ".ele");
        long n = tr.next_int(".ele count");
        long per = tr.next_int(".ele nodes per tet");
        long n_attr = tr.next_int(".ele attribute count");
        if (per != 4)
            throw MeshError(".ele: only 4-node tetrahedra supported, got " +
                            std::to_string(per) + " nodes per cell");
        IndexBase ib;
        mesh.tets.reserve(n);
        if (n_attr > 0) mesh.tet_attributes.reserve(n);
        for (long i = 0; i < n; ++i) {
            long id = tr.next_int(".ele record index");
            ib.learn(id);
            if (id != ib.base + i)
                throw MeshError(".ele: record index " + std::to_string(id) +
                                " out of sequence");
            std::array<int, 4> tet;
            for (int c = 0; c < 4; ++c)
                tet[c] = to_node_ref(tr.next_int(".ele node"), ib, mesh.nodes.size(), ".ele");
            mesh.tets.push_back(tet);
            if (n_attr > 0) {
                mesh.tet_attributes.push_back(static_cast<int>(tr.next_double(".ele attribute")));
                for (long a = 1; a < n_attr; ++a) tr.next_double(".ele attribute");
            }
        }
        if (!tr.done()) throw MeshError(".ele: trailing data after declared records");
    }

    {
        TokenReader tr(face_path, ".face");
        long n = tr.next_int(".face count");
        long has_marker = tr.next_int(".face marker flag");
        IndexBase ib;
        mesh.boundary_faces.reserve(n);
        mesh.face_markers.reserve(n);
        for (long i = 0; i < n; ++i) {
            long id = tr.next_int(".face record index");
            ib.learn(id);
            if (id != ib.base + i)
                throw MeshError(".face: record index " + std::to_string(id) +
                                " out of sequence");
            std::array<int, 3> f;
            for (int c = 0; c < 3; ++c)
                f[c] = to_node_ref(tr.next_int(".face node"), ib, mesh.nodes.size(), ".face");
            mesh.boundary_faces.push_back(f);
            mesh.face_markers.push_back(has_marker ? static_cast<int>(tr.next_int(".face marker")) : 0);
        }
        if (!tr.done()) throw MeshError(".face: trailing data after declared records");
    }

    if (!edge_path.empty()) {
        TokenReader tr(edge_path, ".edge");
        long n = tr.next_int(".edge count");
        long has_marker = tr.next_int(".edge marker flag");
        IndexBase ib;
        mesh.edges.reserve(n);
        for (long i = 0; i < n; ++i) {
            long id = tr.next_int(".edge record index");
            ib.learn(id);
            if (id != ib.base + i)
                throw MeshError(".edge: record index " + std::to_string(id) +
                                " out of sequence");
            std::array<int, 2> e;
            for (int c = 0; c < 2; ++c)
                e[c] = to_node_ref(tr.next_int(".edge node"), ib, mesh.nodes.size(), ".edge");
            mesh.edges.push_back(e);
            if (has_marker) tr.next_int(".edge marker");
        }
        if (!tr.done()) throw MeshError(".edge: trailing data after declared records");
    }

    mesh.validate();
    return mesh;
}

namespace {

std::FILE* open_out(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw MeshError("cannot open for writing: " + path);
    return f;
}

} // namespace

void write_tetgen(const RawMesh& mesh, const std::string& prefix) {
    mesh.validate();

    {
        std::FILE* f = open_out(prefix + ".node");
        std::fprintf(f, "%zu 3 0 0\n", mesh.nodes.size());
        for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
            std::fprintf(f, "%zu %.17g %.17g %.17g\n", i + 1, mesh.nodes[i].x(),
                         mesh.nodes[i].y(), mesh.nodes[i].z());
        std::fclose(f);
    }
    {
        const bool attrs = !mesh.tet_attributes.empty();
        std::FILE* f = open_out(prefix + ".ele");
        std::fprintf(f, "%zu 4 %d\n", mesh.tets.size(), attrs ? 1 : 0);
        for (std::size_t i = 0; i < mesh.tets.size(); ++i) {
            const auto& t = mesh.tets[i];
            std::fprintf(f, "%zu %d %d %d %d", i + 1, t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1);
            if (attrs) std::fprintf(f, " %d", mesh.tet_attributes[i]);
            std::fputc('\n', f);
        }
        std::fclose(f);
    }
    {
        std::FILE* f = open_out(prefix + ".face");
        std::fprintf(f, "%zu 1\n", mesh.boundary_faces.size());
        for (std::size_t i = 0; i < mesh.boundary_faces.size(); ++i) {
            const auto& fc = mesh.boundary_faces[i];
            std::fprintf(f, "%zu %d %d %d %d\n", i + 1, fc[0] + 1, fc[1] + 1, fc[2] + 1,
                         mesh.face_markers[i]);
        }
        std::fclose(f);
    }
    if (!mesh.edges.empty()) {
        std::FILE* f = open_out(prefix + ".edge");
        std::fprintf(f, "%zu 0\n", mesh.edges.size());
        for (std::size_t i = 0; i < mesh.edges.size(); ++i)
            std::fprintf(f, "%zu %d %d\n", i + 1, mesh.edges[i][0] + 1, mesh.edges[i][1] + 1);
        std::fclose(f);
    }
}

} // namespace tetdec
