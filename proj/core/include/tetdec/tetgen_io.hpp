#pragma once

#include <string>

#include "tetdec/mesh.hpp"

namespace tetdec {

// Reads the whitespace-delimited TetGen triple (.node/.ele/.face; .edge when a
// path is given). '#' starts a comment, blank lines are skipped, and 0- vs
// 1-based numbering is detected from the first record index of each file.
// Throws MeshError on missing files, malformed headers, count mismatches, or
// dangling node references.
RawMesh parse_tetgen(const std::string& node_path, const std::string& ele_path,
                     const std::string& face_path, const std::string& edge_path = "");

// Writes prefix.node/.ele/.face (and .edge when the mesh has edges), 1-based,
// with full double precision so write -> parse round-trips exactly.
void write_tetgen(const RawMesh& mesh, const std::string& prefix);

} // namespace tetdec
