#pragma once

#include <string>

#include "tetdec/complex.hpp"
#include "tetdec/geometry.hpp"

namespace tetdec {

enum class ObjSurface {
    Primal, // every triangular face, vertices = mesh nodes
    Dual,   // one polygon per primal edge, vertices = face/tet circumcenters
};

// "primal" or "dual"; throws ConfigError otherwise.
ObjSurface obj_surface_from_string(const std::string& name);

// Writes the chosen face set as Wavefront OBJ v/f records (1-based indices).
//
// The dual polygon of a primal edge is the ring of circumcenters met when
// walking the incident faces and tets around that edge: alternating face
// circumcenter, tet circumcenter, face circumcenter, ... The ring closes for
// interior edges and stays an open fan ending at the two boundary face
// circumcenters for boundary edges (a single tet yields one triangle fan per
// edge around its circumcenter). Throws MeshError when the path is not
// writable.
void write_obj(const SimplicialComplex& complex, const DualGeometry& geometry,
               ObjSurface which, const std::string& path);

} // namespace tetdec
