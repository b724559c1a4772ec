#pragma once

#include <string>

#include "tetdec/complex.hpp"
#include "tetdec/geometry.hpp"
#include "tetdec/solver.hpp"

namespace tetdec {

// Writes a solved state as a legacy ASCII VTK unstructured grid
// ("# vtk DataFile Version 2.0"): primal points, tetrahedra (cell type 10),
// then per-cell data: the scalar field "temperature" (alpha) and the vector
// field "flux" reconstructed at barycenters from the face fluxes. Values are
// printed with %.17g so files round-trip doubles and diff cleanly.
// Throws MeshError when the path is not writable.
void write_vtk(const SimplicialComplex& complex, const DualGeometry& geometry,
               const Solution& solution, const std::string& path);

} // namespace tetdec
