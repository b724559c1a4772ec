#include "tetdec/vtk_io.hpp"

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

} // namespace

void write_vtk(const SimplicialComplex& complex, const DualGeometry& geometry,
               const Solution& solution, const std::string& path) {
    const std::size_t n_tets = complex.cell_count(3);
    if (static_cast<std::size_t>(solution.alpha.size()) != n_tets)
        throw ConfigError("solution does not match complex: " +
                          std::to_string(solution.alpha.size()) + " temperatures for " +
                          std::to_string(n_tets) + " tets");
    (void)geometry; // geometry validated upstream; kept for interface symmetry

    std::ofstream out(path);
    if (!out) throw MeshError("cannot open for writing: " + path);

    out << "# vtk DataFile Version 2.0\n";
    out << "tetdec steady-state solution\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";

    out << "POINTS " << complex.positions.size() << " double\n";
    for (const Vec3& p : complex.positions)
        out << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z()) << '\n';

    out << "CELLS " << n_tets << ' ' << 5 * n_tets << '\n';
    for (const auto& t : complex.tets)
        out << "4 " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';

    out << "CELL_TYPES " << n_tets << '\n';
    for (std::size_t i = 0; i < n_tets; ++i) out << "10\n";

    out << "CELL_DATA " << n_tets << '\n';
    out << "SCALARS temperature double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (std::size_t t = 0; t < n_tets; ++t)
        out << fmt(solution.alpha[static_cast<Eigen::Index>(t)]) << '\n';

    out << "VECTORS flux double\n";
    std::vector<Vec3> flux = whitney_flux_vectors(complex, solution.omega);
    for (const Vec3& v : flux)
        out << fmt(v.x()) << ' ' << fmt(v.y()) << ' ' << fmt(v.z()) << '\n';

    if (!out) throw MeshError("write failed: " + path);
}

} // namespace tetdec
