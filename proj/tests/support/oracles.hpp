#pragma once

#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "tetdec/mesh.hpp"

namespace tetdec::testing {

// Brute-force signed incidence: rows are the sorted (p-1)-tuples obtained by
// deleting one vertex at a time from each sorted p-tuple, with sign (-1)^i
// for deleting position i. Written without reference to the library's
// complex construction so the two can disagree.
template <std::size_t P>
Eigen::SparseMatrix<int> naive_boundary(const std::vector<std::array<int, P + 1>>& cells,
                                        const std::vector<std::array<int, P>>& subcells);

// Minimal legacy-VTK reader covering what the writer emits. Throws
// std::runtime_error on anything unexpected.
struct VtkSnapshot {
    std::vector<Vec3> points;
    std::vector<std::array<int, 4>> cells;
    std::vector<int> cell_types;
    std::vector<double> temperature;
    std::vector<Vec3> flux;
};
VtkSnapshot parse_vtk(const std::string& path);

// Minimal OBJ reader: collects vertices and faces, checks every face index
// is in range and every face has at least 3 vertices.
struct ObjModel {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces; // 0-based
};
ObjModel parse_obj(const std::string& path);

// CSV reader for the history files: skips '#' comments, checks the header
// line matches, returns numeric rows.
std::vector<std::vector<double>> parse_csv(const std::string& path, const std::string& header);

std::string read_file(const std::string& path);

} // namespace tetdec::testing
