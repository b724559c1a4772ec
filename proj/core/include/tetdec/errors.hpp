#pragma once

#include <stdexcept>
#include <string>

namespace tetdec {

// Error taxonomy mirrors the CLI exit codes: config problems, mesh problems
// (parsing, topology, degeneracy), and solver problems (non-convergence,
// breakdown, singularity without a configured null-space handling).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tetdec
