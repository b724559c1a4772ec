#include "tetdec/verification.hpp"

#include <algorithm>
#include <cmath>

#include "tetdec/errors.hpp"

namespace tetdec {

double rms_error(const SimplicialComplex& complex, const DualGeometry& geometry,
                 const Eigen::VectorXd& alpha, const AffineField& exact) {
    const std::size_t n_tets = complex.cell_count(3);
    if (static_cast<std::size_t>(alpha.size()) != n_tets)
        throw ConfigError("temperature vector does not match complex");
    double sum = 0.0;
    for (std::size_t t = 0; t < n_tets; ++t) {
        double err = alpha[static_cast<Eigen::Index>(t)] -
                     exact.value(geometry.tet_circumcenters[t]);
        sum += err * err * geometry.primal_volume[3][t];
    }
    return std::sqrt(sum);
}

double max_tet_volume(const DualGeometry& geometry) {
    const auto& v = geometry.primal_volume[3];
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

} // namespace tetdec
