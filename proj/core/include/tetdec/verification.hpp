#pragma once

#include <Eigen/Core>

#include "tetdec/complex.hpp"
#include "tetdec/geometry.hpp"

namespace tetdec {

// Affine temperature field T(x) = gradient . x + offset. Affine fields are
// reproduced exactly by the discretization whenever no Hodge entry was
// limited, which is what the machine-precision verification tests exploit.
struct AffineField {
    Vec3 gradient = Vec3::Zero();
    double offset = 0.0;

    double value(const Vec3& x) const { return gradient.dot(x) + offset; }
};

// Volume-weighted root-sum of squared temperature errors,
// sqrt(sum_t (alpha_t - T(c_t))^2 V_t), with the exact field evaluated at
// each tet circumcenter (where the discrete temperature lives).
double rms_error(const SimplicialComplex& complex, const DualGeometry& geometry,
                 const Eigen::VectorXd& alpha, const AffineField& exact);

// Largest primal tet volume; the refinement parameter in convergence tables.
double max_tet_volume(const DualGeometry& geometry);

} // namespace tetdec
