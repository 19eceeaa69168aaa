#pragma once

// Seeded random positive polynomial metrics and holomorphic frame changes for
// property checks: h(w) = F(w)^H F(w) + ridge*I with F holomorphic polynomial,
// so h is the Gram of a genuine holomorphic frame.

#include <cstdint>

#include "cdcurv/curvature.hpp"

namespace cdcurv {

MetricField random_polynomial_metric(int n, int m, int degree, std::uint64_t seed,
                                     double ridge = 0.5);

// phi(w) = I + scale * (A0 + sum_l A_l w_l), holomorphic and invertible on a
// neighborhood of the origin for small scale.
MatrixEval random_frame_change(int n, int m, std::uint64_t seed, double scale = 0.2);

}  // namespace cdcurv
