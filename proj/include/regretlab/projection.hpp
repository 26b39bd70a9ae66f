#pragma once

#include "regretlab/types.hpp"

namespace regretlab {

// H-weighted projection onto an axis-aligned box, H = diag(h) with h > 0.
// The per-coordinate objective h_i (y_i - x_i)^2 separates, so the argmin
// is coordinate-wise clamping and does not depend on h. Throws
// InvalidWeightError for h_i <= 0 and DimensionError on length mismatch.
Vec weighted_projection(const Vec& x, const Vec& h, const BoxDomain& box);

// ||x||_h^2 = sum_i h_i x_i^2 (diagonal weighted norm, squared).
double weighted_norm_sq(const Vec& x, const Vec& h);

} // namespace regretlab
