#include "regretlab/projection.hpp"

namespace regretlab {

Vec weighted_projection(const Vec& x, const Vec& h, const BoxDomain& box) {
    require_dim(x.size(), box.dim(), "weighted_projection: x");
    require_dim(h.size(), box.dim(), "weighted_projection: weights");
    for (double hi : h) {
        if (!(hi > 0.0)) {
            throw InvalidWeightError("weighted_projection: weights must be strictly positive");
        }
    }
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = box.clamp_coord(i, x[i]);
    }
    return y;
}

double weighted_norm_sq(const Vec& x, const Vec& h) {
    require_dim(h.size(), x.size(), "weighted_norm_sq: weights");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += h[i] * x[i] * x[i];
    }
    return s;
}

} // namespace regretlab
