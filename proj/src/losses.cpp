#include "regretlab/losses.hpp"

#include <cmath>
#include <limits>

#include "regretlab/kernels.hpp"

namespace regretlab {

void SoftmaxRegressionLoss::validate() const {
    if (num_classes < 2) throw ConfigError("softmax loss: need at least 2 classes");
    if (feat_dim < 1) throw ConfigError("softmax loss: feature dimension must be >= 1");
    if (!(lambda1 > 0.0 && lambda2 > 0.0)) {
        throw ConfigError("softmax loss: lambda1/lambda2 must be positive");
    }
    if (labels.empty()) throw DimensionError("softmax loss: empty batch");
    require_dim(features.size(), labels.size() * static_cast<std::size_t>(feat_dim),
                "softmax loss: features");
    for (int y : labels) {
        if (y < 0 || y >= num_classes) throw ConfigError("softmax loss: label out of range");
    }
}

double softmax_eval(const SoftmaxSpec& spec, const double* const* samples, const int* labels,
                    std::size_t m, const Vec& params, Vec* grad) {
    const auto& k = kernels::active();
    const int K = spec.num_classes;
    const int df = spec.feat_dim;
    const std::size_t w_len = static_cast<std::size_t>(K) * df;
    require_dim(params.size(), w_len + K, "softmax_eval: params");
    if (m == 0) throw DimensionError("softmax_eval: empty batch");
    const double* b = params.data() + w_len;
    const double inv_m = 1.0 / static_cast<double>(m);

    Vec probs(K);
    double data = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double* x = samples[i];
        // max-shifted log-sum-exp over class scores
        double mx = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < K; ++c) {
            probs[c] = k.dot(params.data() + static_cast<std::size_t>(c) * df, x,
                             static_cast<std::size_t>(df)) +
                       b[c];
            mx = std::max(mx, probs[c]);
        }
        double z = 0.0;
        for (int c = 0; c < K; ++c) {
            probs[c] = std::exp(probs[c] - mx);
            z += probs[c];
        }
        data -= std::log(probs[labels[i]] / z);
        if (grad) {
            double* gb = grad->data() + w_len;
            for (int c = 0; c < K; ++c) {
                const double coef = (probs[c] / z - (labels[i] == c ? 1.0 : 0.0)) * inv_m;
                k.axpy(grad->data() + static_cast<std::size_t>(c) * df, x, coef,
                       static_cast<std::size_t>(df));
                gb[c] += coef;
            }
        }
    }
    const double w_sq = k.dot(params.data(), params.data(), w_len);
    const double b_sq = k.dot(b, b, static_cast<std::size_t>(K));
    if (grad) {
        k.axpy(grad->data(), params.data(), 2.0 * spec.lambda1, w_len);
        k.axpy(grad->data() + w_len, b, 2.0 * spec.lambda2, static_cast<std::size_t>(K));
    }
    return data * inv_m + spec.lambda1 * w_sq + spec.lambda2 * b_sq;
}

namespace {

std::vector<const double*> sample_ptrs(const SoftmaxRegressionLoss& loss) {
    std::vector<const double*> ptrs(loss.batch_size());
    for (std::size_t i = 0; i < ptrs.size(); ++i) {
        ptrs[i] = loss.sample(i);
    }
    return ptrs;
}

} // namespace

double softmax_value(const SoftmaxRegressionLoss& loss, const Vec& params) {
    loss.validate();
    require_dim(params.size(), loss.dim(), "softmax_value: params");
    auto ptrs = sample_ptrs(loss);
    return softmax_eval({loss.num_classes, loss.feat_dim, loss.lambda1, loss.lambda2},
                        ptrs.data(), loss.labels.data(), loss.batch_size(), params, nullptr);
}

double softmax_value_gradient(const SoftmaxRegressionLoss& loss, const Vec& params, Vec& grad) {
    loss.validate();
    require_dim(params.size(), loss.dim(), "softmax_value_gradient: params");
    require_dim(grad.size(), loss.dim(), "softmax_value_gradient: grad");
    auto ptrs = sample_ptrs(loss);
    return softmax_eval({loss.num_classes, loss.feat_dim, loss.lambda1, loss.lambda2},
                        ptrs.data(), loss.labels.data(), loss.batch_size(), params, &grad);
}

Vec softmax_gradient(const SoftmaxRegressionLoss& loss, const Vec& params) {
    Vec grad(loss.dim(), 0.0);
    softmax_value_gradient(loss, params, grad);
    return grad;
}

std::pair<double, Vec> quadratic_value_gradient(const QuadraticLoss& loss, const Vec& x) {
    require_dim(x.size(), loss.center.size(), "quadratic_value_gradient: x");
    Vec grad(x.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - loss.center[i];
        grad[i] = loss.curvature * diff;
        sq += diff * diff;
    }
    return {0.5 * loss.curvature * sq, std::move(grad)};
}

ConvexityCertificate certificate(const SoftmaxRegressionLoss& loss, const BoxDomain& box) {
    loss.validate();
    box.validate();
    require_dim(box.dim(), loss.dim(), "certificate: box");
    const int K = loss.num_classes;
    const int df = loss.feat_dim;

    // Column-wise feature magnitude bound for the data term of dJ/dw_kj.
    Vec max_feat(df, 0.0);
    for (std::size_t i = 0; i < loss.batch_size(); ++i) {
        const double* x = loss.sample(i);
        for (int j = 0; j < df; ++j) {
            max_feat[j] = std::max(max_feat[j], std::fabs(x[j]));
        }
    }
    double g_inf = 0.0;
    for (int c = 0; c < K; ++c) {
        for (int j = 0; j < df; ++j) {
            const std::size_t idx = static_cast<std::size_t>(c) * df + j;
            const double bnd = std::max(std::fabs(box.lower[idx]), std::fabs(box.upper[idx]));
            g_inf = std::max(g_inf, max_feat[j] + 2.0 * loss.lambda1 * bnd);
        }
        const std::size_t idx = static_cast<std::size_t>(K) * df + c;
        const double bnd = std::max(std::fabs(box.lower[idx]), std::fabs(box.upper[idx]));
        g_inf = std::max(g_inf, 1.0 + 2.0 * loss.lambda2 * bnd);
    }
    // The data term is convex; the penalty blocks have Hessians 2*lambda1 I
    // and 2*lambda2 I, so the global modulus is the smaller of the two.
    return {2.0 * std::min(loss.lambda1, loss.lambda2), g_inf};
}

ConvexityCertificate certificate(const QuadraticLoss& loss, const BoxDomain& box) {
    box.validate();
    require_dim(box.dim(), loss.center.size(), "certificate: box");
    double dist = 0.0;
    for (std::size_t i = 0; i < box.dim(); ++i) {
        dist = std::max(dist, std::max(std::fabs(box.lower[i] - loss.center[i]),
                                       std::fabs(box.upper[i] - loss.center[i])));
    }
    return {loss.curvature, loss.curvature * dist};
}

} // namespace regretlab
