#pragma once

#include <utility>

#include "regretlab/types.hpp"

namespace regretlab {

// lambda-strong-convexity modulus and a gradient infinity bound, both valid
// on the box the loss is evaluated over.
struct ConvexityCertificate {
    double lambda = 0.0;
    double g_inf = 0.0;
};

// One round of mini-batch l2-regularized softmax regression:
//   J(W,b) = -(1/m) sum_i log p_{y_i}(x_i) + lambda1 sum_k ||w_k||^2
//            + lambda2 sum_k b_k^2.
// Parameters are flattened as [W row-major (K x feat_dim), b (K)],
// total dimension K * feat_dim + K. Labels are 0-based.
struct SoftmaxRegressionLoss {
    int num_classes = 2;
    int feat_dim = 1;
    double lambda1 = 1e-2;
    double lambda2 = 1e-2;
    Vec features;            // m x feat_dim, row-major, values in [0,1]
    std::vector<int> labels; // m entries in [0, num_classes)

    std::size_t batch_size() const { return labels.size(); }
    std::size_t dim() const {
        return static_cast<std::size_t>(num_classes) * (feat_dim + 1);
    }
    const double* sample(std::size_t i) const { return features.data() + i * feat_dim; }
    void validate() const;
};

double softmax_value(const SoftmaxRegressionLoss& loss, const Vec& params);
Vec softmax_gradient(const SoftmaxRegressionLoss& loss, const Vec& params);

// Fused evaluation; grad is accumulated into (callers zero it first). Used
// by the hindsight oracle where value and gradient share the score pass.
double softmax_value_gradient(const SoftmaxRegressionLoss& loss, const Vec& params, Vec& grad);

// View-based core over non-owned samples (streams batch into a shared
// dataset without copying rows). samples[i] points at feat_dim doubles.
// grad may be null (value only); when given, the gradient is accumulated.
struct SoftmaxSpec {
    int num_classes;
    int feat_dim;
    double lambda1;
    double lambda2;
};

double softmax_eval(const SoftmaxSpec& spec, const double* const* samples, const int* labels,
                    std::size_t m, const Vec& params, Vec* grad);

// (lambda/2) ||x - center||^2 with exactly known curvature and minimizer.
struct QuadraticLoss {
    Vec center;
    double curvature = 1.0;
};

std::pair<double, Vec> quadratic_value_gradient(const QuadraticLoss& loss, const Vec& x);

ConvexityCertificate certificate(const SoftmaxRegressionLoss& loss, const BoxDomain& box);
ConvexityCertificate certificate(const QuadraticLoss& loss, const BoxDomain& box);

} // namespace regretlab
