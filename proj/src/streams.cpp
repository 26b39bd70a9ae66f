#include "regretlab/streams.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace regretlab {

namespace {

void check_round(long t, long T, const char* what) {
    if (t < 1 || t > T) {
        throw InvalidRoundError(std::string(what) + ": round " + std::to_string(t) +
                                " outside [1, " + std::to_string(T) + "]");
    }
}

} // namespace

QuadraticSeqStream::QuadraticSeqStream(std::vector<Vec> centers, double curvature)
    : centers_(std::move(centers)), curvature_(curvature) {
    if (centers_.empty()) throw ConfigError("QuadraticSeqStream: need at least one center");
    if (!(curvature_ > 0.0)) throw ConfigError("QuadraticSeqStream: curvature must be positive");
    for (const Vec& c : centers_) {
        require_dim(c.size(), centers_.front().size(), "QuadraticSeqStream: center");
    }
}

QuadraticSeqStream::QuadraticSeqStream(long T, const BoxDomain& box, double curvature,
                                       std::uint64_t seed)
    : curvature_(curvature) {
    if (T < 1) throw ConfigError("QuadraticSeqStream: T must be >= 1");
    if (!(curvature_ > 0.0)) throw ConfigError("QuadraticSeqStream: curvature must be positive");
    box.validate();
    std::mt19937_64 rng(seed);
    centers_.resize(T);
    for (Vec& c : centers_) {
        c.resize(box.dim());
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::uniform_real_distribution<double> u(box.lower[i], box.upper[i]);
            c[i] = u(rng);
        }
    }
}

double QuadraticSeqStream::value(long t, const Vec& x) const {
    check_round(t, rounds(), "QuadraticSeqStream::value");
    const Vec& c = centers_[t - 1];
    require_dim(x.size(), c.size(), "QuadraticSeqStream::value: x");
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - c[i];
        sq += diff * diff;
    }
    return 0.5 * curvature_ * sq;
}

double QuadraticSeqStream::value_accumulate_gradient(long t, const Vec& x, Vec& grad) const {
    check_round(t, rounds(), "QuadraticSeqStream::gradient");
    const Vec& c = centers_[t - 1];
    require_dim(x.size(), c.size(), "QuadraticSeqStream::gradient: x");
    require_dim(grad.size(), c.size(), "QuadraticSeqStream::gradient: grad");
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - c[i];
        sq += diff * diff;
        grad[i] += curvature_ * diff;
    }
    return 0.5 * curvature_ * sq;
}

ConvexityCertificate QuadraticSeqStream::certificate(const BoxDomain& box) const {
    box.validate();
    require_dim(box.dim(), dim(), "QuadraticSeqStream::certificate: box");
    double dist = 0.0;
    for (const Vec& c : centers_) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            dist = std::max(dist, std::max(std::fabs(box.lower[i] - c[i]),
                                           std::fabs(box.upper[i] - c[i])));
        }
    }
    return {curvature_, curvature_ * dist};
}

SoftmaxBatchStream::SoftmaxBatchStream(std::shared_ptr<const Dataset> data, long T,
                                       std::size_t batch_size, double lambda1, double lambda2,
                                       std::uint64_t seed)
    : data_(std::move(data)), T_(T), m_(batch_size) {
    if (!data_) throw ConfigError("SoftmaxBatchStream: null dataset");
    data_->validate();
    if (T_ < 1) throw ConfigError("SoftmaxBatchStream: T must be >= 1");
    if (m_ < 1 || m_ > data_->size()) {
        throw ConfigError("SoftmaxBatchStream: batch size out of range");
    }
    spec_ = {data_->num_classes, data_->feat_dim, lambda1, lambda2};

    // Epoch-wise shuffles, concatenated until T*m indices are available.
    const std::size_t n = data_->size();
    std::vector<std::size_t> epoch(n);
    std::iota(epoch.begin(), epoch.end(), 0);
    std::mt19937_64 rng(seed);
    order_.reserve(static_cast<std::size_t>(T_) * m_);
    while (order_.size() < static_cast<std::size_t>(T_) * m_) {
        std::shuffle(epoch.begin(), epoch.end(), rng);
        order_.insert(order_.end(), epoch.begin(), epoch.end());
    }
    order_.resize(static_cast<std::size_t>(T_) * m_);
}

std::size_t SoftmaxBatchStream::dim() const {
    return static_cast<std::size_t>(spec_.num_classes) * (spec_.feat_dim + 1);
}

double SoftmaxBatchStream::eval(long t, const Vec& x, Vec* grad) const {
    check_round(t, T_, "SoftmaxBatchStream");
    std::vector<const double*> samples(m_);
    std::vector<int> labels(m_);
    const std::size_t base = static_cast<std::size_t>(t - 1) * m_;
    for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t idx = order_[base + i];
        samples[i] = data_->sample(idx);
        labels[i] = data_->labels[idx];
    }
    return softmax_eval(spec_, samples.data(), labels.data(), m_, x, grad);
}

double SoftmaxBatchStream::value(long t, const Vec& x) const { return eval(t, x, nullptr); }

double SoftmaxBatchStream::value_accumulate_gradient(long t, const Vec& x, Vec& grad) const {
    require_dim(grad.size(), dim(), "SoftmaxBatchStream: grad");
    return eval(t, x, &grad);
}

ConvexityCertificate SoftmaxBatchStream::certificate(const BoxDomain& box) const {
    box.validate();
    require_dim(box.dim(), dim(), "SoftmaxBatchStream::certificate: box");
    const int df = spec_.feat_dim;
    Vec max_feat(df, 0.0);
    for (std::size_t i = 0; i < data_->size(); ++i) {
        const double* x = data_->sample(i);
        for (int j = 0; j < df; ++j) {
            max_feat[j] = std::max(max_feat[j], std::fabs(x[j]));
        }
    }
    double g_inf = 0.0;
    for (int c = 0; c < spec_.num_classes; ++c) {
        for (int j = 0; j < df; ++j) {
            const std::size_t idx = static_cast<std::size_t>(c) * df + j;
            const double bnd = std::max(std::fabs(box.lower[idx]), std::fabs(box.upper[idx]));
            g_inf = std::max(g_inf, max_feat[j] + 2.0 * spec_.lambda1 * bnd);
        }
        const std::size_t idx =
            static_cast<std::size_t>(spec_.num_classes) * df + static_cast<std::size_t>(c);
        const double bnd = std::max(std::fabs(box.lower[idx]), std::fabs(box.upper[idx]));
        g_inf = std::max(g_inf, 1.0 + 2.0 * spec_.lambda2 * bnd);
    }
    return {2.0 * std::min(spec_.lambda1, spec_.lambda2), g_inf};
}

SparseSyntheticStream::SparseSyntheticStream(std::size_t d, long T, double p, double g_mag,
                                             std::uint64_t seed, const BoxDomain& box,
                                             SparseCenterMode mode, Vec constant_center)
    : d_(d), T_(T), g_mag_(g_mag), box_(box) {
    if (d_ < 1 || T_ < 1) throw ConfigError("SparseSyntheticStream: need d >= 1 and T >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("SparseSyntheticStream: p must lie in [0,1]");
    if (!(g_mag_ > 0.0)) throw ConfigError("SparseSyntheticStream: g_mag must be positive");
    box_.validate();
    require_dim(box_.dim(), d_, "SparseSyntheticStream: box");

    const std::size_t total = static_cast<std::size_t>(T_) * d_;
    active_.assign(total, 0);
    centers_.assign(total, 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (mode == SparseCenterMode::constant) {
        require_dim(constant_center.size(), d_, "SparseSyntheticStream: constant center");
        if (!box_.contains(constant_center)) {
            throw ConfigError("SparseSyntheticStream: constant center outside box");
        }
    }
    for (std::size_t j = 0; j < total; ++j) {
        const std::size_t i = j % d_;
        active_[j] = coin(rng) < p ? 1 : 0;
        if (mode == SparseCenterMode::constant) {
            centers_[j] = constant_center[i];
        } else {
            std::uniform_real_distribution<double> u(box_.lower[i], box_.upper[i]);
            centers_[j] = u(rng);
        }
    }
}

double SparseSyntheticStream::value(long t, const Vec& x) const {
    check_round(t, T_, "SparseSyntheticStream::value");
    require_dim(x.size(), d_, "SparseSyntheticStream::value: x");
    const std::size_t base = static_cast<std::size_t>(t - 1) * d_;
    double sq = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
        if (!active_[base + i]) continue;
        const double diff = x[i] - centers_[base + i];
        sq += diff * diff;
    }
    return 0.5 * g_mag_ * sq;
}

double SparseSyntheticStream::value_accumulate_gradient(long t, const Vec& x, Vec& grad) const {
    check_round(t, T_, "SparseSyntheticStream::gradient");
    require_dim(x.size(), d_, "SparseSyntheticStream::gradient: x");
    require_dim(grad.size(), d_, "SparseSyntheticStream::gradient: grad");
    const std::size_t base = static_cast<std::size_t>(t - 1) * d_;
    double sq = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
        if (!active_[base + i]) continue;
        const double diff = x[i] - centers_[base + i];
        sq += diff * diff;
        grad[i] += g_mag_ * diff;
    }
    return 0.5 * g_mag_ * sq;
}

ConvexityCertificate SparseSyntheticStream::certificate(const BoxDomain& box) const {
    box.validate();
    require_dim(box.dim(), d_, "SparseSyntheticStream::certificate: box");
    // Inactive rounds have zero curvature in some coordinate, so only
    // plain convexity is certified. The gradient bound is over the realized
    // activity table (a never-active coordinate contributes nothing).
    double width = 0.0;
    for (std::size_t j = 0; j < active_.size(); ++j) {
        if (active_[j]) {
            const std::size_t i = j % d_;
            width = std::max(width, box_.upper[i] - box_.lower[i]);
        }
    }
    return {0.0, g_mag_ * width};
}

std::unique_ptr<SparseSyntheticStream> synth_sparse_stream(std::size_t d, long T, double p,
                                                           double g_mag, std::uint64_t seed,
                                                           const BoxDomain& box) {
    return std::make_unique<SparseSyntheticStream>(d, T, p, g_mag, seed, box);
}

} // namespace regretlab
