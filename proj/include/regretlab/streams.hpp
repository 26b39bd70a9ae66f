#pragma once

#include <cstdint>
#include <memory>

#include "regretlab/dataset.hpp"
#include "regretlab/losses.hpp"
#include "regretlab/types.hpp"

namespace regretlab {

// A replayable sequence of per-round losses. Rounds are 1-based; every
// stream is deterministic given its construction parameters, so the same
// round can be revisited (regret curves, the hindsight oracle).
class LossStream {
public:
    virtual ~LossStream() = default;
    virtual long rounds() const = 0;
    virtual std::size_t dim() const = 0;
    virtual double value(long t, const Vec& x) const = 0;
    // Returns f_t(x) and accumulates its gradient into grad (callers zero
    // grad when they want the plain gradient).
    virtual double value_accumulate_gradient(long t, const Vec& x, Vec& grad) const = 0;
    virtual ConvexityCertificate certificate(const BoxDomain& box) const = 0;
};

// f_t(x) = (curvature/2) ||x - c_t||^2 with an explicit center list.
class QuadraticSeqStream final : public LossStream {
public:
    QuadraticSeqStream(std::vector<Vec> centers, double curvature);
    // Seeded centers drawn uniformly from the box.
    QuadraticSeqStream(long T, const BoxDomain& box, double curvature, std::uint64_t seed);

    long rounds() const override { return static_cast<long>(centers_.size()); }
    std::size_t dim() const override { return centers_.empty() ? 0 : centers_.front().size(); }
    double value(long t, const Vec& x) const override;
    double value_accumulate_gradient(long t, const Vec& x, Vec& grad) const override;
    ConvexityCertificate certificate(const BoxDomain& box) const override;

    const std::vector<Vec>& centers() const { return centers_; }
    double curvature() const { return curvature_; }

private:
    std::vector<Vec> centers_;
    double curvature_;
};

// Mini-batch softmax regression over a shared dataset. Batch order comes
// from a seeded shuffle with wraparound across epochs (reshuffled per
// epoch); one pass is floor(n/m) rounds.
class SoftmaxBatchStream final : public LossStream {
public:
    SoftmaxBatchStream(std::shared_ptr<const Dataset> data, long T, std::size_t batch_size,
                       double lambda1, double lambda2, std::uint64_t seed);

    long rounds() const override { return T_; }
    std::size_t dim() const override;
    double value(long t, const Vec& x) const override;
    double value_accumulate_gradient(long t, const Vec& x, Vec& grad) const override;
    ConvexityCertificate certificate(const BoxDomain& box) const override;

    const Dataset& dataset() const { return *data_; }
    std::size_t batch_size() const { return m_; }

private:
    double eval(long t, const Vec& x, Vec* grad) const;
    std::shared_ptr<const Dataset> data_;
    long T_;
    std::size_t m_;
    SoftmaxSpec spec_;
    std::vector<std::size_t> order_; // T_*m_ sample indices
};

enum class SparseCenterMode : std::uint8_t { random_in_box, constant };

// Each coordinate is independently active with probability p per round;
// active coordinates contribute a quadratic pull (curvature g_mag) toward
// that round's center, so |g_i| <= g_mag * box width.
class SparseSyntheticStream final : public LossStream {
public:
    SparseSyntheticStream(std::size_t d, long T, double p, double g_mag, std::uint64_t seed,
                          const BoxDomain& box,
                          SparseCenterMode mode = SparseCenterMode::random_in_box,
                          Vec constant_center = {});

    long rounds() const override { return T_; }
    std::size_t dim() const override { return d_; }
    double value(long t, const Vec& x) const override;
    double value_accumulate_gradient(long t, const Vec& x, Vec& grad) const override;
    ConvexityCertificate certificate(const BoxDomain& box) const override;

private:
    std::size_t d_;
    long T_;
    double g_mag_;
    BoxDomain box_;
    std::vector<std::uint8_t> active_; // T_*d_
    Vec centers_;                      // T_*d_
};

std::unique_ptr<SparseSyntheticStream> synth_sparse_stream(std::size_t d, long T, double p,
                                                           double g_mag, std::uint64_t seed,
                                                           const BoxDomain& box);

// First t rounds of another stream (per-prefix comparators).
class PrefixStream final : public LossStream {
public:
    PrefixStream(const LossStream& base, long t) : base_(base), t_(t) {}
    long rounds() const override { return t_; }
    std::size_t dim() const override { return base_.dim(); }
    double value(long t, const Vec& x) const override { return base_.value(t, x); }
    double value_accumulate_gradient(long t, const Vec& x, Vec& grad) const override {
        return base_.value_accumulate_gradient(t, x, grad);
    }
    ConvexityCertificate certificate(const BoxDomain& box) const override {
        return base_.certificate(box);
    }

private:
    const LossStream& base_;
    long t_;
};

} // namespace regretlab
