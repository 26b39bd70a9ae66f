#pragma once

#include <map>
#include <memory>
#include <string>

#include "regretlab/harness.hpp"
#include "regretlab/optimizers.hpp"
#include "regretlab/streams.hpp"

namespace regretlab {

// Flat key-value config with [section] headers and '#' comments. Keys are
// stored as "section.key"; every field has a documented default and the
// effective config serializes back to the same format.
using KvMap = std::map<std::string, std::string>;

KvMap parse_kv_text(const std::string& text);
KvMap parse_kv_file(const std::string& path);

struct ExperimentConfig {
    Algorithm algo = Algorithm::sadam;
    ScheduleSet sched;          // effective schedule (per-algorithm defaults applied)
    double adam_beta2 = 0.999;
    bool alpha_explicit = false;

    std::string stream_kind = "quadratic_sequence";
    // softmax_minibatch
    std::string data_dir;       // empty: $REGRET_LAB_DATA_DIR, then ./data
    std::size_t n_subset = 10000;
    std::size_t batch = 64;
    double lambda1 = 1e-2;
    double lambda2 = 1e-2;
    // quadratic_sequence / sparse_synthetic
    std::size_t dim = 1;
    double curvature = 1.0;
    double sparse_p = 0.004;
    double g_mag = 1.0;

    double box_lower = -1.0;    // uniform box; softmax defaults to [-10,10]
    double box_upper = 1.0;
    bool box_explicit = false;

    long T = 0;                 // 0: one pass for softmax, else required
    std::uint64_t seed = 1;
    std::string out = "trace.csv";

    double oracle_tol = 1e-8;
    long oracle_max_iter = 100000;
    bool oracle_accelerate = true;

    std::vector<std::string> sweep_algos;
    std::vector<double> sweep_alphas;
    std::string out_dir = "sweep_out";
};

// The section-4 per-algorithm defaults (beta1, beta2 schedule, delta kind).
ScheduleSet default_schedule(Algorithm algo);

ExperimentConfig config_from_kv(const KvMap& kv);
std::string serialize_config(const ExperimentConfig& cfg);

std::string resolve_data_dir(const ExperimentConfig& cfg);

// Stream + box + fresh optimizer state assembled from a config.
struct Experiment {
    std::shared_ptr<LossStream> stream;
    BoxDomain box;
    long T = 0;
    std::string data_source; // softmax runs: "mnist" or "synthetic"
};

Experiment make_experiment(const ExperimentConfig& cfg);
OptimizerState make_optimizer(const ExperimentConfig& cfg, const BoxDomain& box);

} // namespace regretlab
