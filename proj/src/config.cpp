#include "regretlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace regretlab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const KvMap& kv, const std::string& key) {
    try {
        return std::stod(kv.at(key));
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key);
    }
}

long to_long(const KvMap& kv, const std::string& key) {
    try {
        return std::stol(kv.at(key));
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key);
    }
}

bool to_bool(const KvMap& kv, const std::string& key) {
    const std::string& v = kv.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: bad boolean value for " + key);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            const std::string item = trim(s.substr(start, i - start));
            if (!item.empty()) out.push_back(item);
            start = i + 1;
        }
    }
    return out;
}

} // namespace

KvMap parse_kv_text(const std::string& text) {
    KvMap kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config: unterminated section at line " + std::to_string(lineno));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty() || section.empty()) {
            throw ConfigError("config: key outside a [section] at line " + std::to_string(lineno));
        }
        kv[section + "." + key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KvMap parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str());
}

ScheduleSet default_schedule(Algorithm algo) {
    ScheduleSet s;
    s.alpha = 0.1;
    switch (algo) {
    case Algorithm::sadam:
        s.beta1 = 0.9;
        s.nu = 0.995;
        s.gamma = 0.9;
        s.beta2_kind = Beta2Kind::gamma_over_t;
        s.delta_kind = DeltaKind::constant;
        s.delta = 1e-2;
        break;
    case Algorithm::sadamd:
        s.beta1 = 0.9;
        s.nu = 0.995;
        s.gamma = 0.9;
        s.beta2_kind = Beta2Kind::gamma_over_t;
        s.delta_kind = DeltaKind::rational;
        s.xi1 = 0.1;
        s.xi2 = 1.0;
        break;
    case Algorithm::sc_rmsprop:
        s.beta1 = 0.0;
        s.gamma = 0.9;
        s.beta2_kind = Beta2Kind::gamma_over_t;
        s.delta_kind = DeltaKind::exp_decay;
        s.xi1 = 0.1;
        s.xi2 = 1.0;
        break;
    case Algorithm::sc_adagrad:
        s.beta1 = 0.0;
        s.delta_kind = DeltaKind::exp_decay;
        s.xi1 = 0.1;
        s.xi2 = 1.0;
        break;
    case Algorithm::adam:
    case Algorithm::amsgrad:
        s.beta1 = 0.9;
        s.nu = 1.0; // constant beta1, as run in practice
        s.delta_kind = DeltaKind::constant;
        s.delta = 1e-8;
        break;
    case Algorithm::adamnc:
        s.beta1 = 0.9;
        s.nu = 1.0;
        s.beta2_kind = Beta2Kind::exact_one_over_t;
        s.delta_kind = DeltaKind::constant;
        s.delta = 1e-8;
        break;
    case Algorithm::ogd:
    case Algorithm::ogd_convex:
        s.beta1 = 0.0;
        s.delta_kind = DeltaKind::constant;
        s.delta = 1e-2;
        break;
    }
    return s;
}

ExperimentConfig config_from_kv(const KvMap& kv) {
    ExperimentConfig cfg;
    auto has = [&](const char* key) { return kv.count(key) != 0; };

    if (has("experiment.algo")) {
        if (!algorithm_from_name(kv.at("experiment.algo"), cfg.algo)) {
            throw ConfigError("config: unknown algorithm '" + kv.at("experiment.algo") + "'");
        }
    }
    cfg.sched = default_schedule(cfg.algo);
    if (has("schedule.alpha")) {
        cfg.sched.alpha = to_double(kv, "schedule.alpha");
        cfg.alpha_explicit = true;
    }
    if (has("schedule.beta1")) cfg.sched.beta1 = to_double(kv, "schedule.beta1");
    if (has("schedule.nu")) cfg.sched.nu = to_double(kv, "schedule.nu");
    if (has("schedule.gamma")) cfg.sched.gamma = to_double(kv, "schedule.gamma");
    if (has("schedule.beta2_kind")) {
        const std::string& k = kv.at("schedule.beta2_kind");
        if (k == "exact_one_over_t") cfg.sched.beta2_kind = Beta2Kind::exact_one_over_t;
        else if (k == "gamma_over_t") cfg.sched.beta2_kind = Beta2Kind::gamma_over_t;
        else throw ConfigError("config: unknown beta2_kind '" + k + "'");
    }
    if (has("schedule.delta_kind")) {
        const std::string& k = kv.at("schedule.delta_kind");
        if (k == "constant") cfg.sched.delta_kind = DeltaKind::constant;
        else if (k == "exp_decay") cfg.sched.delta_kind = DeltaKind::exp_decay;
        else if (k == "rational") cfg.sched.delta_kind = DeltaKind::rational;
        else throw ConfigError("config: unknown delta_kind '" + k + "'");
    }
    if (has("schedule.delta")) cfg.sched.delta = to_double(kv, "schedule.delta");
    if (has("schedule.xi1")) cfg.sched.xi1 = to_double(kv, "schedule.xi1");
    if (has("schedule.xi2")) cfg.sched.xi2 = to_double(kv, "schedule.xi2");
    if (has("schedule.adam_beta2")) cfg.adam_beta2 = to_double(kv, "schedule.adam_beta2");
    cfg.sched.validate();

    if (has("stream.kind")) {
        cfg.stream_kind = kv.at("stream.kind");
        if (cfg.stream_kind != "softmax_minibatch" && cfg.stream_kind != "quadratic_sequence" &&
            cfg.stream_kind != "sparse_synthetic") {
            throw ConfigError("config: unknown stream kind '" + cfg.stream_kind + "'");
        }
    }
    if (has("stream.data_dir")) cfg.data_dir = kv.at("stream.data_dir");
    if (has("stream.n_subset")) cfg.n_subset = static_cast<std::size_t>(to_long(kv, "stream.n_subset"));
    if (has("stream.batch")) cfg.batch = static_cast<std::size_t>(to_long(kv, "stream.batch"));
    if (has("stream.lambda1")) cfg.lambda1 = to_double(kv, "stream.lambda1");
    if (has("stream.lambda2")) cfg.lambda2 = to_double(kv, "stream.lambda2");
    if (has("stream.dim")) cfg.dim = static_cast<std::size_t>(to_long(kv, "stream.dim"));
    if (has("stream.curvature")) cfg.curvature = to_double(kv, "stream.curvature");
    if (has("stream.p")) cfg.sparse_p = to_double(kv, "stream.p");
    if (has("stream.g_mag")) cfg.g_mag = to_double(kv, "stream.g_mag");

    if (has("box.lower")) {
        cfg.box_lower = to_double(kv, "box.lower");
        cfg.box_explicit = true;
    }
    if (has("box.upper")) {
        cfg.box_upper = to_double(kv, "box.upper");
        cfg.box_explicit = true;
    }

    if (has("experiment.T")) cfg.T = to_long(kv, "experiment.T");
    if (has("experiment.seed")) cfg.seed = static_cast<std::uint64_t>(to_long(kv, "experiment.seed"));
    if (has("experiment.out")) cfg.out = kv.at("experiment.out");

    if (has("oracle.tol")) cfg.oracle_tol = to_double(kv, "oracle.tol");
    if (has("oracle.max_iter")) cfg.oracle_max_iter = to_long(kv, "oracle.max_iter");
    if (has("oracle.accelerate")) cfg.oracle_accelerate = to_bool(kv, "oracle.accelerate");

    if (has("sweep.algos")) cfg.sweep_algos = split_list(kv.at("sweep.algos"));
    if (has("sweep.alphas")) {
        for (const std::string& a : split_list(kv.at("sweep.alphas"))) {
            try {
                cfg.sweep_alphas.push_back(std::stod(a));
            } catch (const std::exception&) {
                throw ConfigError("config: bad alpha '" + a + "' in sweep.alphas");
            }
        }
    }
    if (has("sweep.out_dir")) cfg.out_dir = kv.at("sweep.out_dir");
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "[experiment]\n";
    out << "algo = " << algorithm_name(cfg.algo) << "\n";
    out << "T = " << cfg.T << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "out = " << cfg.out << "\n";
    out << "\n[schedule]\n";
    out << "alpha = " << cfg.sched.alpha << "\n";
    out << "beta1 = " << cfg.sched.beta1 << "\n";
    out << "nu = " << cfg.sched.nu << "\n";
    out << "gamma = " << cfg.sched.gamma << "\n";
    out << "beta2_kind = "
        << (cfg.sched.beta2_kind == Beta2Kind::exact_one_over_t ? "exact_one_over_t"
                                                                : "gamma_over_t")
        << "\n";
    out << "delta_kind = "
        << (cfg.sched.delta_kind == DeltaKind::constant
                ? "constant"
                : cfg.sched.delta_kind == DeltaKind::exp_decay ? "exp_decay" : "rational")
        << "\n";
    out << "delta = " << cfg.sched.delta << "\n";
    out << "xi1 = " << cfg.sched.xi1 << "\n";
    out << "xi2 = " << cfg.sched.xi2 << "\n";
    out << "adam_beta2 = " << cfg.adam_beta2 << "\n";
    out << "\n[stream]\n";
    out << "kind = " << cfg.stream_kind << "\n";
    if (!cfg.data_dir.empty()) out << "data_dir = " << cfg.data_dir << "\n";
    out << "n_subset = " << cfg.n_subset << "\n";
    out << "batch = " << cfg.batch << "\n";
    out << "lambda1 = " << cfg.lambda1 << "\n";
    out << "lambda2 = " << cfg.lambda2 << "\n";
    out << "dim = " << cfg.dim << "\n";
    out << "curvature = " << cfg.curvature << "\n";
    out << "p = " << cfg.sparse_p << "\n";
    out << "g_mag = " << cfg.g_mag << "\n";
    out << "\n[box]\n";
    out << "lower = " << cfg.box_lower << "\n";
    out << "upper = " << cfg.box_upper << "\n";
    out << "\n[oracle]\n";
    out << "tol = " << cfg.oracle_tol << "\n";
    out << "max_iter = " << cfg.oracle_max_iter << "\n";
    out << "accelerate = " << (cfg.oracle_accelerate ? "true" : "false") << "\n";
    if (!cfg.sweep_algos.empty() || !cfg.sweep_alphas.empty()) {
        out << "\n[sweep]\n";
        if (!cfg.sweep_algos.empty()) {
            out << "algos = ";
            for (std::size_t i = 0; i < cfg.sweep_algos.size(); ++i) {
                out << (i ? "," : "") << cfg.sweep_algos[i];
            }
            out << "\n";
        }
        if (!cfg.sweep_alphas.empty()) {
            out << "alphas = ";
            for (std::size_t i = 0; i < cfg.sweep_alphas.size(); ++i) {
                out << (i ? "," : "") << cfg.sweep_alphas[i];
            }
            out << "\n";
        }
        out << "out_dir = " << cfg.out_dir << "\n";
    }
    return out.str();
}

std::string resolve_data_dir(const ExperimentConfig& cfg) {
    if (!cfg.data_dir.empty()) return cfg.data_dir;
    if (const char* env = std::getenv("REGRET_LAB_DATA_DIR")) return env;
    return "data";
}

Experiment make_experiment(const ExperimentConfig& cfg) {
    Experiment exp;
    if (cfg.stream_kind == "softmax_minibatch") {
        auto data = std::make_shared<Dataset>(
            load_mnist_or_synthetic(resolve_data_dir(cfg), cfg.n_subset, cfg.seed,
                                    &exp.data_source));
        const long one_pass = static_cast<long>(data->size() / cfg.batch);
        exp.T = cfg.T > 0 ? cfg.T : one_pass;
        exp.stream = std::make_shared<SoftmaxBatchStream>(data, exp.T, cfg.batch, cfg.lambda1,
                                                          cfg.lambda2, cfg.seed);
        const double lo = cfg.box_explicit ? cfg.box_lower : -10.0;
        const double hi = cfg.box_explicit ? cfg.box_upper : 10.0;
        exp.box = BoxDomain::uniform(exp.stream->dim(), lo, hi);
    } else if (cfg.stream_kind == "quadratic_sequence") {
        if (cfg.T < 1) throw ConfigError("config: quadratic_sequence needs T >= 1");
        exp.T = cfg.T;
        exp.box = BoxDomain::uniform(cfg.dim, cfg.box_lower, cfg.box_upper);
        exp.stream = std::make_shared<QuadraticSeqStream>(exp.T, exp.box, cfg.curvature, cfg.seed);
    } else if (cfg.stream_kind == "sparse_synthetic") {
        if (cfg.T < 1) throw ConfigError("config: sparse_synthetic needs T >= 1");
        exp.T = cfg.T;
        exp.box = BoxDomain::uniform(cfg.dim, cfg.box_lower, cfg.box_upper);
        exp.stream = std::make_shared<SparseSyntheticStream>(cfg.dim, exp.T, cfg.sparse_p,
                                                             cfg.g_mag, cfg.seed, exp.box);
    } else {
        throw ConfigError("config: unknown stream kind '" + cfg.stream_kind + "'");
    }
    return exp;
}

OptimizerState make_optimizer(const ExperimentConfig& cfg, const BoxDomain& box) {
    OptimizerState st = make_state(cfg.algo, cfg.sched, box);
    st.adam_beta2 = cfg.adam_beta2;
    return st;
}

} // namespace regretlab
