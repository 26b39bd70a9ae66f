#include "regretlab/harness.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "regretlab/kernels.hpp"

namespace regretlab {

RegretTrace run_online(const LossStream& stream, OptimizerState& opt, long T, RunLog* log) {
    if (T < 1 || T > stream.rounds()) {
        throw ConfigError("run_online: T outside the stream's horizon");
    }
    require_dim(opt.dim(), stream.dim(), "run_online: optimizer dimension");

    RegretTrace trace;
    trace.loss.reserve(T);
    trace.cum_loss.reserve(T);
    Vec g(opt.dim());
    double cum = 0.0;
    for (long t = 1; t <= T; ++t) {
        std::fill(g.begin(), g.end(), 0.0);
        const double ft = stream.value_accumulate_gradient(t, opt.x, g);
        if (!std::isfinite(ft)) {
            throw NonFiniteError("run_online: non-finite loss at round " + std::to_string(t));
        }
        trace.loss.push_back(ft);
        cum += ft;
        trace.cum_loss.push_back(cum);
        if (log) log->g.push_back(g);
        step(opt, g);
        if (log) {
            log->v.push_back(opt.moment.v);
            log->x.push_back(opt.x);
            log->snaps.push_back(snapshot(opt));
        }
    }
    return trace;
}

namespace {

double total_value(const LossStream& stream, const Vec& x) {
    double f = 0.0;
    for (long t = 1; t <= stream.rounds(); ++t) {
        f += stream.value(t, x);
    }
    return f;
}

double total_value_gradient(const LossStream& stream, const Vec& x, Vec& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double f = 0.0;
    for (long t = 1; t <= stream.rounds(); ++t) {
        f += stream.value_accumulate_gradient(t, x, grad);
    }
    return f;
}

// || x - clamp(x - g) ||_2 : zero exactly at a box-constrained stationary
// point, equal to ||g|| at interior points.
double mapping_norm(const Vec& x, const Vec& g, const BoxDomain& box) {
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - box.clamp_coord(i, x[i] - g[i]);
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

} // namespace

Vec best_in_hindsight(const LossStream& stream, const BoxDomain& box, const OracleOptions& opts) {
    box.validate();
    require_dim(box.dim(), stream.dim(), "best_in_hindsight: box");
    const std::size_t d = box.dim();

    Vec x = opts.x0.empty() ? Vec(d, 0.0) : opts.x0;
    require_dim(x.size(), d, "best_in_hindsight: x0");
    box.clamp(x);

    Vec gx(d);
    double fx = total_value_gradient(stream, x, gx);
    if (mapping_norm(x, gx, box) <= opts.tol) return x;

    Vec y = x, gy = gx, z(d), diff(d);
    double fy = fx;
    double L = 1.0;
    double tmom = 1.0;
    long evals = 0;
    for (long iter = 0; iter < opts.max_iter; ++iter) {
        // Backtracking: z = clamp(y - gy/L) until the quadratic upper model
        // at y dominates F(z).
        double fz = 0.0;
        for (;;) {
            for (std::size_t i = 0; i < d; ++i) {
                z[i] = box.clamp_coord(i, y[i] - gy[i] / L);
                diff[i] = z[i] - y[i];
            }
            fz = total_value(stream, z);
            ++evals;
            const double lin = kernels::active().dot(gy.data(), diff.data(), d);
            const double quad = kernels::active().dot(diff.data(), diff.data(), d);
            if (fz <= fy + lin + 0.5 * L * quad + 1e-12 * std::max(1.0, std::fabs(fy))) break;
            L *= 2.0;
            if (L > 1e30) {
                throw OracleFailure("best_in_hindsight: backtracking diverged (L > 1e30)");
            }
        }

        if (fz > fx && (y != x)) {
            // Momentum overshoot: restart from the best accepted point.
            y = x;
            fy = total_value_gradient(stream, y, gy);
            tmom = 1.0;
            continue;
        }

        // Cheap stationarity surrogate, then an exact check before accepting
        // convergence.
        double step_sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double s = z[i] - y[i];
            step_sq += s * s;
        }
        if (L * std::sqrt(step_sq) <= opts.tol) {
            Vec gz(d);
            total_value_gradient(stream, z, gz);
            if (mapping_norm(z, gz, box) <= opts.tol) return z;
            // Not converged after all: restart cleanly from z.
            x = z;
            fx = fz;
            y = z;
            fy = fz;
            gy = gz;
            tmom = 1.0;
            continue;
        }

        const double tnext = opts.accelerate ? 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tmom * tmom))
                                             : 1.0;
        const double mom = (tmom - 1.0) / tnext;
        for (std::size_t i = 0; i < d; ++i) {
            y[i] = z[i] + mom * (z[i] - x[i]);
        }
        x = z;
        fx = fz;
        tmom = tnext;
        fy = total_value_gradient(stream, y, gy);
        L *= 0.9; // allow the local smoothness estimate to relax
    }
    Vec gfin(d);
    total_value_gradient(stream, x, gfin);
    std::ostringstream msg;
    msg << "best_in_hindsight: no convergence after " << opts.max_iter << " iterations ("
        << evals << " evaluations); mapping norm " << mapping_norm(x, gfin, box) << ", tol "
        << opts.tol << ", L " << L;
    throw OracleFailure(msg.str());
}

void regret_curve(RegretTrace& trace, const Vec& x_star, const LossStream& stream,
                  ComparatorMode mode, const BoxDomain* box, const OracleOptions& opts) {
    const long T = trace.rounds();
    if (T < 1 || T > stream.rounds()) {
        throw ConfigError("regret_curve: trace and stream are misaligned");
    }
    require_dim(x_star.size(), stream.dim(), "regret_curve: x_star");
    trace.cum_star.assign(T, 0.0);
    trace.regret.assign(T, 0.0);
    trace.x_star = x_star;

    if (mode == ComparatorMode::fixed_horizon) {
        double cum = 0.0;
        for (long t = 1; t <= T; ++t) {
            cum += stream.value(t, x_star);
            trace.cum_star[t - 1] = cum;
            trace.regret[t - 1] = trace.cum_loss[t - 1] - cum;
        }
        return;
    }
    if (!box) throw ConfigError("regret_curve: per-prefix mode needs the box");
    OracleOptions warm = opts;
    for (long t = 1; t <= T; ++t) {
        PrefixStream prefix(stream, t);
        Vec xs = best_in_hindsight(prefix, *box, warm);
        warm.x0 = xs;
        trace.cum_star[t - 1] = total_value(prefix, xs);
        trace.regret[t - 1] = trace.cum_loss[t - 1] - trace.cum_star[t - 1];
    }
    trace.x_star = warm.x0;
}

void emit_csv(const RegretTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("emit_csv: cannot open " + path);
    out << "t,loss,cum_loss,cum_star,regret,bound\n";
    char buf[512];
    const bool scored = !trace.cum_star.empty();
    for (long t = 1; t <= trace.rounds(); ++t) {
        const std::size_t i = static_cast<std::size_t>(t - 1);
        int n = std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g", t, trace.loss[i],
                              trace.cum_loss[i]);
        out.write(buf, n);
        if (scored) {
            n = std::snprintf(buf, sizeof buf, ",%.17g,%.17g", trace.cum_star[i],
                              trace.regret[i]);
            out.write(buf, n);
        } else {
            out << ",,";
        }
        if (trace.has_bound()) {
            n = std::snprintf(buf, sizeof buf, ",%.17g", trace.bound[i]);
            out.write(buf, n);
        } else {
            out << ",";
        }
        out << "\n";
    }
    if (!out) throw IoError("emit_csv: write failed for " + path);
}

RegretTrace parse_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("parse_trace_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "t,loss,cum_loss,cum_star,regret,bound") {
        throw IoError("parse_trace_csv: bad header in " + path);
    }
    RegretTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string, 6> cell;
        std::size_t field = 0, start = 0;
        for (std::size_t i = 0; i <= line.size() && field < 6; ++i) {
            if (i == line.size() || line[i] == ',') {
                cell[field++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field != 6) throw IoError("parse_trace_csv: malformed row in " + path);
        trace.loss.push_back(std::stod(cell[1]));
        trace.cum_loss.push_back(std::stod(cell[2]));
        if (!cell[3].empty()) {
            trace.cum_star.push_back(std::stod(cell[3]));
            trace.regret.push_back(std::stod(cell[4]));
        }
        if (!cell[5].empty()) {
            trace.bound.push_back(std::stod(cell[5]));
        }
    }
    return trace;
}

void emit_state_csv(const RunLog& log, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("emit_state_csv: cannot open " + path);
    const std::size_t d = log.x.empty() ? 0 : log.x.front().size();
    out << "t";
    for (std::size_t i = 0; i < d; ++i) out << ",x" << i;
    out << ",v_hat_min,v_hat_max,step_min,step_max\n";
    char buf[160];
    for (std::size_t r = 0; r < log.snaps.size(); ++r) {
        out << log.snaps[r].t;
        for (std::size_t i = 0; i < d; ++i) {
            int n = std::snprintf(buf, sizeof buf, ",%.17g", log.x[r][i]);
            out.write(buf, n);
        }
        int n = std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g\n",
                              log.snaps[r].v_hat_min, log.snaps[r].v_hat_max,
                              log.snaps[r].step_min, log.snaps[r].step_max);
        out.write(buf, n);
    }
    if (!out) throw IoError("emit_state_csv: write failed for " + path);
}

} // namespace regretlab
