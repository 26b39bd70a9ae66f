#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "regretlab/analysis.hpp"

using namespace regretlab;

namespace {

std::vector<Vec> random_grads(std::mt19937_64& rng, long T, std::size_t d, double g_inf = 1.0) {
    std::uniform_real_distribution<double> u(-g_inf, g_inf);
    std::vector<Vec> g(T, Vec(d));
    for (auto& row : g) {
        for (double& x : row) x = u(rng);
    }
    return g;
}

// v recursion under the beta2 sandwich, as in the optimizers.
std::vector<Vec> v_recursion(const std::vector<Vec>& g, const ScheduleSet& sched) {
    const std::size_t d = g.front().size();
    std::vector<Vec> v_hist;
    Vec v(d, 0.0);
    for (std::size_t ti = 0; ti < g.size(); ++ti) {
        const double b2 = beta2_at(sched, static_cast<long>(ti) + 1);
        for (std::size_t i = 0; i < d; ++i) {
            v[i] = b2 * v[i] + (1.0 - b2) * g[ti][i] * g[ti][i];
        }
        v_hist.push_back(v);
    }
    return v_hist;
}

ScheduleSet sandwich_sched(double gamma) {
    ScheduleSet s;
    s.gamma = gamma;
    s.beta2_kind = Beta2Kind::gamma_over_t;
    return s;
}

} // namespace

TEST_CASE("condition 3 on the all-ones stream with lambda alpha = (2-gamma)") {
    // gamma = 0.9, g = 1, lambda*alpha*(1-beta1) = 1.1
    const std::vector<Vec> g(2, Vec{1.0});
    const auto v_hist = v_recursion(g, sandwich_sched(0.9));
    CHECK(v_hist[0][0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(v_hist[1][0] == doctest::Approx(0.945).epsilon(1e-12));

    const auto rep = check_condition3(v_hist, 1.0, 1.1, 0.0);
    CHECK(rep.holds);
    // increments: t=1 -> 0.9 (slack 0.2), t=2 -> 2*0.945-0.9 = 0.99 (slack 0.11)
    CHECK(rep.worst_margin == doctest::Approx(0.11).epsilon(1e-12));
    CHECK(rep.worst_t == 2);
    CHECK(rep.empirical_c == doctest::Approx(0.99).epsilon(1e-12));
}

TEST_CASE("condition 3 on zero gradients holds with full slack") {
    const std::vector<Vec> v_hist(10, Vec(3, 0.0));
    const auto rep = check_condition3(v_hist, 2.0, 1.0, 0.25);
    CHECK(rep.holds);
    CHECK(rep.worst_margin == doctest::Approx(1.0 * (1.0 - 0.25)).epsilon(1e-12));
    CHECK(rep.empirical_c == 0.0);
}

TEST_CASE("condition 3 reports violations for a constant beta2 schedule") {
    // beta2 = 0.5 constant: t v_t grows like t/2 * g^2, increments ~ g^2 * t/2
    const long T = 50;
    std::vector<Vec> v_hist;
    double v = 0.0;
    for (long t = 1; t <= T; ++t) {
        v = 0.5 * v + 0.5 * 4.0; // |g| = 2
        v_hist.push_back({v});
    }
    const auto rep = check_condition3(v_hist, 1.0, 1.1, 0.0);
    CHECK_FALSE(rep.holds);
    CHECK(rep.worst_margin < 0.0);
    CHECK(rep.empirical_c > 1.1);
}

TEST_CASE("condition 4 is exact at gamma = 1 and holds at gamma = 0.9") {
    std::mt19937_64 rng(31);

    ScheduleSet exact;
    exact.beta2_kind = Beta2Kind::exact_one_over_t;
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = random_grads(rng, 200, 2);
        const auto r = check_condition4(g, exact, 1.0);
        CHECK(r.holds);
        CHECK(std::fabs(r.worst_margin) <= 1e-9); // t v_t == sum g^2, telescoping
    }

    const ScheduleSet s9 = sandwich_sched(0.9);
    for (int rep = 0; rep < 100; ++rep) {
        const auto g = random_grads(rng, 1000, 1);
        CHECK(check_condition4(g, s9, 1.0 / 0.9).holds);
    }

    // single round: margin (1-beta2_1) g^2 - gamma g^2 = 0 for the sandwich edge
    const auto r1 = check_condition4({Vec{0.7}}, s9, 1.0 / 0.9);
    CHECK(r1.holds);
    CHECK(std::fabs(r1.worst_margin) <= 1e-12);
}

TEST_CASE("theorem 1 bound matches plug-in evaluations") {
    BoundInputs inp;
    inp.d = 1;
    inp.beta1 = 0.0;
    inp.delta = 0.01;
    inp.alpha = 1.0;
    inp.d_inf = 2.0;
    inp.g_inf = 1.0;
    inp.zeta = 1.0;
    inp.cumsq = {0.0};
    CHECK(theorem1_bound(inp) == doctest::Approx(0.02).epsilon(1e-12));

    inp.zeta = 10.0 / 9.0;
    inp.cumsq = {100.0};
    const double expect = 0.02 + (10.0 / 9.0) * std::log(9000.0 + 1.0);
    CHECK(theorem1_bound(inp) == doctest::Approx(expect).epsilon(1e-12));

    // doubling the gradient mass moves only the log term, upward
    BoundInputs more = inp;
    more.cumsq = {200.0};
    CHECK(theorem1_bound(more) > theorem1_bound(inp));
    CHECK(theorem1_bound(more) - theorem1_bound(inp) ==
          doctest::Approx((10.0 / 9.0) * (std::log(200.0 / (inp.zeta * 0.01) + 1.0) -
                                          std::log(100.0 / (inp.zeta * 0.01) + 1.0)))
              .epsilon(1e-12));
}

TEST_CASE("theorem 1 rejects nu = 1 with momentum") {
    BoundInputs inp;
    inp.d = 1;
    inp.beta1 = 0.9;
    inp.nu = 1.0;
    inp.cumsq = {1.0};
    CHECK_THROWS_AS(theorem1_bound(inp), BoundPreconditionError);
    inp.nu = 0.995;
    CHECK_NOTHROW(theorem1_bound(inp));
}

TEST_CASE("corollary bounds: plug-ins, reductions, and range checks") {
    BoundInputs inp;
    inp.d = 1;
    inp.beta1 = 0.0;
    inp.gamma = 0.9;
    inp.zeta = 1.0 / 0.9;
    inp.delta = 0.01;
    inp.alpha = 2.0;
    inp.lambda = 1.0;
    inp.d_inf = 2.0;
    inp.g_inf = 1.0;
    inp.cumsq = {0.0};

    // cor2 with zero gradients: only the first term survives
    CHECK(corollary_bounds(inp, CorollaryId::cor2) ==
          doctest::Approx(1.0 * 4.0 * 0.01 / (2.0 * 2.0)).epsilon(1e-12));

    // cor1 with beta1 = 0 equals cor2 exactly
    inp.cumsq = {42.0};
    CHECK(corollary_bounds(inp, CorollaryId::cor1) ==
          doctest::Approx(corollary_bounds(inp, CorollaryId::cor2)).epsilon(1e-15));
    CHECK(theorem1_bound(inp) ==
          doctest::Approx(corollary_bounds(inp, CorollaryId::cor2)).epsilon(1e-15));

    // cor5 with xi1 = 0, xi2 = 1: the second log term vanishes
    inp.xi1 = 0.0;
    inp.xi2 = 1.0;
    const double expect =
        4.0 / (2.0 * inp.alpha) + inp.alpha / 0.9 * std::log(0.9 * 42.0 + 1.0);
    CHECK(corollary_bounds(inp, CorollaryId::cor5) == doctest::Approx(expect).epsilon(1e-12));

    // alpha below the corollary's floor is a named precondition error
    BoundInputs bad = inp;
    bad.alpha = 1.0; // < (2-0.9)*1/1 = 1.1
    CHECK_THROWS_AS(corollary_bounds(bad, CorollaryId::cor2), BoundPreconditionError);
    CHECK_THROWS_WITH_AS(corollary_bounds(bad, CorollaryId::cor2),
                         doctest::Contains("Corollary 2"), BoundPreconditionError);
}

TEST_CASE("corollary 4 equals theorem 3 at beta1 = 0 with zeta = 1/gamma") {
    BoundInputs inp;
    inp.d = 2;
    inp.T = 100;
    inp.beta1 = 0.0;
    inp.gamma = 0.8;
    inp.zeta = 1.0 / 0.8;
    inp.alpha = 3.0;
    inp.lambda = 1.0;
    inp.d_inf = 2.0;
    inp.g_inf = 1.0;
    inp.cumsq = {10.0, 55.0};
    inp.delta_1 = {1.0, 0.9};
    inp.delta_T = {0.05, 0.02};
    CHECK(corollary_bounds(inp, CorollaryId::cor4) ==
          doctest::Approx(theorem3_bound(inp)).epsilon(1e-14));
}

TEST_CASE("mukkamala bound: gamma = 1 kills the third term; zero gradients grow with T") {
    BoundInputs inp;
    inp.d = 1;
    inp.gamma = 1.0;
    inp.delta = 0.01;
    inp.alpha = 1.0;
    inp.d_inf = 2.0;
    inp.T = 100;
    inp.v_T = {0.5};
    const Vec inf_jv = {0.2};
    const double expect =
        0.01 * 4.0 / 2.0 + 0.5 * std::log(100.0 * 0.5 / 0.01 + 1.0);
    CHECK(mukkamala_bound(inp, inf_jv) == doctest::Approx(expect).epsilon(1e-12));

    // zero-gradient stream: data-independent log T growth survives
    inp.gamma = 0.9;
    inp.v_T = {0.0};
    const Vec zero_inf = {0.0};
    inp.T = 100;
    const double m100 = mukkamala_bound(inp, zero_inf);
    inp.T = 1000;
    const double m1000 = mukkamala_bound(inp, zero_inf);
    CHECK(m1000 > m100);
    const double third_1000 = 1.0 / 0.9 * (1.0 - 0.9) * (1.0 + std::log(1000.0)) / 0.01;
    CHECK(m1000 == doctest::Approx(0.01 * 4.0 / 2.0 + third_1000).epsilon(1e-12));

    // T = 1 plug-in
    inp.T = 1;
    inp.v_T = {0.3};
    const Vec iv1 = {0.3};
    const double expect1 = 0.02 + 1.0 / 1.8 * std::log(0.3 / 0.01 + 1.0) +
                           (1.0 / 0.9) * 0.1 * (1.0 + 0.0) / (0.3 + 0.01);
    CHECK(mukkamala_bound(inp, iv1) == doctest::Approx(expect1).epsilon(1e-12));
}

TEST_CASE("lemma 3 holds on hand cases and random scans") {
    // single term with g^2 = zeta delta: lhs = 1/2 <= log 2
    auto rep = lemma3_check({0.25}, 0.25);
    CHECK(rep.holds);
    CHECK(rep.worst_margin == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-12));

    rep = lemma3_check(Vec(20, 0.0), 1.0);
    CHECK(rep.holds);
    CHECK(rep.worst_margin == 0.0);

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> len(1, 300);
    std::uniform_real_distribution<double> sq(0.0, 3.0);
    for (double zd : {1e-2, 1.0, 1e2}) {
        for (int t = 0; t < 1000; ++t) {
            Vec squares(len(rng));
            for (double& s : squares) s = sq(rng);
            CHECK(lemma3_check(squares, zd).holds);
        }
    }
}

TEST_CASE("lemma 2: zero and constant gradient hand cases") {
    ScheduleSet s;
    s.beta1 = 0.0;
    s.gamma = 1.0;
    s.beta2_kind = Beta2Kind::exact_one_over_t;
    s.delta_kind = DeltaKind::constant;
    s.delta = 0.01;
    s.alpha = 1.0;
    const BoxDomain box = BoxDomain::uniform(1, -1.0, 1.0);

    {
        OptimizerState st = make_state(Algorithm::sadam, s, box);
        const auto trace = record_moment_trace(std::move(st), std::vector<Vec>(5, Vec{0.0}));
        const auto rep = lemma2_check(trace, 1.0);
        CHECK(rep.holds);
        CHECK(rep.worst_margin == 0.0); // 0 <= 0
    }
    {
        OptimizerState st = make_state(Algorithm::sadam, s, box);
        const auto trace = record_moment_trace(std::move(st), std::vector<Vec>(2, Vec{1.0}));
        const auto rep = lemma2_check(trace, 1.0);
        // v_hat_1 = 1 + delta, v_hat_2 = 1 + delta/2
        const double lhs = 1.0 / (1.0 + 0.01) + 0.5 / (1.0 + 0.005);
        const double rhs = std::log(2.0 / 0.01 + 1.0);
        CHECK(rep.holds);
        CHECK(rep.worst_margin == doctest::Approx(rhs - lhs).epsilon(1e-12));
    }
}

TEST_CASE("lemma 2 / lemma 5 hold on random sadam and sadamd trajectories") {
    std::mt19937_64 rng(2024);
    const BoxDomain box = BoxDomain::uniform(3, -1.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const auto grads = random_grads(rng, 300, 3);
        ScheduleSet s;
        s.beta1 = 0.9;
        s.nu = 0.995;
        s.gamma = 0.9;
        s.alpha = 1.0;

        s.delta_kind = DeltaKind::constant;
        s.delta = 0.01;
        OptimizerState a = make_state(Algorithm::sadam, s, box);
        CHECK(lemma2_check(record_moment_trace(std::move(a), grads), 1.0 / 0.9).holds);

        s.delta_kind = DeltaKind::rational;
        OptimizerState b = make_state(Algorithm::sadamd, s, box);
        CHECK(lemma2_check(record_moment_trace(std::move(b), grads), 1.0 / 0.9).holds);

        s.delta_kind = DeltaKind::exp_decay;
        OptimizerState c = make_state(Algorithm::sadamd, s, box);
        CHECK(lemma2_check(record_moment_trace(std::move(c), grads), 1.0 / 0.9).holds);
    }
}

TEST_CASE("prefix bound series: cor2 flat and mukkamala growing on zero gradients") {
    BoundInputs base;
    base.d = 1;
    base.alpha = 2.0;
    base.lambda = 1.0;
    base.gamma = 0.9;
    base.delta = 0.01;
    base.d_inf = 2.0;
    base.g_inf = 1.0;
    const std::vector<Vec> zero_g(50, Vec{0.0});
    const auto cor2 = bound_series(zero_g, base, CorollaryId::cor2);
    for (double b : cor2) {
        CHECK(b == doctest::Approx(cor2.front()).epsilon(1e-15));
    }
    const std::vector<Vec> zero_v(50, Vec{0.0});
    const auto mk = mukkamala_series(zero_v, base);
    for (std::size_t t = 1; t < mk.size(); ++t) {
        CHECK(mk[t] > mk[t - 1]);
    }
}

TEST_CASE("empty histories are rejected") {
    CHECK_THROWS_AS(check_condition3({}, 1.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(check_condition4({}, ScheduleSet{}, 1.0), Error);
    ScheduleSet s;
    OptimizerState st = make_state(Algorithm::sadam, s, BoxDomain::uniform(1, -1, 1));
    CHECK_THROWS_AS(record_moment_trace(std::move(st), {}), Error);
}
