// Acceptance gate: ten end-to-end criteria, each printing exactly one
// PASS/FAIL line with its observed values. Every tolerance is a literal in
// the criterion that uses it.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "muntzlab/errors.hpp"
#include "muntzlab/exponents.hpp"
#include "muntzlab/measures.hpp"
#include "muntzlab/muntz_poly.hpp"
#include "muntzlab/operators.hpp"
#include "muntzlab/quadrature.hpp"
#include "muntzlab/rng.hpp"
#include "muntzlab/special_functions.hpp"
#include "muntzlab/typeconst.hpp"
#include "muntzlab/verify.hpp"

using namespace muntzlab;

namespace {

void report(const char* tag, bool pass, const std::string& detail) {
    std::printf("criterion %s: %s (%s)\n", tag, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    const std::string message = "criterion " + std::string(tag) + ": " + detail;
    CHECK_MESSAGE(pass, message);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

BlockPartition singleton_partition(std::size_t count, double lambda0 = 2.0, double ratio = 2.0) {
    ExponentSequence seq = ExponentSequence::geometric(lambda0, ratio, count);
    std::vector<std::size_t> sizes(count, 1);
    return BlockPartition(std::move(seq), std::move(sizes), (1.0 + ratio) / 2.0);
}

const CheckLine* find_check(const ExperimentReport& rep, const char* name) {
    for (const CheckLine& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("criterion 01: moment quadrature matches the log-gamma closed form") {
    const double s_values[] = {0.0, 1.0, 10.0, 1e3, 1e6};
    const double gammas[] = {0.5, 1.0, 2.0};
    double worst = 0.0;
    for (double g : gammas) {
        const Measure mu = Measure::jacobi(g);
        for (double s : s_values) {
            const double via_quadrature = moment_quadrature(mu, s);
            const double closed = beta_function(s + 1.0, g);
            worst = std::max(worst, std::fabs(via_quadrature - closed) / closed);
        }
    }
    report("01", worst <= 1e-9, "15 moments, worst relative gap " + fmt(worst) + " <= 1e-9");
}

TEST_CASE("criterion 02: block decoupling interval is stable under sample doubling") {
    BlockPartition part = singleton_partition(16, 1.0, 2.0);  // lambda_k = 2^k
    double worst_move = 0.0;
    for (double p : {1.0, 2.0}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const DecouplingInterval base = decoupling_ratio(part, p, alpha, 500, 0x5eed, 12);
            const DecouplingInterval twice = decoupling_ratio(part, p, alpha, 1000, 0x5eed, 12);
            worst_move = std::max(worst_move,
                                  std::fabs(twice.c_low - base.c_low) / base.c_low);
            worst_move = std::max(worst_move,
                                  std::fabs(twice.c_high - base.c_high) / base.c_high);
        }
    }
    report("02", worst_move < 0.05,
           "6 parameter pairs, 500 vs 1000 samples, worst endpoint move " + fmt(worst_move) +
               " < 0.05");
}

TEST_CASE("criterion 03: restricted strong constants interpolate the weak ones") {
    BlockPartition part = singleton_partition(21);
    const ExponentSequence& seq = part.sequence();
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    const double theta = interpolation_theta(1.5, 4.0, 2.0);  // 0.4

    std::vector<double> decay(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) decay[k] = std::exp2(-static_cast<double>(k));
    struct Named {
        const char* name;
        OperatorFn op;
    };
    const DilationExample dil = make_dilation_example();
    const Named suite[] = {
        {"identity", as_operator(identity_kernel(seq))},
        {"dilation", as_operator(dil.op)},
        {"subcritical", as_operator(make_counterexample_subcritical(part, 2.0, 1.0, 1.0, 1.0, 0.2))},
        {"summable", as_operator(make_example_supercritical(part, 1.5, 0.5, 1.0))},
        {"diagonal", as_operator(diagonal_kernel(seq, decay))},
    };

    bool all_ok = true;
    double worst_factor = 0.0;
    std::string bad;
    for (const Named& entry : suite) {
        // Row 0 of the triangular kernels is empty, so the suite sweeps
        // blocks 1..20.
        std::vector<double> slack;
        bool finite = true;
        for (std::size_t k = 1; k <= 20; ++k) {
            const double strong = restricted_strong_constant(entry.op, k, 2.0, cfg);
            const double wp = restricted_weak_constant(entry.op, k, 1.5, cfg);
            const double wq = restricted_weak_constant(entry.op, k, 4.0, cfg);
            const double interp = std::pow(wp, 1.0 - theta) * std::pow(wq, theta);
            const double K = strong / interp;
            finite = finite && std::isfinite(K) && K > 0.0;
            slack.push_back(K);
        }
        double last5 = 0.0, prev5 = 0.0;
        for (std::size_t i = 15; i < 20; ++i) last5 = std::max(last5, slack[i]);
        for (std::size_t i = 10; i < 15; ++i) prev5 = std::max(prev5, slack[i]);
        const double factor = last5 / prev5;
        worst_factor = std::max(worst_factor, factor);
        if (!finite || !(factor < 1.5)) {
            all_ok = false;
            bad = bad.empty() ? entry.name : bad + "," + entry.name;
        }
    }
    report("03", all_ok,
           "5 operators, blocks 1..20, worst trailing K factor " + fmt(worst_factor) +
               " < 1.5" + (bad.empty() ? "" : ", offenders: " + bad));
}

TEST_CASE("criterion 04: interpolated strong bound holds for the identity") {
    BlockPartition part = singleton_partition(20);
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    OperatorFn id = as_operator(identity_kernel(part.sequence()));

    ExperimentReport rep = run_theorem_A_check(id, cfg, 200);
    const CheckLine* slack = find_check(rep, "slack_stable");
    const double drift = slack ? slack->observed : -1.0;
    report("04", rep.verdict == Verdict::Pass,
           "verdict " + std::string(verdict_name(rep.verdict)) + ", K drift under family doubling " +
               fmt(drift) + " <= 0.20");
}

TEST_CASE("criterion 05: subcritical witness grows while restricted constants stay bounded") {
    GrowthParams params;  // r=2, alpha=1, beta=1, gamma=1, eps=0.2
    ExperimentReport rep =
        run_counterexample_growth(GrowthKind::Subcritical, params, {8, 16, 32, 64, 128});

    const CheckLine* wit = find_check(rep, "witness_slope");
    const CheckLine* ratio = find_check(rep, "ratio_slope");
    const CheckLine* bounded = find_check(rep, "restricted_bounded");
    REQUIRE(wit != nullptr);
    REQUIRE(ratio != nullptr);
    REQUIRE(bounded != nullptr);

    const bool ok = std::fabs(wit->observed - 0.5) <= 0.05 && ratio->observed >= 0.35 &&
                    bounded->verdict == Verdict::Pass && rep.verdict == Verdict::Pass;
    report("05", ok,
           "witness slope " + fmt(wit->observed) + " in 0.5 +- 0.05, ratio slope " +
               fmt(ratio->observed) + " >= 0.35, restricted constants bounded");
}

TEST_CASE("criterion 06: supercritical witness beats its predicted divergence rate") {
    GrowthParams params;
    params.beta = 0.5;
    params.eps = 0.1;
    params.eta = 0.1;  // predicted ratio slope (beta - eps/r - (1-beta)*eta) - beta/r = 0.15
    ExperimentReport rep =
        run_counterexample_growth(GrowthKind::Supercritical, params, {8, 16, 32, 64, 128});

    const CheckLine* ratio = find_check(rep, "ratio_slope");
    REQUIRE(ratio != nullptr);
    // Divergence displays are lower bounds, so the gate is one-sided: the
    // fitted slope must reach the predicted 0.15 minus the 0.05 slack; faster
    // growth than predicted is a stronger witness, not a failure.
    const bool ok = rep.verdict == Verdict::Pass && ratio->observed >= 0.15 - 0.05;
    report("06", ok,
           "ratio slope " + fmt(ratio->observed) + " >= 0.10 one-sided, nominal prediction 0.15");
}

TEST_CASE("criterion 07: summability bound holds for the summable-profile kernel") {
    BlockPartition part = singleton_partition(20);
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 0.5, Measure::jacobi(0.5));
    KernelOperator T = make_example_supercritical(part, 1.5, 0.5, 1.0);  // eps_k = 1/(k ln^2 k)

    ExperimentReport rep = run_theorem_B_check(as_operator(T), cfg, 200);
    EpsilonProfile prof = epsilon_profile(as_operator(T), cfg, 1.5, {1, 19});
    const bool ok = rep.verdict == Verdict::Pass && prof.summable_trend;
    report("07", ok,
           "verdict " + std::string(verdict_name(rep.verdict)) +
               ", recovered profile summable trend " + (prof.summable_trend ? "yes" : "no"));
}

TEST_CASE("criterion 08: necessity gate separates 1/k decay from a summable profile") {
    BlockPartition part = singleton_partition(32);
    const double r = 2.0, alpha = 1.0, beta = 0.5, gamma = 1.0;
    InterpolationConfig cfg(part, 1.5, 4.0, r, alpha, beta, Measure::jacobi(gamma));

    std::vector<double> harmonic(32, 1.0);
    for (std::size_t k = 1; k < 32; ++k) harmonic[k] = 1.0 / static_cast<double>(k);
    KernelOperator too_slow = make_profile_diagonal(part, harmonic, r, alpha, beta, gamma);
    ExperimentReport slow_rep = run_necessity_check(too_slow, cfg, 32);

    KernelOperator summable = make_example_supercritical(part, 2.0, beta, gamma);
    ExperimentReport good_rep = run_necessity_check(summable, cfg, 32);

    const bool ok = slow_rep.verdict == Verdict::Fail && good_rep.verdict == Verdict::Pass;
    report("08", ok,
           "1/k profile verdict " + std::string(verdict_name(slow_rep.verdict)) +
               " (want fail), summable profile verdict " +
               std::string(verdict_name(good_rep.verdict)) + " (want pass)");
}

TEST_CASE("criterion 09: measure condition checkers sort the standard examples") {
    BlockPartition part = singleton_partition(16);
    const double alpha = 1.5, beta = 1.2;
    const double g = alpha * beta;  // 1.8

    const Measure matched = Measure::jacobi(g);
    const MomentReport b_matched = check_B_condition(matched, 1.0, part, alpha, beta);
    const MxReport mx_matched = check_Mx_gamma(matched, g);
    const double mx_err = std::fabs(mx_matched.constant - 1.0 / g);

    const Measure atom = Measure::atomic({{1.0, 1.0}});
    const MomentReport b_atom = check_B_condition(atom, 1.0, part, alpha, beta);
    const MomentReport a_atom = check_A_condition(atom, 2.0, part, 1.0, 0.5);
    const MxReport mx_atom = check_Mx_gamma(atom, g);

    // Surplus near-1 decay: gamma = alpha*beta + 1/2 in the summability form.
    const MomentReport a_surplus =
        check_A_condition(Measure::jacobi(1.0), 2.0, part, 1.0, 0.5);

    const bool ok = b_matched.verdict && mx_matched.verdict && mx_err <= 1e-6 &&
                    !b_atom.verdict && !a_atom.verdict && !mx_atom.verdict &&
                    a_surplus.verdict && a_surplus.verdict_tail;
    report("09", ok,
           "matched measure holds with near-1 mass constant off by " + fmt(mx_err) +
               " <= 1e-6, atom at 1 rejected everywhere, surplus-decay measure summable from its"
               " onset");
}

TEST_CASE("criterion 10: invariant families hold across random draws") {
    std::string detail;
    bool ok = true;

    // Norm homogeneity and the triangle inequality for p >= 1.
    {
        Rng rng(0xace0fba5eULL);
        const Measure mus[] = {Measure::jacobi(1.0), Measure::jacobi(0.5)};
        const double ps[] = {1.0, 1.5, 2.0, 4.0};
        double worst_homog = 0.0, worst_triangle = 0.0;
        for (int draw = 0; draw < 20; ++draw) {
            std::vector<MuntzPolynomial::Term> ft, gt;
            for (double lam : {1.0, 2.0, 4.0, 8.0}) {
                ft.push_back({lam, rng.normal()});
                gt.push_back({lam, rng.normal()});
            }
            const MuntzPolynomial f(ft), g(gt);
            const Measure& mu = mus[draw % 2];
            const double p = ps[draw % 4];
            const double fn = lp_norm(f, p, mu), gn = lp_norm(g, p, mu);
            const double sn = lp_norm(f.plus(g), p, mu);
            worst_triangle = std::max(worst_triangle, (sn - (fn + gn)) / (fn + gn));
            const double scaled = lp_norm(f.scaled(-2.5), p, mu);
            worst_homog = std::max(worst_homog, std::fabs(scaled - 2.5 * fn) / (2.5 * fn));
        }
        if (!(worst_homog <= 1e-10 && worst_triangle <= 1e-10)) ok = false;
        detail += "homogeneity gap " + fmt(worst_homog) + ", triangle excess " +
                  fmt(worst_triangle);
    }

    // Markov: weak constants never exceed strong ones.
    {
        BlockPartition part = singleton_partition(8);
        const ExponentSequence& seq = part.sequence();
        InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
        std::vector<double> decay(8);
        for (std::size_t k = 0; k < 8; ++k) decay[k] = std::exp2(-static_cast<double>(k));
        const OperatorFn ops[] = {as_operator(identity_kernel(seq)),
                                  as_operator(diagonal_kernel(seq, decay))};
        double worst = 0.0;
        for (const OperatorFn& T : ops) {
            for (double s : {1.5, 2.0, 4.0}) {
                for (std::size_t k = 0; k < 8; k += 2) {
                    const double strong = restricted_strong_constant(T, k, s, cfg);
                    const double weak = restricted_weak_constant(T, k, s, cfg);
                    worst = std::max(worst, weak / strong);
                }
            }
        }
        if (!(worst <= 1.0 + 1e-9)) ok = false;
        detail += ", worst weak/strong " + fmt(worst);
    }

    // Cavalieri: the layer-cake integral reproduces the p-th power norm.
    {
        const MuntzPolynomial f({{1.0, 1.0}, {2.0, -1.0}});
        const Measure mu = Measure::jacobi(1.5);
        const double p = 2.5;
        const double top = sup_norm(f);
        const double direct = std::pow(lp_norm(f, p, mu), p);
        double layered = 0.0;
        const std::size_t panels = 64;
        for (std::size_t i = 0; i < panels; ++i) {
            const double a = top * static_cast<double>(i) / panels;
            const double b = top * static_cast<double>(i + 1) / panels;
            layered += gauss_panel(
                [&](double y) { return std::pow(y, p - 1.0) * distribution(f, mu, y); }, a, b);
        }
        layered *= p;
        const double gap = std::fabs(layered - direct) / direct;
        if (!(gap <= 1e-3)) ok = false;
        detail += ", layer-cake gap " + fmt(gap);
    }

    // Gram oracle: the two-exponent strong constant agrees with the largest
    // generalized eigenvalue of the moment matrices.
    {
        ExponentSequence seq({2.0, 3.0});
        BlockPartition part(seq, {2}, 1.4);
        const double alpha = 1.5, gamma_mu = 2.0;
        InterpolationConfig cfg(part, 1.5, 4.0, 2.0, alpha, 1.0, Measure::jacobi(gamma_mu));
        auto m = [](double li, double lj, double g2) {
            return beta_function(li + lj + 1.0, g2);
        };
        const double a00 = m(2, 2, gamma_mu), a01 = m(2, 3, gamma_mu), a11 = m(3, 3, gamma_mu);
        const double b00 = m(2, 2, alpha), b01 = m(2, 3, alpha), b11 = m(3, 3, alpha);
        const double qa = b00 * b11 - b01 * b01;
        const double qb = -(a00 * b11 + a11 * b00 - 2.0 * a01 * b01);
        const double qc = a00 * a11 - a01 * a01;
        const double expect = std::sqrt((-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa));
        OptimizerOptions opts;
        opts.restarts = 6;
        opts.samples = 1500;
        const double got =
            restricted_strong_constant(as_operator(identity_kernel(seq)), 0, 2.0, cfg, opts);
        const double gap = std::fabs(got - expect) / expect;
        if (!(gap <= 1e-6)) ok = false;
        detail += ", Gram gap " + fmt(gap);
    }

    // Window-decomposition bound: ratios stay finite and bounded over random
    // parameter draws in both tail directions.
    {
        ExponentSequence seq = ExponentSequence::geometric(2.0, 2.0, 24);
        Rng rng(0xd31a5eedULL);
        double worst_ratio = 0.0;
        bool finite = true;
        for (int draw = 0; draw < 50; ++draw) {
            const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 3);
            const std::size_t A = 1 + static_cast<std::size_t>(rng.next_u64() % 3);
            const double kappa = 0.5 + 1.5 * rng.uniform();
            const double tau = 0.2 + 0.6 * rng.uniform();
            const double beta = 0.2 + 0.6 * rng.uniform();
            const double rho = 0.3 + 0.6 * rng.uniform();
            std::vector<double> eps(24);
            for (std::size_t k = 0; k < 24; ++k) eps[k] = std::pow(rho, static_cast<double>(k));
            const std::size_t span = n * A;
            const std::size_t room = 24 > 2 * span ? 24 - 2 * span : 1;
            const std::size_t i = span + static_cast<std::size_t>(rng.next_u64() % room);
            for (TailDirection dir : {TailDirection::Above, TailDirection::Below}) {
                const DeltaLemmaResult res =
                    delta_lemma_check(seq, eps, n, kappa, tau, beta, A, i, dir);
                finite = finite && std::isfinite(res.ratio) && res.ratio > 0.0;
                worst_ratio = std::max(worst_ratio, res.ratio);
            }
        }
        if (!finite || !(worst_ratio < 1e3)) ok = false;
        detail += ", window-bound worst ratio " + fmt(worst_ratio) + " over 50 draws";
    }

    report("10", ok, detail);
}
