#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "muntzlab/errors.hpp"
#include "muntzlab/exponents.hpp"
#include "muntzlab/measures.hpp"
#include "muntzlab/operators.hpp"
#include "muntzlab/typeconst.hpp"
#include "muntzlab/verify.hpp"

using namespace muntzlab;

namespace {

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

const Table* find_table(const ExperimentReport& rep, const char* name) {
    for (const Table& t : rep.tables)
        if (t.name == name) return &t;
    return nullptr;
}

}  // namespace

TEST_CASE("tolerance defaults stay pinned") {
    Tolerances tol;
    CHECK(tol.slope == 0.05);
    CHECK(tol.trend_factor == 1.5);
    CHECK(tol.slack_drift == 0.20);
    CHECK(tol.r_squared_min == 0.99);
    CHECK(std::strcmp(verdict_name(Verdict::Pass), verdict_name(Verdict::Fail)) != 0);
}

TEST_CASE("interpolated bound holds for the identity on a matched measure") {
    BlockPartition part = singleton_partition(12);
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    OperatorFn id = as_operator(identity_kernel(part.sequence()));

    ExperimentReport rep = run_theorem_A_check(id, cfg, 24);
    CHECK(rep.experiment == "thmA");
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.wall_seconds > 0.0);

    const CheckLine* slack = find_check(rep, "slack_stable");
    REQUIRE(slack != nullptr);
    CHECK(slack->verdict == Verdict::Pass);
    CHECK(find_check(rep, "weak_p_bounded") != nullptr);
    CHECK(find_check(rep, "weak_q_bounded") != nullptr);
}

TEST_CASE("summability bound holds for the summable-profile kernel") {
    BlockPartition part = singleton_partition(16);
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 0.5, Measure::jacobi(0.5));
    KernelOperator T = make_example_supercritical(part, 1.5, 0.5, 0.5);

    ExperimentReport rep = run_theorem_B_check(as_operator(T), cfg, 24);
    CHECK(rep.experiment == "thmB");
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(find_check(rep, "eps_p_summable") != nullptr);
    CHECK(find_check(rep, "eps_q_summable") != nullptr);
    CHECK(find_check(rep, "slack_stable") != nullptr);
}

TEST_CASE("subcritical witness growth matches the predicted slopes") {
    GrowthParams params;  // r = 2, beta = 1: witness norms grow like N^(1/2)
    ExperimentReport rep = run_counterexample_growth(GrowthKind::Subcritical, params,
                                                     {8, 16, 32, 64});
    CHECK(rep.experiment == "growth-subcritical");
    CHECK(rep.verdict == Verdict::Pass);

    const CheckLine* wit = find_check(rep, "witness_slope");
    REQUIRE(wit != nullptr);
    CHECK(wit->observed == doctest::Approx(0.5).epsilon(0.1));
    CHECK(find_check(rep, "ratio_slope") != nullptr);
    CHECK(find_check(rep, "restricted_bounded") != nullptr);

    CHECK_THROWS_AS(run_counterexample_growth(GrowthKind::Subcritical, params, {8, 16, 32}),
                    Error);
    CHECK_THROWS_AS(run_counterexample_growth(GrowthKind::Subcritical, params, {8, 16, 32, 65}),
                    Error);
    CHECK_THROWS_AS(run_counterexample_growth(GrowthKind::Subcritical, params, {0, 0, 0, 0}),
                    Error);
}

TEST_CASE("profile diagonal reproduces its target profile exactly") {
    const std::size_t count = 16;
    BlockPartition part = singleton_partition(count);
    const double r = 2.0, alpha = 1.0, beta = 0.5, gamma = 1.0;
    std::vector<double> eps(count);
    for (std::size_t k = 0; k < count; ++k) eps[k] = std::exp2(-static_cast<double>(k));

    KernelOperator T = make_profile_diagonal(part, eps, r, alpha, beta, gamma);
    InterpolationConfig cfg(part, 1.5, 4.0, r, alpha, beta, Measure::jacobi(gamma));

    ExperimentReport rep = run_necessity_check(T, cfg, count);
    CHECK(rep.experiment == "necessity");
    CHECK(rep.verdict == Verdict::Pass);

    const Table* prof = find_table(rep, "profile");
    REQUIRE(prof != nullptr);
    REQUIRE(prof->rows.size() == count);
    // column 2 is the recovered eps_k = (constant)^(r/(1-beta))
    for (std::size_t k = 0; k < count; ++k) {
        CHECK(prof->rows[k][2] == doctest::Approx(eps[k]).epsilon(1e-8));
    }
}

TEST_CASE("necessity gate rejects a constant-rate profile") {
    const std::size_t count = 16;
    BlockPartition part = singleton_partition(count);
    const double r = 2.0, alpha = 1.0, beta = 0.5, gamma = 1.0;
    std::vector<double> eps(count);
    for (std::size_t k = 0; k < count; ++k) eps[k] = 1.0 / static_cast<double>(k + 1);

    KernelOperator T = make_profile_diagonal(part, eps, r, alpha, beta, gamma);
    InterpolationConfig cfg(part, 1.5, 4.0, r, alpha, beta, Measure::jacobi(gamma));
    ExperimentReport rep = run_necessity_check(T, cfg, count);
    CHECK(rep.verdict == Verdict::Fail);
}

TEST_CASE("necessity check guards its preconditions") {
    BlockPartition part = singleton_partition(16);
    const ExponentSequence& seq = part.sequence();
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 0.5, Measure::jacobi(1.0));

    std::vector<double> diag(16, 1.0);
    diag[3] = -1.0;
    KernelOperator signed_T = diagonal_kernel(seq, diag);
    try {
        (void)run_necessity_check(signed_T, cfg, 16);
        FAIL("expected the positivity precondition to fire");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }

    KernelOperator id = identity_kernel(seq);
    InterpolationConfig bounded(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    CHECK_THROWS_AS(run_necessity_check(id, bounded, 16), Error);
    CHECK_THROWS_AS(run_necessity_check(id, cfg, 4), Error);

    std::vector<double> eps(16, 1.0);
    CHECK_THROWS_AS(make_profile_diagonal(part, {1.0, 0.5}, 2.0, 1.0, 0.5, 1.0), Error);
    CHECK_THROWS_AS(make_profile_diagonal(part, eps, 2.0, 1.0, 1.0, 1.0), Error);
    BlockPartition paired(ExponentSequence::geometric(2.0, 2.0, 4), {2, 2}, 1.5);
    CHECK_THROWS_AS(make_profile_diagonal(paired, {1.0, 1.0, 1.0, 1.0}, 2.0, 1.0, 0.5, 1.0),
                    Error);
}

TEST_CASE("embedding run verifies the matched Jacobi measure") {
    ExponentSequence seq = ExponentSequence::geometric(2.0, 2.0, 12);
    BlockPartition part(seq, std::vector<std::size_t>(12, 1), 1.5, 2.5);

    ExperimentReport rep =
        run_embedding_corollaries(Measure::jacobi(1.0), part, 1.0, 1.0, 1.0, {2.0, 4.0});
    CHECK(rep.experiment == "embed");
    CHECK(rep.verdict == Verdict::Pass);

    const CheckLine* size_check = find_check(rep, "block_size_bound");
    REQUIRE(size_check != nullptr);
    CHECK(size_check->verdict == Verdict::Pass);
    CHECK(find_check(rep, "equivalence_given") != nullptr);
    CHECK(find_check(rep, "equivalence_atom_control") != nullptr);

    // Without the subgeometric flag the equivalence half cannot run.
    BlockPartition unflagged(seq, std::vector<std::size_t>(12, 1), 1.5);
    try {
        (void)run_embedding_corollaries(Measure::jacobi(1.0), unflagged, 1.0, 1.0, 1.0, {2.0});
        FAIL("expected the subgeometric precondition to fire");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
    CHECK_THROWS_AS(run_embedding_corollaries(Measure::jacobi(1.0), part, 1.0, 1.0, 1.0, {}),
                    Error);
    CHECK_THROWS_AS(run_embedding_corollaries(Measure::jacobi(1.0), part, 1.0, 1.0, 1.0, {0.5}),
                    Error);
}

TEST_CASE("embedding run notes the skipped equivalence when beta < 1") {
    ExponentSequence seq = ExponentSequence::geometric(2.0, 2.0, 12);
    BlockPartition part(seq, std::vector<std::size_t>(12, 1), 1.5, 2.5);

    // gamma = alpha*beta + 1/2 gives the near-1 mass surplus the summability
    // hypothesis needs.
    ExperimentReport rep =
        run_embedding_corollaries(Measure::jacobi(1.0), part, 1.0, 0.5, 1.0, {2.0});
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(!rep.note.empty());
    CHECK(find_check(rep, "equivalence_given") == nullptr);
}

TEST_CASE("endpoint inequality holds for the identity") {
    BlockPartition part = singleton_partition(10);
    InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    OperatorFn id = as_operator(identity_kernel(part.sequence()));

    ExperimentReport rep = run_remark_strong_limit(id, cfg, 40);
    CHECK(rep.experiment == "remark");
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(find_check(rep, "endpoint_bounded") != nullptr);
    CHECK(find_check(rep, "bound_stable") != nullptr);
}
