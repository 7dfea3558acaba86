#include <cmath>
#include <vector>

#include <doctest.h>

#include "muntzlab/errors.hpp"
#include "muntzlab/exponents.hpp"
#include "muntzlab/rng.hpp"

using namespace muntzlab;

namespace {

BlockPartition singleton_partition(const ExponentSequence& seq, double q) {
    return BlockPartition(seq, std::vector<std::size_t>(seq.size(), 1), q);
}

}  // namespace

TEST_CASE("geometric factory produces the stated exponents") {
    ExponentSequence seq = ExponentSequence::geometric(2.0, 2.0, 8);
    REQUIRE(seq.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) CHECK(seq[k] == doctest::Approx(std::ldexp(2.0, k)).epsilon(1e-15));
    CHECK(seq.index_of(16.0) == 3);
    CHECK(!seq.try_index_of(24.0).has_value());
    CHECK_THROWS_AS(seq.index_of(24.0), Error);
}

TEST_CASE("sequence constructor rejects bad input") {
    CHECK_THROWS_AS(ExponentSequence(std::vector<double>{}), Error);
    CHECK_THROWS_AS(ExponentSequence({-1.0, 2.0}), Error);
    CHECK_THROWS_AS(ExponentSequence({2.0, 2.0}), Error);
    CHECK_THROWS_AS(ExponentSequence({4.0, 2.0}), Error);
    CHECK_THROWS_AS(ExponentSequence::geometric(1.0, 0.9, 4), Error);
}

TEST_CASE("reciprocal sum of a dyadic sequence is the finite geometric value") {
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, 12);
    CHECK(seq.reciprocal_sum() == doctest::Approx(2.0 - std::ldexp(1.0, -11)).epsilon(1e-15));
}

TEST_CASE("block partition reproduces its block layout") {
    ExponentSequence seq({1.0, 2.0, 8.0, 9.0, 10.0, 40.0});
    BlockPartition part(seq, {2, 3, 1}, 3.0);
    REQUIRE(part.block_count() == 3);
    CHECK(part.max_block_size() == 3);
    CHECK(part.block_start(0) == 1.0);
    CHECK(part.block_endpoint(0) == 2.0);
    CHECK(part.block_start(1) == 8.0);
    CHECK(part.block_endpoint(1) == 10.0);
    CHECK(part.block_size(1) == 3);
    CHECK(part.block_endpoint(2) == 40.0);
    CHECK(!part.is_lacunary());
    CHECK(singleton_partition(ExponentSequence::geometric(1.0, 2.0, 5), 1.5).is_lacunary());
}

TEST_CASE("partition validation catches coverage and ratio failures") {
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, 6);
    CHECK_THROWS_AS(BlockPartition(seq, {1, 1, 1}, 1.5), Error);   // sizes do not cover
    CHECK_THROWS_AS(BlockPartition(seq, {1, 0, 5}, 1.5), Error);   // zero block
    CHECK_NOTHROW(BlockPartition(seq, {6}, 1.5));                  // one block, no ratios to test
    // Ratio condition fails at the end: 2,3,4 with q=2 has last ratio 4/3.
    CHECK_THROWS_AS(singleton_partition(ExponentSequence({2.0, 3.0, 4.0}), 2.0), Error);
    // validate_quasi_lacunary is the same check by another entry point.
    CHECK_THROWS_AS(validate_quasi_lacunary(ExponentSequence({2.0, 3.0, 4.0}),
                                            {1, 1, 1}, 2.0, std::nullopt),
                    Error);
}

TEST_CASE("onset index skips early slow ratios") {
    // Ratios 1.2 then 2.0 repeated: the q=1.9 condition holds from block 1 on.
    ExponentSequence seq({1.0, 1.2, 2.4, 4.8, 9.6, 19.2});
    BlockPartition part = singleton_partition(seq, 1.9);
    CHECK(part.onset_index() == 1);
    // A clean geometric sequence has onset 0.
    CHECK(singleton_partition(ExponentSequence::geometric(2.0, 2.0, 6), 1.5).onset_index() == 0);
}

TEST_CASE("subgeometric check accepts ratio-2 sequences below the cap") {
    BlockPartition part = singleton_partition(ExponentSequence::geometric(2.0, 2.0, 10), 1.5);
    CHECK(check_subgeometric(part, 2.5).ok);
    SubgeometricCheck bad = check_subgeometric(part, 1.7);
    CHECK(!bad.ok);
    REQUIRE(bad.first_violation.has_value());
    CHECK(*bad.first_violation == part.onset_index());
}

TEST_CASE("subgeometric check rejects doubly exponential growth") {
    ExponentSequence seq({2.0, 4.0, 16.0, 256.0, 65536.0});
    BlockPartition part = singleton_partition(seq, 1.9);
    CHECK(!check_subgeometric(part, 10.0).ok);
    // Declaring the violated cap at construction is a hard error.
    CHECK_THROWS_AS(BlockPartition(seq, {1, 1, 1, 1, 1}, 1.9, 10.0), Error);
    // A generous cap is accepted and stored.
    BlockPartition ok(ExponentSequence::geometric(2.0, 2.0, 6), {1, 1, 1, 1, 1, 1}, 1.5, 2.5);
    REQUIRE(ok.q_prime().has_value());
    CHECK(*ok.q_prime() == 2.5);
}

TEST_CASE("lacunary sum ratios reproduce the dyadic closed forms") {
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, 12);
    LacunarySumResult below = lacunary_sum_ratio(seq, 1.0, 10, TailDirection::Below);
    CHECK(below.value == doctest::Approx(2047.0 / 1024.0).epsilon(1e-13));
    CHECK(!below.empty_tail);

    LacunarySumResult above = lacunary_sum_ratio(seq, 1.0, 0, TailDirection::Above);
    CHECK(above.value == doctest::Approx(1.0 - std::ldexp(1.0, -11)).epsilon(1e-13));

    ExponentSequence one({5.0});
    CHECK(lacunary_sum_ratio(one, 1.0, 0, TailDirection::Below).value == doctest::Approx(1.0));
    LacunarySumResult empty = lacunary_sum_ratio(one, 1.0, 0, TailDirection::Above);
    CHECK(empty.empty_tail);
    CHECK(empty.value == 0.0);
}

TEST_CASE("lacunary sum ratios stay inside the geometric envelope") {
    ExponentSequence seq = ExponentSequence::geometric(3.0, 2.0, 16);
    const double q = 2.0;
    for (double kappa : {0.5, 1.0, 2.0}) {
        const double qk = std::pow(q, kappa);
        for (std::size_t i = 0; i < seq.size(); ++i) {
            LacunarySumResult below = lacunary_sum_ratio(seq, kappa, i, TailDirection::Below);
            CHECK(below.value >= 1.0 - 1e-12);
            CHECK(below.value <= qk / (qk - 1.0) + 1e-12);
            LacunarySumResult above = lacunary_sum_ratio(seq, kappa, i, TailDirection::Above);
            CHECK(above.value >= 0.0);
            CHECK(above.value <= 1.0 / (qk - 1.0) + 1e-12);
        }
    }
}

TEST_CASE("delta lemma single-width windows reproduce the direct tail sum") {
    // lambda_k = 2^k, eps_k = 2^-k, n=2, kappa=1, tau=1/2, beta=1/2, A=1, i=3:
    // lhs = sum_{j>3} 2^-j * (2^-j)^{1/4}; with A=1 the right side picks up the
    // extra anchor term at j=i, so the ratio sits just below 1.
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, 16);
    std::vector<double> eps(16);
    for (std::size_t k = 0; k < 16; ++k) eps[k] = std::ldexp(1.0, -static_cast<int>(k));

    DeltaLemmaResult res = delta_lemma_check(seq, eps, 2, 1.0, 0.5, 0.5, 1, 3, TailDirection::Above);
    double direct = 0.0;
    for (std::size_t j = 4; j < 16; ++j) direct += std::pow(2.0, -1.25 * static_cast<double>(j));
    CHECK(res.lhs == doctest::Approx(direct).epsilon(1e-12));
    CHECK(res.ratio <= 1.0 + 1e-12);
    CHECK(res.ratio > 0.0);
}

TEST_CASE("delta lemma constant-eps windows carry the A^u weight") {
    // With eps identically 1 every window sum is A, so each delta equals
    // A^{(1-tau)(1-beta)/(n-1)} and the right side is that weight times the
    // anchor sum; check against a direct evaluation.
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, 20);
    std::vector<double> eps(20, 1.0);
    const std::size_t n = 2, A = 3, i = 2;
    const double kappa = 1.0, tau = 0.25, beta = 0.5;
    const double u = (1.0 - tau) * (1.0 - beta) / static_cast<double>(n - 1);

    DeltaLemmaResult res = delta_lemma_check(seq, eps, n, kappa, tau, beta, A, i, TailDirection::Above);
    double rhs = 0.0;
    for (std::size_t k = 0; i + k * A < seq.size(); ++k) {
        const std::size_t anchor = i + k * A;
        const std::size_t win = std::min(seq.size() - anchor, A);  // clamped at the edge
        rhs += std::pow(static_cast<double>(win), u) * std::pow(seq[anchor], -kappa);
    }
    rhs = std::pow(rhs, static_cast<double>(n - 1));
    CHECK(res.rhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(std::isfinite(res.ratio));
    CHECK(res.ratio > 0.0);
}

TEST_CASE("delta lemma empty tail returns the neutral record") {
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, 8);
    std::vector<double> eps(8, 0.5);
    DeltaLemmaResult above = delta_lemma_check(seq, eps, 2, 1.0, 0.5, 0.5, 1, 7, TailDirection::Above);
    CHECK(above.lhs == 0.0);
    CHECK(above.rhs == 0.0);
    CHECK(above.ratio == 1.0);
    DeltaLemmaResult below = delta_lemma_check(seq, eps, 2, 1.0, 0.5, 0.5, 1, 0, TailDirection::Below);
    CHECK(below.lhs == 0.0);
    CHECK(below.ratio == 1.0);
}

TEST_CASE("delta lemma rejects out-of-range parameters") {
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, 8);
    std::vector<double> eps(8, 0.5);
    CHECK_THROWS_AS(delta_lemma_check(seq, eps, 1, 1.0, 0.5, 0.5, 1, 3, TailDirection::Above), Error);
    CHECK_THROWS_AS(delta_lemma_check(seq, eps, 2, 1.0, 1.5, 0.5, 1, 3, TailDirection::Above), Error);
    CHECK_THROWS_AS(delta_lemma_check(seq, eps, 2, 1.0, 0.5, 1.0, 1, 3, TailDirection::Above), Error);
    CHECK_THROWS_AS(delta_lemma_check(seq, eps, 2, 0.0, 0.5, 0.5, 1, 3, TailDirection::Above), Error);
    CHECK_THROWS_AS(delta_lemma_check(seq, eps, 2, 1.0, 0.5, 0.5, 1, 8, TailDirection::Above), Error);
    eps[3] = 0.0;
    CHECK_THROWS_AS(delta_lemma_check(seq, eps, 2, 1.0, 0.5, 0.5, 1, 3, TailDirection::Above), Error);
}

TEST_CASE("delta lemma ratio is stable across the anchor index") {
    // Geometric lambda and geometric eps are self-similar, so the lhs/rhs
    // ratio should barely move with i away from the truncated right edge.
    Rng rng(0xd31a5eedULL);
    const std::size_t K = 24;
    ExponentSequence seq = ExponentSequence::geometric(1.0, 2.0, K);
    int draws = 0;
    while (draws < 50) {
        const std::size_t n = 2 + rng.next_u64() % 3;
        const std::size_t A = 1 + rng.next_u64() % 3;
        const double kappa = rng.uniform(0.5, 2.0);
        const double tau = rng.uniform(0.2, 0.8);
        const double beta = rng.uniform(0.2, 0.8);
        const double rho = rng.uniform(0.3, 0.9);
        std::vector<double> eps(K);
        for (std::size_t k = 0; k < K; ++k) eps[k] = std::pow(rho, static_cast<double>(k));

        const std::size_t i_hi = K - n * A;
        double lo = 1e300, hi = 0.0;
        for (std::size_t i = 0; i <= i_hi; ++i) {
            DeltaLemmaResult res =
                delta_lemma_check(seq, eps, n, kappa, tau, beta, A, i, TailDirection::Above);
            REQUIRE(std::isfinite(res.ratio));
            REQUIRE(res.ratio > 0.0);
            lo = std::min(lo, res.ratio);
            hi = std::max(hi, res.ratio);
        }
        CHECK(hi / lo < 4.0);
        ++draws;
    }
}
