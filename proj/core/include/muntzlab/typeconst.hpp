#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "muntzlab/exponents.hpp"
#include "muntzlab/measures.hpp"
#include "muntzlab/muntz_poly.hpp"
#include "muntzlab/operators.hpp"

namespace muntzlab {

// Solves 1/r = (1-theta)/p + theta/q for theta = q(r-p)/(r(q-p)), checking
// the identity to 1e-14 before returning.
double interpolation_theta(double p, double q, double r);

// The parameter bundle shared by the type-constant estimators: exponent
// triple p < r < q, the weight exponents alpha and beta, the target measure,
// and the block partition carrying the exponent sequence.
class InterpolationConfig {
  public:
    InterpolationConfig(BlockPartition part, double p, double q, double r, double alpha,
                        double beta, Measure mu);

    const BlockPartition& part() const { return part_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double r() const { return r_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const Measure& mu() const { return mu_; }
    double theta() const { return interpolation_theta(p_, q_, r_); }
    // The reference norm on the source side is L^{s/beta} of this measure.
    Measure source_measure() const { return Measure::jacobi(alpha_); }

  private:
    BlockPartition part_;
    double p_, q_, r_, alpha_, beta_;
    Measure mu_;
};

// Any sublinear operator enters the estimators through its action on
// polynomials.
using OperatorFn = std::function<MuntzPolynomial(const MuntzPolynomial&)>;
OperatorFn as_operator(const KernelOperator& T);
OperatorFn as_operator(const DilationOperator& T);

struct OptimizerOptions {
    std::size_t restarts = 16;          // multi-start count for dim >= 2
    std::size_t samples = 10000;        // random-direction cross-check draws
    std::size_t max_iterations = 200;   // ascent iterations per restart
    double fd_step = 1e-6;              // relative finite-difference step
    double improvement_tol = 1e-8;      // relative ascent stopping threshold
    double agreement_tol = 1e-6;        // optimizer vs sampling tolerance
    std::size_t level_octaves = 40;     // weak-type level grid depth
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

// sup over nonzero f in the span of block k of
// ||T f||_{L^r(mu)} / ||f||_{L^{r/beta}(nu_{alpha-1})}.
// Dimension-1 blocks reduce to one norm ratio; higher dimensions run
// multi-start ascent on the coefficient sphere, cross-checked by sampling.
double restricted_strong_constant(const OperatorFn& T, std::size_t k, double r,
                                  const InterpolationConfig& cfg,
                                  const OptimizerOptions& opts = {});

// Weak-type analogue: sup over f and level of
// level * mu(|Tf| > level)^{1/r} / ||f||_{L^{r/beta}(nu_{alpha-1})},
// levels on a dyadic grid below sup|Tf| with golden refinement at the peak.
double restricted_weak_constant(const OperatorFn& T, std::size_t k, double r,
                                const InterpolationConfig& cfg,
                                const OptimizerOptions& opts = {});

// max over the family of ||Tf||_{L^r(mu)} / ||f||_{L^{r/beta}(nu_{alpha-1})}:
// a certified lower bound for the global strong-type constant.
double strong_constant_lower_bound(const OperatorFn& T, double r, const InterpolationConfig& cfg,
                                   const std::vector<MuntzPolynomial>& family);

// Deterministic test family: coordinated witness sums
// f_N = sum_{k=1..N} lambda_k^{alpha*beta/r} t^{lambda_k} over dyadic N,
// followed by random_count seeded random polynomials. Families with larger
// random_count extend smaller ones, so doubling keeps a common prefix.
std::vector<MuntzPolynomial> make_default_family(const BlockPartition& part, double alpha,
                                                 double beta, double r, std::uint64_t seed,
                                                 std::size_t random_count = 200);

enum class ConstantKind { RestrictedStrong, RestrictedWeak, GlobalStrongLower };

struct TypeConstantReport {
    ConstantKind kind = ConstantKind::RestrictedStrong;
    double r = 0.0, alpha = 0.0, beta = 0.0;
    std::vector<std::size_t> k;
    std::vector<double> constant;
    double aggregate = 0.0;  // sup over k
    std::size_t restarts = 0;
    std::size_t samples = 0;
    double achieved_tolerance = 0.0;  // worst optimizer/sampling gap observed
    std::vector<double> eps;          // normalized profile, when requested
    double c_eps = 0.0;               // partial sum of eps
};

// Per-block profile of restricted constants over an index range of blocks.
TypeConstantReport restricted_profile(const OperatorFn& T, const InterpolationConfig& cfg,
                                      double s, ConstantKind kind, IndexRange range,
                                      const OptimizerOptions& opts = {});

struct DecouplingInterval {
    double c_low = 0.0;   // exp(mean - 2 sd) of the sampled log ratios
    double c_high = 0.0;  // exp(mean + 2 sd)
    std::size_t samples = 0;
};

// Distribution of R = ||sum f_k||_{L^p(nu_{alpha-1})} / (sum ||f_k||^p)^{1/p}
// over random tuples of block polynomials with standard normal coefficients.
// Each sample spans min(max_blocks, block_count) distinct blocks chosen at
// random. Returns the two-sigma coverage band of log R, a summary of the
// spread that stabilizes as samples grow (raw extremes do not).
DecouplingInterval decoupling_ratio(const BlockPartition& part, double p, double alpha,
                                    std::size_t samples, std::uint64_t seed = 0x5eedULL,
                                    std::size_t max_blocks = 12);

// Empirical sup over sampled f in block k of
// ||f||_{L^p(mu)} / (lambda^delta * ||f||_{L^q((1-x)^{alpha_w} dx)}) with
// delta = (1+alpha_w)/q - beta/p and lambda the block's smallest exponent.
// mu must satisfy the mass condition mu([1-e,1]) <= C e^beta.
double bernstein_constant(const BlockPartition& part, std::size_t k, double p, double q,
                          double alpha_w, double beta, const Measure& mu, std::size_t samples,
                          std::uint64_t seed = 0x5eedULL);

struct EpsilonProfile {
    std::vector<double> eps;        // (C_s(k)/C_s)^{s/(1-beta)}
    std::vector<double> constants;  // raw restricted constants C_s(k)
    double normalizer = 0.0;        // C_s = max over the range
    double partial_sum = 0.0;
    bool summable_trend = false;    // octave sums still decaying at the end
};

// Extracts the per-block smallness profile implied by restricted constants
// at exponent s, normalized so the largest block has eps = 1.
EpsilonProfile epsilon_profile(const OperatorFn& T, const InterpolationConfig& cfg, double s,
                               IndexRange k_range, const OptimizerOptions& opts = {});

// Octave-sum decay gate shared by the summability verdicts: the sum over the
// last index octave (second half of positions) must stay below 0.9 times the
// sum over the octave before it. Constant-rate tails like 1/k hold their
// octave sums steady and fail; summable profiles pass.
bool summable_trend_gate(const std::vector<double>& values);

}  // namespace muntzlab
