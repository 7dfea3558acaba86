#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "muntzlab/typeconst.hpp"

namespace muntzlab {

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

// Declared tolerances for every experiment verdict, kept in one record so a
// run can override them wholesale.
struct Tolerances {
    double slope = 0.05;          // absolute slack on fitted exponents
    double trend_factor = 1.5;    // growth threshold over the trailing window
    double slack_drift = 0.20;    // allowed relative drift of K under doubling
    double r_squared_min = 0.99;  // fit quality floor for slope verdicts
};

struct NamedValue {
    std::string name;
    double value = 0.0;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct FitSummary {
    std::string name;
    double slope = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
};

// One verdict line: observed value tested against a reference (a target, a
// bound, or a tolerance, depending on the check).
struct CheckLine {
    std::string name;
    Verdict verdict = Verdict::Inconclusive;
    double observed = 0.0;
    double reference = 0.0;
};

struct ExperimentReport {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<NamedValue> params;
    std::vector<Table> tables;
    std::vector<FitSummary> fits;
    std::vector<CheckLine> checks;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;            // context for inconclusive or failed runs
    double wall_seconds = 0.0;   // excluded from reproducibility comparisons
};

// Interpolated strong-type bound for the bounded-moment regime: restricted
// weak profiles at p and q, a sampled lower bound L for the strong constant
// at r, and the slack K = L / (C_p^{1-theta} C_q^theta), which must hold
// still (within tolerance) when the witness family doubles.
ExperimentReport run_theorem_A_check(const OperatorFn& T, const InterpolationConfig& cfg,
                                     std::size_t family_size, const Tolerances& tol = {},
                                     const OptimizerOptions& opts = {});

// Summability-regime counterpart: the slack is measured against
// C_eps^{(1-beta)/r} C_p^{1-theta} C_q^theta with eps taken from the profile
// at p and C_q rescaled by eps_k^{-(1-beta)/q}.
ExperimentReport run_theorem_B_check(const OperatorFn& T, const InterpolationConfig& cfg,
                                     std::size_t family_size, const Tolerances& tol = {},
                                     const OptimizerOptions& opts = {});

enum class GrowthKind { Subcritical, Supercritical };

struct GrowthParams {
    double r = 2.0;
    double alpha = 1.0;
    double beta = 1.0;   // >= 1 subcritical, in (0,1) supercritical
    double gamma = 1.0;
    double eps = 0.2;
    double eta = 0.1;    // supercritical only
    double lambda0 = 2.0;
    double ratio = 2.0;  // exponents lambda_k = lambda0 * ratio^(k-1)
};

// Witness growth for the unbounded kernel constructions: exact weighted
// coefficient sums on a lacunary sequence (no quadrature), log-log slope
// fits for ||f_N||, ||T f_N||, and their ratio, plus the per-block
// restricted constants that stay bounded while the ratio diverges.
ExperimentReport run_counterexample_growth(GrowthKind which, const GrowthParams& params,
                                           const std::vector<std::size_t>& n_list,
                                           const Tolerances& tol = {});

// Summability necessity for positive operators: the profile
// eps_k = (||T t^{lambda_k}|| / ||t^{lambda_k}||)^{r/(1-beta)} of a positive
// strong-type operator must pass the octave decay gate.
ExperimentReport run_necessity_check(const KernelOperator& T, const InterpolationConfig& cfg,
                                     std::size_t k_max, const Tolerances& tol = {},
                                     const OptimizerOptions& opts = {});

// Diagonal kernel engineered so the necessity profile equals eps exactly:
// entry k solves c_k ||t^{lambda_k}||_{L^r(nu_{gamma-1})} =
// eps_k^{(1-beta)/r} ||t^{lambda_k}||_{L^{r/beta}(nu_{alpha-1})}.
// Requires a lacunary partition.
KernelOperator make_profile_diagonal(const BlockPartition& part, const std::vector<double>& eps,
                                     double r, double alpha, double beta, double gamma);

// Identity-embedding health check: measure condition (bounded-moment or
// summability form by beta regime), per-block identity constants for each r,
// a sampled global lower bound, and the mass-condition equivalence on the
// given measure plus Jacobi and atom controls. The equivalence needs the
// partition's subgeometric flag.
ExperimentReport run_embedding_corollaries(const Measure& mu, const BlockPartition& part,
                                           double alpha, double beta, double p,
                                           const std::vector<double>& r_list,
                                           const Tolerances& tol = {},
                                           const OptimizerOptions& opts = {});

// Endpoint inequality ||Tf||_{L^beta(mu)} <= K ||f||_{L^1(nu_{alpha-1})} on
// sampled multi-block polynomials, with K stable under sample doubling.
ExperimentReport run_remark_strong_limit(const OperatorFn& T, const InterpolationConfig& cfg,
                                         std::size_t sample_count, const Tolerances& tol = {},
                                         const OptimizerOptions& opts = {});

}  // namespace muntzlab
