#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace muntzlab {

// Relative tolerance for every ratio/equality comparison on exponent values.
// The lacunarity conditions are open inequalities; the slack avoids spurious
// failures from the floating representation of geometric sequences.
inline constexpr double kRatioTol = 1e-12;

// Strictly increasing, positive Muntz exponent sequence (a finite stored
// prefix stands in for the infinite sequence everywhere).
class ExponentSequence {
  public:
    explicit ExponentSequence(std::vector<double> values);

    static ExponentSequence geometric(double lambda0, double ratio, std::size_t count);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    double reciprocal_sum() const;

    // Index of an exponent value, matched with relative tolerance kRatioTol.
    // Throws ErrorKind::UnknownExponent when absent.
    std::size_t index_of(double lambda) const;
    std::optional<std::size_t> try_index_of(double lambda) const;

  private:
    std::vector<double> values_;
};

// Inclusive index range [lo, hi] of one block E_k.
struct IndexRange {
    std::size_t lo;
    std::size_t hi;
};

// Quasi-lacunary block structure: contiguous blocks of size <= N whose
// endpoint ratios exceed q from onset_index on.
class BlockPartition {
  public:
    BlockPartition(ExponentSequence seq, std::vector<std::size_t> block_sizes, double q,
                   std::optional<double> q_prime = std::nullopt);

    const ExponentSequence& sequence() const { return seq_; }
    const std::vector<IndexRange>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    std::size_t max_block_size() const { return max_block_size_; }  // N
    double q() const { return q_; }
    std::optional<double> q_prime() const { return q_prime_; }
    std::size_t onset_index() const { return onset_index_; }
    bool is_lacunary() const { return max_block_size_ == 1; }

    // lambda_{n_{k+1}}: the largest exponent of block k.
    double block_endpoint(std::size_t k) const;
    // Smallest exponent of block k.
    double block_start(std::size_t k) const;
    std::size_t block_size(std::size_t k) const;

  private:
    ExponentSequence seq_;
    std::vector<IndexRange> blocks_;
    std::size_t max_block_size_;
    double q_;
    std::optional<double> q_prime_;
    std::size_t onset_index_;
};

// Validates the block structure and locates the onset greedily (smallest
// index after which every endpoint ratio exceeds q). Throws
// ErrorKind::NotLacunary when even the final ratio fails.
BlockPartition validate_quasi_lacunary(ExponentSequence seq, std::vector<std::size_t> block_sizes,
                                       double q, std::optional<double> q_prime = std::nullopt);

struct SubgeometricCheck {
    bool ok = true;
    // Block index of the first endpoint ratio above q_prime (when !ok).
    std::optional<std::size_t> first_violation;
};
SubgeometricCheck check_subgeometric(const BlockPartition& part, double q_prime);

enum class TailDirection { Below, Above };

struct LacunarySumResult {
    double value = 0.0;
    bool empty_tail = false;
};

// direction=Below: (sum_{j<=i} lambda_j^kappa) / lambda_i^kappa;
// direction=Above: (sum_{j>i} lambda_j^-kappa) / lambda_i^-kappa.
LacunarySumResult lacunary_sum_ratio(const ExponentSequence& seq, double kappa, std::size_t i,
                                     TailDirection direction);

struct DeltaLemmaResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 1.0;
};

// Brute-force evaluation of both sides of the window-decomposition bound for
// Delta_i^+ (Above) and Delta_i^- (Below):
//   lhs = (sum_j lambda_j^{-+kappa} eps_j^u)^{n-1},  u = (1-tau)(1-beta)/(n-1),
//   rhs = (sum_k delta_k(i) lambda_{i+-kA}^{-+kappa})^{n-1},
// with delta_k(i) the u-th power of the eps-sum over the k-th window of
// length A. All sums run over the stored finite prefix.
DeltaLemmaResult delta_lemma_check(const ExponentSequence& lambda, const std::vector<double>& eps,
                                   std::size_t n, double kappa, double tau, double beta,
                                   std::size_t A, std::size_t i, TailDirection direction);

}  // namespace muntzlab
