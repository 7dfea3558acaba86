#include "muntzlab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "muntzlab/errors.hpp"

namespace muntzlab {

ExponentSequence::ExponentSequence(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) raise(ErrorKind::Domain, "ExponentSequence: empty");
    if (!(values_.front() > 0.0) || !std::isfinite(values_.front()))
        raise(ErrorKind::Domain, "ExponentSequence: exponents must be positive and finite");
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || !(values_[i] > values_[i - 1] * (1.0 + kRatioTol)))
            raise(ErrorKind::Domain, "ExponentSequence: values must be strictly increasing");
    }
}

ExponentSequence ExponentSequence::geometric(double lambda0, double ratio, std::size_t count) {
    if (!(lambda0 > 0.0)) raise(ErrorKind::Domain, "geometric: lambda0 must be positive");
    if (!(ratio > 1.0)) raise(ErrorKind::Domain, "geometric: ratio must exceed 1");
    if (count == 0) raise(ErrorKind::Domain, "geometric: count must be positive");
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = lambda0 * std::pow(ratio, static_cast<double>(k));
    return ExponentSequence(std::move(v));
}

double ExponentSequence::reciprocal_sum() const {
    double s = 0.0;
    for (double v : values_) s += 1.0 / v;
    return s;
}

std::optional<std::size_t> ExponentSequence::try_index_of(double lambda) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), lambda * (1.0 - kRatioTol));
    if (it != values_.end() && *it <= lambda * (1.0 + kRatioTol))
        return static_cast<std::size_t>(it - values_.begin());
    return std::nullopt;
}

std::size_t ExponentSequence::index_of(double lambda) const {
    auto idx = try_index_of(lambda);
    if (!idx)
        raise(ErrorKind::UnknownExponent,
              "exponent " + std::to_string(lambda) + " not present in sequence");
    return *idx;
}

BlockPartition::BlockPartition(ExponentSequence seq, std::vector<std::size_t> block_sizes, double q,
                               std::optional<double> q_prime)
    : seq_(std::move(seq)), q_(q), q_prime_(q_prime) {
    if (!(q > 1.0)) raise(ErrorKind::Domain, "BlockPartition: q must exceed 1");
    if (block_sizes.empty()) raise(ErrorKind::Domain, "BlockPartition: no blocks");
    std::size_t total = 0;
    max_block_size_ = 0;
    for (std::size_t s : block_sizes) {
        if (s == 0) raise(ErrorKind::Domain, "BlockPartition: zero block size");
        total += s;
        max_block_size_ = std::max(max_block_size_, s);
    }
    if (total != seq_.size())
        raise(ErrorKind::Domain, "BlockPartition: block sizes must cover the sequence exactly");
    blocks_.reserve(block_sizes.size());
    std::size_t lo = 0;
    for (std::size_t s : block_sizes) {
        blocks_.push_back({lo, lo + s - 1});
        lo += s;
    }

    // Endpoint ratios between consecutive blocks; the onset is the smallest
    // block index from which all later ratios clear q.
    const std::size_t nratios = blocks_.size() - 1;
    onset_index_ = 0;
    if (nratios > 0) {
        std::size_t first_bad_tail = 0;  // smallest j with ratios j..nratios-1 all passing
        for (std::size_t k = nratios; k-- > 0;) {
            const double ratio = seq_[blocks_[k + 1].hi] / seq_[blocks_[k].hi];
            if (ratio > q * (1.0 - kRatioTol)) {
                first_bad_tail = k;
            } else {
                break;
            }
        }
        const double last_ratio = seq_[blocks_[nratios].hi] / seq_[blocks_[nratios - 1].hi];
        if (!(last_ratio > q * (1.0 - kRatioTol)))
            raise(ErrorKind::NotLacunary,
                  "BlockPartition: endpoint ratio condition fails for every onset choice");
        onset_index_ = first_bad_tail;
    }

    if (q_prime_) {
        auto check = check_subgeometric(*this, *q_prime_);
        if (!check.ok)
            raise(ErrorKind::Domain,
                  "BlockPartition: declared q_prime violated at block " +
                      std::to_string(*check.first_violation));
    }
}

double BlockPartition::block_endpoint(std::size_t k) const { return seq_[blocks_.at(k).hi]; }
double BlockPartition::block_start(std::size_t k) const { return seq_[blocks_.at(k).lo]; }
std::size_t BlockPartition::block_size(std::size_t k) const {
    return blocks_.at(k).hi - blocks_.at(k).lo + 1;
}

BlockPartition validate_quasi_lacunary(ExponentSequence seq, std::vector<std::size_t> block_sizes,
                                       double q, std::optional<double> q_prime) {
    return BlockPartition(std::move(seq), std::move(block_sizes), q, q_prime);
}

SubgeometricCheck check_subgeometric(const BlockPartition& part, double q_prime) {
    SubgeometricCheck result;
    const auto& seq = part.sequence();
    const auto& blocks = part.blocks();
    for (std::size_t k = part.onset_index(); k + 1 < blocks.size(); ++k) {
        const double ratio = seq[blocks[k + 1].hi] / seq[blocks[k].hi];
        if (ratio > q_prime * (1.0 + kRatioTol)) {
            result.ok = false;
            result.first_violation = k;
            return result;
        }
    }
    return result;
}

LacunarySumResult lacunary_sum_ratio(const ExponentSequence& seq, double kappa, std::size_t i,
                                     TailDirection direction) {
    if (!(kappa > 0.0)) raise(ErrorKind::Domain, "lacunary_sum_ratio: kappa must be positive");
    if (i >= seq.size()) raise(ErrorKind::Domain, "lacunary_sum_ratio: index out of range");
    LacunarySumResult out;
    const double log_li = std::log(seq[i]);
    if (direction == TailDirection::Below) {
        // sum_{j<=i} (lambda_j/lambda_i)^kappa, every term <= 1.
        for (std::size_t j = 0; j <= i; ++j)
            out.value += std::exp(kappa * (std::log(seq[j]) - log_li));
    } else {
        if (i + 1 == seq.size()) {
            out.empty_tail = true;
            return out;
        }
        // sum_{j>i} (lambda_i/lambda_j)^kappa, every term < 1.
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            out.value += std::exp(kappa * (log_li - std::log(seq[j])));
    }
    return out;
}

namespace {

// eps-sum over stored indices [lo, hi] (clamped), raised to the power u.
double window_delta(const std::vector<double>& eps, std::ptrdiff_t lo, std::ptrdiff_t hi,
                    double u) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(eps.size());
    lo = std::max<std::ptrdiff_t>(lo, 0);
    hi = std::min<std::ptrdiff_t>(hi, n - 1);
    if (lo > hi) return 0.0;
    double s = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) s += eps[static_cast<std::size_t>(j)];
    return s > 0.0 ? std::pow(s, u) : 0.0;
}

}  // namespace

DeltaLemmaResult delta_lemma_check(const ExponentSequence& lambda, const std::vector<double>& eps,
                                   std::size_t n, double kappa, double tau, double beta,
                                   std::size_t A, std::size_t i, TailDirection direction) {
    if (n < 2) raise(ErrorKind::Domain, "delta_lemma_check: n must be at least 2");
    if (!(tau > 0.0 && tau < 1.0)) raise(ErrorKind::Domain, "delta_lemma_check: tau must lie in (0,1)");
    if (!(beta > 0.0 && beta < 1.0))
        raise(ErrorKind::Domain, "delta_lemma_check: beta must lie in (0,1)");
    if (A == 0) raise(ErrorKind::Domain, "delta_lemma_check: A must be positive");
    if (!(kappa > 0.0)) raise(ErrorKind::Domain, "delta_lemma_check: kappa must be positive");
    if (eps.size() != lambda.size())
        raise(ErrorKind::Domain, "delta_lemma_check: eps length must match sequence length");
    if (i >= lambda.size()) raise(ErrorKind::Domain, "delta_lemma_check: index out of range");
    for (double e : eps)
        if (!(e > 0.0)) raise(ErrorKind::Domain, "delta_lemma_check: eps must be positive");

    const double u = (1.0 - tau) * (1.0 - beta) / (n - 1);
    const std::size_t K = lambda.size() - 1;
    const double log_li = std::log(lambda[i]);
    DeltaLemmaResult out;

    // Both sides are rescaled by lambda_i^{-+kappa} before the (n-1)-power so
    // huge exponents cannot overflow; the common factor cancels in the ratio.
    double lhs_scaled = 0.0;
    double rhs_scaled = 0.0;
    if (direction == TailDirection::Above) {
        if (i == K) return out;  // empty tail: lhs = rhs = 0, ratio 1
        for (std::size_t j = i + 1; j <= K; ++j)
            lhs_scaled += std::exp(-kappa * (std::log(lambda[j]) - log_li)) * std::pow(eps[j], u);
        for (std::size_t k = 0; i + k * A <= K; ++k) {
            const std::size_t anchor = i + k * A;
            const double delta = window_delta(eps, static_cast<std::ptrdiff_t>(anchor),
                                              static_cast<std::ptrdiff_t>(anchor + A) - 1, u);
            rhs_scaled += delta * std::exp(-kappa * (std::log(lambda[anchor]) - log_li));
        }
    } else {
        if (i == 0) return out;  // lhs sums j = 1..i, empty at i = 0
        for (std::size_t j = 1; j <= i; ++j)
            lhs_scaled += std::exp(kappa * (std::log(lambda[j]) - log_li)) * std::pow(eps[j], u);
        for (std::size_t k = 0; k * A <= i; ++k) {
            const std::size_t anchor = i - k * A;
            const double delta = window_delta(eps,
                                              static_cast<std::ptrdiff_t>(anchor) -
                                                  static_cast<std::ptrdiff_t>(A),
                                              static_cast<std::ptrdiff_t>(anchor) - 1, u);
            rhs_scaled += delta * std::exp(kappa * (std::log(lambda[anchor]) - log_li));
        }
    }

    const double power = static_cast<double>(n - 1);
    const double sign = direction == TailDirection::Above ? -1.0 : 1.0;
    const double log_common = power * sign * kappa * log_li;
    out.lhs = std::exp(power * std::log(lhs_scaled) + log_common);
    out.rhs = std::exp(power * std::log(rhs_scaled) + log_common);
    out.ratio = rhs_scaled > 0.0 ? std::pow(lhs_scaled / rhs_scaled, power) : 0.0;
    if (lhs_scaled == 0.0) out.lhs = 0.0;
    if (rhs_scaled == 0.0) out.rhs = 0.0;
    return out;
}

}  // namespace muntzlab
