#include "muntzlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "muntzlab/errors.hpp"

namespace muntzlab {

KernelOperator::KernelOperator(ExponentSequence source, ExponentSequence target,
                               std::vector<std::vector<Entry>> rows, bool positive,
                               double truncation_tol)
    : source_(std::move(source)),
      target_(std::move(target)),
      rows_(std::move(rows)),
      positive_(positive),
      truncation_tol_(truncation_tol) {
    if (rows_.size() != source_.size())
        raise(ErrorKind::Domain, "KernelOperator: one row per source exponent required");
    for (const auto& row : rows_) {
        for (const Entry& e : row) {
            if (e.n >= target_.size())
                raise(ErrorKind::Domain, "KernelOperator: target index out of range");
            if (positive_ && e.c < 0.0)
                raise(ErrorKind::Domain, "KernelOperator: negative entry in positive kernel");
        }
    }
}

const std::vector<KernelOperator::Entry>& KernelOperator::row(std::size_t k) const {
    if (k >= rows_.size()) raise(ErrorKind::Domain, "KernelOperator: row index out of range");
    return rows_[k];
}

MuntzPolynomial KernelOperator::monomial_image(std::size_t k) const {
    std::vector<MuntzPolynomial::Term> terms;
    for (const Entry& e : row(k)) terms.push_back({target_[e.n], e.c});
    return MuntzPolynomial(std::move(terms));
}

MuntzPolynomial KernelOperator::apply(const MuntzPolynomial& f) const {
    std::vector<double> acc(target_.size(), 0.0);
    for (const auto& term : f.terms()) {
        const std::size_t k = source_.index_of(term.lambda);
        for (const Entry& e : rows_[k]) acc[e.n] += term.coeff * e.c;
    }
    std::vector<MuntzPolynomial::Term> terms;
    for (std::size_t n = 0; n < acc.size(); ++n)
        if (acc[n] != 0.0) terms.push_back({target_[n], acc[n]});
    return MuntzPolynomial(std::move(terms));
}

DilationOperator::DilationOperator(std::vector<double> weights, std::vector<double> scales)
    : weights_(std::move(weights)), scales_(std::move(scales)) {
    if (weights_.size() != scales_.size())
        raise(ErrorKind::Domain, "DilationOperator: weights/scales size mismatch");
    for (double s : scales_)
        if (!(s > 0.0)) raise(ErrorKind::Domain, "DilationOperator: scales must be positive");
}

bool DilationOperator::positive() const {
    return std::all_of(weights_.begin(), weights_.end(), [](double c) { return c >= 0.0; });
}

double DilationOperator::norm_constant(double p, double gamma) const {
    if (!(p > 0.0)) raise(ErrorKind::Domain, "norm_constant: p must be positive");
    double c = 0.0;
    for (std::size_t n = 0; n < weights_.size(); ++n)
        c += std::exp(p * std::log(std::abs(weights_[n])) - gamma * std::log(scales_[n]));
    return c;
}

MuntzPolynomial DilationOperator::apply(const MuntzPolynomial& f) const {
    std::vector<MuntzPolynomial::Term> terms;
    terms.reserve(f.term_count() * weights_.size());
    for (std::size_t n = 0; n < weights_.size(); ++n)
        for (const auto& term : f.terms())
            terms.push_back({term.lambda * scales_[n], term.coeff * weights_[n]});
    return MuntzPolynomial(std::move(terms));
}

KernelOperator identity_kernel(const ExponentSequence& seq) {
    std::vector<std::vector<KernelOperator::Entry>> rows(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) rows[k] = {{k, 1.0}};
    return KernelOperator(seq, seq, std::move(rows), true);
}

KernelOperator diagonal_kernel(const ExponentSequence& seq, const std::vector<double>& diag) {
    if (diag.size() != seq.size())
        raise(ErrorKind::Domain, "diagonal_kernel: one value per exponent required");
    std::vector<std::vector<KernelOperator::Entry>> rows(seq.size());
    bool positive = true;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (diag[k] != 0.0) rows[k] = {{k, diag[k]}};
        positive = positive && diag[k] >= 0.0;
    }
    return KernelOperator(seq, seq, std::move(rows), positive);
}

namespace {

void require_lacunary(const BlockPartition& part, const char* who) {
    if (!part.is_lacunary())
        raise(ErrorKind::Precondition, std::string(who) + ": partition must have block size 1");
}

}  // namespace

KernelOperator make_counterexample_subcritical(const BlockPartition& part, double r, double alpha,
                                               double beta, double gamma, double eps) {
    require_lacunary(part, "make_counterexample_subcritical");
    if (!(beta >= 1.0))
        raise(ErrorKind::Domain, "make_counterexample_subcritical: beta must be at least 1");
    if (!(r > beta))
        raise(ErrorKind::Domain, "make_counterexample_subcritical: r must exceed beta");
    if (!(alpha > 0.0) || !(gamma > 0.0))
        raise(ErrorKind::Domain, "make_counterexample_subcritical: alpha, gamma must be positive");
    if (!(eps > 0.0 && eps < 1.0))
        raise(ErrorKind::Domain, "make_counterexample_subcritical: eps must lie in (0,1)");

    const ExponentSequence& seq = part.sequence();
    std::vector<std::vector<KernelOperator::Entry>> rows(seq.size());
    for (std::size_t k = 1; k < seq.size(); ++k) {
        const double row_factor = -(beta * alpha / r) * std::log(seq[k]);
        for (std::size_t n = 1; n <= k; ++n) {
            const double c = std::exp(row_factor + (gamma / r) * std::log(seq[n]) -
                                      ((1.0 + eps) / r) * std::log(static_cast<double>(n)));
            rows[k].push_back({n, c});
        }
    }
    return KernelOperator(seq, seq, std::move(rows), true);
}

KernelOperator make_counterexample_supercritical(const BlockPartition& part, double r,
                                                 double alpha, double beta, double gamma,
                                                 double eps, double eta) {
    require_lacunary(part, "make_counterexample_supercritical");
    if (!(r > 1.0))
        raise(ErrorKind::Domain, "make_counterexample_supercritical: r must exceed 1");
    if (!(beta > 0.0 && beta < 1.0))
        raise(ErrorKind::Domain, "make_counterexample_supercritical: beta must lie in (0,1)");
    if (!(alpha > 0.0) || !(gamma > 0.0))
        raise(ErrorKind::Domain,
              "make_counterexample_supercritical: alpha, gamma must be positive");
    if (!(eps > 0.0) || !(eta > 0.0))
        raise(ErrorKind::Domain, "make_counterexample_supercritical: eps, eta must be positive");

    const ExponentSequence& seq = part.sequence();
    std::vector<std::vector<KernelOperator::Entry>> rows(seq.size());
    for (std::size_t k = 1; k < seq.size(); ++k) {
        const double row_factor = -(alpha * beta / r) * std::log(seq[k]) -
                                  ((1.0 - beta) * (1.0 + eta) / r) *
                                      std::log(static_cast<double>(k));
        for (std::size_t n = 1; n <= k; ++n) {
            const double c = std::exp(row_factor + (gamma / r) * std::log(seq[n]) -
                                      ((1.0 + eps) / r) * std::log(static_cast<double>(n)));
            rows[k].push_back({n, c});
        }
    }
    return KernelOperator(seq, seq, std::move(rows), true);
}

std::vector<double> default_summable_profile(std::size_t count) {
    std::vector<double> eps(count);
    const double base = 1.0 / (2.0 * std::log(2.0) * std::log(2.0));
    for (std::size_t k = 0; k < count; ++k) {
        if (k < 2) {
            eps[k] = base;
        } else {
            const double lk = std::log(static_cast<double>(k));
            eps[k] = 1.0 / (static_cast<double>(k) * lk * lk);
        }
    }
    return eps;
}

KernelOperator make_example_supercritical(const BlockPartition& part, double p, double beta,
                                          double gamma, std::vector<double> eps_seq,
                                          double truncation_tol) {
    require_lacunary(part, "make_example_supercritical");
    if (!(p > 0.0)) raise(ErrorKind::Domain, "make_example_supercritical: p must be positive");
    if (!(beta > 0.0 && beta < 1.0))
        raise(ErrorKind::Domain, "make_example_supercritical: beta must lie in (0,1)");
    if (!(gamma > 0.0))
        raise(ErrorKind::Domain, "make_example_supercritical: gamma must be positive");

    const ExponentSequence& seq = part.sequence();
    if (eps_seq.empty()) eps_seq = default_summable_profile(seq.size());
    if (eps_seq.size() != seq.size())
        raise(ErrorKind::Domain, "make_example_supercritical: eps length must match sequence");
    double eps_sum = 0.0;
    for (double e : eps_seq) {
        if (!(e > 0.0))
            raise(ErrorKind::Domain, "make_example_supercritical: eps must be positive");
        eps_sum += e;
    }
    if (eps_sum > 1e3 && eps_seq.back() >= eps_seq[eps_seq.size() / 2])
        raise(ErrorKind::Domain,
              "make_example_supercritical: eps_seq looks nonsummable (large sum, no decay)");

    const double u = (1.0 - beta) / (2.0 * p);
    std::vector<std::vector<KernelOperator::Entry>> rows(seq.size());
    double worst_certificate = 0.0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        double retained = 0.0;
        double prev_weight = 0.0;
        for (std::size_t n = k; n < seq.size(); ++n) {
            const double c = std::exp(u * (std::log(eps_seq[k]) + std::log(eps_seq[n])));
            // Weighted by the decaying monomial norm the row is effectively
            // geometric; once a term is negligible and the decay is strict,
            // the remaining tail is dominated and can be dropped.
            const double weight = c * std::exp(-(gamma / p) * std::log(seq[n]));
            if (n > k + 2 && prev_weight > 0.0 && weight < 0.9 * prev_weight) {
                const double ratio = weight / prev_weight;
                const double tail_bound = weight / (1.0 - ratio);
                if (tail_bound < truncation_tol * retained) {
                    worst_certificate = std::max(worst_certificate, tail_bound / retained);
                    break;
                }
            }
            rows[k].push_back({n, c});
            retained += weight;
            prev_weight = weight;
        }
    }
    KernelOperator op(seq, seq, std::move(rows), true, truncation_tol);
    op.truncation_certificate_ = worst_certificate;
    return op;
}

DilationExample make_dilation_example(std::vector<double> weights, std::vector<double> scales,
                                      double gamma, double p) {
    DilationOperator op(std::move(weights), std::move(scales));
    const double c = op.norm_constant(p, gamma);
    return {std::move(op), c};
}

DilationExample make_dilation_example(double gamma, double p, std::size_t count) {
    std::vector<double> weights(count), scales(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double n = static_cast<double>(i + 1);
        weights[i] = std::exp2(-n);
        scales[i] = std::exp2(n);
    }
    return make_dilation_example(std::move(weights), std::move(scales), gamma, p);
}

}  // namespace muntzlab
