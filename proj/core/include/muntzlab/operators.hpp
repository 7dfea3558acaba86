#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "muntzlab/exponents.hpp"
#include "muntzlab/muntz_poly.hpp"

namespace muntzlab {

// Linear operator given extensionally by its action on the monomials of a
// source sequence: T(t^{lambda_k}) = sum_n c_n(k) t^{lambda_n} with target
// exponents drawn from a (usually identical) target sequence.
class KernelOperator {
  public:
    struct Entry {
        std::size_t n;
        double c;
    };

    KernelOperator(ExponentSequence source, ExponentSequence target,
                   std::vector<std::vector<Entry>> rows, bool positive,
                   double truncation_tol = 1e-12);

    const ExponentSequence& source() const { return source_; }
    const ExponentSequence& target() const { return target_; }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<Entry>& row(std::size_t k) const;
    bool positive() const { return positive_; }
    double truncation_tol() const { return truncation_tol_; }
    // Upper bound, relative to the retained weighted row sums, on what early
    // row truncation dropped; zero when rows were never cut short.
    double truncation_certificate() const { return truncation_certificate_; }

    // Image of t^{lambda_k} as a polynomial.
    MuntzPolynomial monomial_image(std::size_t k) const;
    MuntzPolynomial apply(const MuntzPolynomial& f) const;

  private:
    ExponentSequence source_;
    ExponentSequence target_;
    std::vector<std::vector<Entry>> rows_;
    bool positive_ = false;
    double truncation_tol_ = 1e-12;
    double truncation_certificate_ = 0.0;
    friend KernelOperator make_example_supercritical(const BlockPartition&, double, double, double,
                                                     std::vector<double>, double);
};

// Operator acting by weighted dilations Tf(t) = sum_n c_n f(t^{mu_n}).
class DilationOperator {
  public:
    DilationOperator(std::vector<double> weights, std::vector<double> scales);

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& scales() const { return scales_; }
    bool positive() const;

    // C = sum_n |c_n|^p / mu_n^gamma, the constant controlling the monomial
    // image norms under the (1-x)^{gamma-1} weight.
    double norm_constant(double p, double gamma) const;

    MuntzPolynomial apply(const MuntzPolynomial& f) const;

  private:
    std::vector<double> weights_;
    std::vector<double> scales_;
};

// T(t^{lambda_k}) = t^{lambda_k}.
KernelOperator identity_kernel(const ExponentSequence& seq);

// T(t^{lambda_k}) = diag_k * t^{lambda_k}; the flexible building block for
// operators with a prescribed per-index norm profile.
KernelOperator diagonal_kernel(const ExponentSequence& seq, const std::vector<double>& diag);

// Lower-triangular kernel c_n(k) = lambda_k^{-beta*alpha/r} lambda_n^{gamma/r}
// / n^{(1+eps)/r} for 1 <= n <= k: bounded restricted type, unbounded on the
// coordinated witness sums. Row 0 is empty.
KernelOperator make_counterexample_subcritical(const BlockPartition& part, double r, double alpha,
                                               double beta, double gamma, double eps);

// Same shape with the extra damping k^{-(1-beta)(1+eta)/r} used when beta<1.
KernelOperator make_counterexample_supercritical(const BlockPartition& part, double r,
                                                 double alpha, double beta, double gamma,
                                                 double eps, double eta);

// Upper-triangular kernel T(t^{lambda_k}) = sum_{n>=k} (eps_k eps_n)^{(1-beta)/(2p)}
// t^{lambda_n}. Defaults: eps_k = 1/(k ln^2 k) for k >= 2, constant below.
// gamma sets the weight exponent used to certify early row truncation.
KernelOperator make_example_supercritical(const BlockPartition& part, double p, double beta,
                                          double gamma, std::vector<double> eps_seq = {},
                                          double truncation_tol = 1e-12);

// The default summable profile 1/(k ln^2 k), extended flat over k < 2.
std::vector<double> default_summable_profile(std::size_t count);

struct DilationExample {
    DilationOperator op;
    double constant;  // C = sum |c_n|^p / mu_n^gamma
};

// Weighted-dilation operator together with its norm constant; with no
// arguments, ships c_n = 2^-n, mu_n = 2^n for n = 1..20.
DilationExample make_dilation_example(std::vector<double> weights, std::vector<double> scales,
                                      double gamma, double p);
DilationExample make_dilation_example(double gamma = 1.0, double p = 2.0,
                                      std::size_t count = 20);

}  // namespace muntzlab
