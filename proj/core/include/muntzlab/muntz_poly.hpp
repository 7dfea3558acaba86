#pragma once

#include <cstddef>
#include <vector>

#include "muntzlab/exponents.hpp"

namespace muntzlab {

// Generalized polynomial sum a_k t^{lambda_k} on [0,1] with positive, strictly
// increasing exponents. Exponents can be enormous (2^60 and beyond), so all
// evaluation happens in the log domain.
class MuntzPolynomial {
  public:
    struct Term {
        double lambda;
        double coeff;
    };

    MuntzPolynomial() = default;
    // Terms are sorted, like exponents (within relative kRatioTol) merged, and
    // zero coefficients dropped, so equal polynomials compare equal termwise.
    explicit MuntzPolynomial(std::vector<Term> terms);

    static MuntzPolynomial monomial(double lambda, double coeff = 1.0);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    double max_exponent() const;
    double min_exponent() const;
    double coefficient_sum() const;

    // f(t) for t in [0,1]; t=0 gives 0, t=1 gives the coefficient sum exactly.
    double evaluate(double t) const;
    // f(1-w) for w in [0,1], accurate for w near 0 where 1-w loses digits.
    double evaluate_one_minus(double w) const;

    MuntzPolynomial scaled(double c) const;
    MuntzPolynomial plus(const MuntzPolynomial& other) const;

  private:
    std::vector<Term> terms_;
};

// Slice of a polynomial whose exponents all lie in one block of a partition.
struct BlockPolynomial {
    std::size_t block_index = 0;
    MuntzPolynomial poly;
};

// Splits f along the blocks of the partition; every exponent of f must occur
// in the partitioned sequence. The concatenation of the pieces restores f.
std::vector<BlockPolynomial> block_decompose(const MuntzPolynomial& f, const BlockPartition& part);

// Max of |f| over [0,1]: dual log-spaced scan near t=0 and t=1 plus the
// endpoint value at t=1, refined by golden section in the log coordinate.
double sup_norm(const MuntzPolynomial& f, std::size_t grid_points = 256);

// Empirical constant sup_x |f_k(x)| / (x^{(lambda+1)/N} * sup|f_k|) over a log
// grid, where lambda is the smallest exponent of the block and N the largest
// block size of the partition. The grid is capped below at 1/lambda, where
// the comparison is meaningful.
double pointwise_bound_constant(const BlockPolynomial& fk, const BlockPartition& part,
                                std::size_t grid_size);

}  // namespace muntzlab
