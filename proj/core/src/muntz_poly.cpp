#include "muntzlab/muntz_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muntzlab/errors.hpp"
#include "muntzlab/quadrature.hpp"

namespace muntzlab {

MuntzPolynomial::MuntzPolynomial(std::vector<Term> terms) {
    for (const Term& t : terms) {
        if (!(t.lambda > 0.0) || !std::isfinite(t.lambda))
            raise(ErrorKind::Domain, "MuntzPolynomial: exponents must be positive and finite");
        if (!std::isfinite(t.coeff))
            raise(ErrorKind::Domain, "MuntzPolynomial: coefficients must be finite");
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.lambda < b.lambda; });
    terms_.reserve(terms.size());
    for (const Term& t : terms) {
        if (!terms_.empty() && t.lambda <= terms_.back().lambda * (1.0 + kRatioTol)) {
            terms_.back().coeff += t.coeff;
            if (terms_.back().coeff == 0.0) terms_.pop_back();
        } else if (t.coeff != 0.0) {
            terms_.push_back(t);
        }
    }
}

MuntzPolynomial MuntzPolynomial::monomial(double lambda, double coeff) {
    return MuntzPolynomial({{lambda, coeff}});
}

double MuntzPolynomial::max_exponent() const {
    if (terms_.empty()) raise(ErrorKind::Domain, "max_exponent: zero polynomial");
    return terms_.back().lambda;
}

double MuntzPolynomial::min_exponent() const {
    if (terms_.empty()) raise(ErrorKind::Domain, "min_exponent: zero polynomial");
    return terms_.front().lambda;
}

double MuntzPolynomial::coefficient_sum() const {
    double s = 0.0;
    for (const Term& t : terms_) s += t.coeff;
    return s;
}

double MuntzPolynomial::evaluate(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) raise(ErrorKind::Domain, "evaluate: t must lie in [0,1]");
    if (t == 0.0) return 0.0;
    if (t == 1.0) return coefficient_sum();
    const double log_t = std::log(t);
    double s = 0.0;
    for (const Term& term : terms_) s += term.coeff * std::exp(term.lambda * log_t);
    return s;
}

double MuntzPolynomial::evaluate_one_minus(double w) const {
    if (!(w >= 0.0 && w <= 1.0))
        raise(ErrorKind::Domain, "evaluate_one_minus: w must lie in [0,1]");
    if (w == 1.0) return 0.0;
    if (w == 0.0) return coefficient_sum();
    const double log_t = std::log1p(-w);
    double s = 0.0;
    for (const Term& term : terms_) s += term.coeff * std::exp(term.lambda * log_t);
    return s;
}

MuntzPolynomial MuntzPolynomial::scaled(double c) const {
    std::vector<Term> out = terms_;
    for (Term& t : out) t.coeff *= c;
    return MuntzPolynomial(std::move(out));
}

MuntzPolynomial MuntzPolynomial::plus(const MuntzPolynomial& other) const {
    std::vector<Term> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return MuntzPolynomial(std::move(out));
}

std::vector<BlockPolynomial> block_decompose(const MuntzPolynomial& f, const BlockPartition& part) {
    const ExponentSequence& seq = part.sequence();
    std::vector<std::vector<MuntzPolynomial::Term>> buckets(part.block_count());
    for (const auto& term : f.terms()) {
        const std::size_t idx = seq.index_of(term.lambda);
        std::size_t k = 0;
        while (part.blocks()[k].hi < idx) ++k;
        buckets[k].push_back(term);
    }
    std::vector<BlockPolynomial> out;
    for (std::size_t k = 0; k < buckets.size(); ++k) {
        if (buckets[k].empty()) continue;
        out.push_back({k, MuntzPolynomial(std::move(buckets[k]))});
    }
    return out;
}

namespace {

// Refine |f| around a bracketing interval expressed in a log coordinate.
// coord_is_w selects whether the coordinate is ln(1-t) or ln(t).
double refine_bracket(const MuntzPolynomial& f, double lo, double hi, bool coord_is_w) {
    const auto value = [&](double u) {
        const double x = std::exp(u);
        return coord_is_w ? std::abs(f.evaluate_one_minus(x)) : std::abs(f.evaluate(x));
    };
    const double best_u = golden_max(value, lo, hi, 1e-12);
    return value(best_u);
}

}  // namespace

double sup_norm(const MuntzPolynomial& f, std::size_t grid_points) {
    if (f.is_zero()) return 0.0;
    if (grid_points < 8) raise(ErrorKind::Domain, "sup_norm: grid too small");

    double best = std::abs(f.coefficient_sum());  // endpoint t = 1, exact

    // Grid in t for structure away from 1, grid in w = 1-t for the boundary
    // layer of width ~1/lambda_max where high-exponent terms live.
    const double lambda_max = f.max_exponent();
    const double w_min = std::min(1e-16, 1e-3 / lambda_max);

    struct Probe {
        double coord;   // log of t or of w
        double value;   // |f|
    };
    std::vector<Probe> t_grid(grid_points), w_grid(grid_points);

    const double lt_lo = std::log(1e-16), lt_hi = std::log(0.5);
    const double lw_lo = std::log(w_min), lw_hi = std::log(0.5);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double frac = static_cast<double>(i) / (grid_points - 1);
        const double lt = lt_lo + frac * (lt_hi - lt_lo);
        const double lw = lw_lo + frac * (lw_hi - lw_lo);
        t_grid[i] = {lt, std::abs(f.evaluate(std::exp(lt)))};
        w_grid[i] = {lw, std::abs(f.evaluate_one_minus(std::exp(lw)))};
    }

    for (const auto* grid : {&t_grid, &w_grid}) {
        const bool is_w = grid == &w_grid;
        std::size_t arg = 0;
        for (std::size_t i = 1; i < grid_points; ++i)
            if ((*grid)[i].value > (*grid)[arg].value) arg = i;
        best = std::max(best, (*grid)[arg].value);
        const double lo = (*grid)[arg > 0 ? arg - 1 : 0].coord;
        const double hi = (*grid)[arg + 1 < grid_points ? arg + 1 : arg].coord;
        if (hi > lo) best = std::max(best, refine_bracket(f, lo, hi, is_w));
    }
    return best;
}

double pointwise_bound_constant(const BlockPolynomial& fk, const BlockPartition& part,
                                std::size_t grid_size) {
    if (fk.poly.is_zero())
        raise(ErrorKind::Domain, "pointwise_bound_constant: zero polynomial has no constant");
    if (grid_size < 64) raise(ErrorKind::Domain, "pointwise_bound_constant: grid_size below 64");

    const double lambda = part.block_start(fk.block_index);
    const double n_max = static_cast<double>(part.max_block_size());
    const double bound_exp = (lambda + 1.0) / n_max;
    const double norm = sup_norm(fk.poly);

    // The comparison degenerates as x -> 0 (both sides vanish at different
    // rates), so the scan starts where the bound carries content. The floor
    // is clamped to 1/2 so blocks starting at lambda <= 1 still get a
    // nondegenerate interval instead of the single point x = 1.
    const double x_lo = std::clamp(1.0 / lambda, 1e-6, 0.5);
    const double ll = std::log(x_lo);
    double best = 0.0;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double frac = static_cast<double>(i) / (grid_size - 1);
        const double lx = ll * (1.0 - frac);  // from ln(x_lo) up to 0
        const double x = std::exp(lx);
        const double ratio = std::abs(fk.poly.evaluate(x)) / (std::pow(x, bound_exp) * norm);
        best = std::max(best, ratio);
    }
    return best;
}

}  // namespace muntzlab
