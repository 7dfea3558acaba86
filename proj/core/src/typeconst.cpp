#include "muntzlab/typeconst.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "muntzlab/errors.hpp"
#include "muntzlab/quadrature.hpp"
#include "muntzlab/rng.hpp"

namespace muntzlab {

double interpolation_theta(double p, double q, double r) {
    if (!(p > 0.0 && p < r && r < q) || !std::isfinite(q)) {
        raise(ErrorKind::Domain, "interpolation_theta needs 0 < p < r < q");
    }
    const double theta = q * (r - p) / (r * (q - p));
    const double drift = std::fabs(1.0 / r - ((1.0 - theta) / p + theta / q));
    if (drift > 1e-14) {
        raise(ErrorKind::Accuracy, "interpolation identity off by " + std::to_string(drift));
    }
    return theta;
}

InterpolationConfig::InterpolationConfig(BlockPartition part, double p, double q, double r,
                                         double alpha, double beta, Measure mu)
    : part_(std::move(part)), p_(p), q_(q), r_(r), alpha_(alpha), beta_(beta), mu_(std::move(mu)) {
    if (!(std::isfinite(q_) && p_ > 0.0 && p_ < r_ && r_ < q_)) {
        raise(ErrorKind::Domain, "interpolation config needs 0 < p < r < q");
    }
    if (!(std::isfinite(alpha_) && alpha_ > 0.0)) {
        raise(ErrorKind::Domain, "interpolation config needs alpha > 0");
    }
    if (!(std::isfinite(beta_) && beta_ > 0.0)) {
        raise(ErrorKind::Domain, "interpolation config needs beta > 0");
    }
    // The two admissible regimes: a bounded-moment setup with beta >= 1 needs
    // p at or above beta, the summability setup with beta < 1 needs p > 1.
    if (beta_ >= 1.0 && p_ < beta_) {
        raise(ErrorKind::Domain, "beta >= 1 requires p >= beta");
    }
    if (beta_ < 1.0 && p_ <= 1.0) {
        raise(ErrorKind::Domain, "beta < 1 requires p > 1");
    }
}

OperatorFn as_operator(const KernelOperator& T) {
    return [T](const MuntzPolynomial& f) { return T.apply(f); };
}

OperatorFn as_operator(const DilationOperator& T) {
    return [T](const MuntzPolynomial& f) { return T.apply(f); };
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> block_exponents(const BlockPartition& part, std::size_t k) {
    if (k >= part.block_count()) {
        raise(ErrorKind::Domain, "block index " + std::to_string(k) + " out of range");
    }
    const IndexRange blk = part.blocks()[k];
    std::vector<double> lambdas;
    lambdas.reserve(blk.hi - blk.lo + 1);
    for (std::size_t i = blk.lo; i <= blk.hi; ++i) lambdas.push_back(part.sequence()[i]);
    return lambdas;
}

MuntzPolynomial from_coeffs(const std::vector<double>& lambdas, const std::vector<double>& x) {
    std::vector<MuntzPolynomial::Term> terms;
    terms.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) terms.push_back({lambdas[i], x[i]});
    return MuntzPolynomial(std::move(terms));
}

void project_to_sphere(std::vector<double>& x) {
    double nrm = 0.0;
    for (double xi : x) nrm += xi * xi;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-300) {
        std::fill(x.begin(), x.end(), 0.0);
        x[0] = 1.0;
        return;
    }
    for (double& xi : x) xi /= nrm;
}

struct SphereMax {
    double value = 0.0;
    double gap = 0.0;  // how far sampling got above the ascent result
};

// Multi-start projected gradient ascent on the unit coefficient sphere with a
// random-direction cross-check. Both objectives used here are homogeneous of
// degree zero in the coefficients, so the sphere restriction loses nothing.
SphereMax maximize_on_sphere(const std::function<double(const std::vector<double>&)>& obj,
                             std::size_t d, std::uint64_t tag, const OptimizerOptions& opts,
                             const char* what) {
    double best_opt = 0.0;
    for (std::size_t rs = 0; rs < opts.restarts; ++rs) {
        Rng rng(split_seed(opts.seed, tag, 100 + rs));
        std::vector<double> x(d);
        for (double& xi : x) xi = rng.normal();
        project_to_sphere(x);
        double fx = obj(x);
        double step = 0.25;
        for (std::size_t it = 0; it < opts.max_iterations; ++it) {
            std::vector<double> g(d, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                std::vector<double> xp = x;
                xp[i] += opts.fd_step;
                project_to_sphere(xp);
                g[i] = (obj(xp) - fx) / opts.fd_step;
            }
            // Keep only the tangential part of the gradient.
            double radial = 0.0;
            for (std::size_t i = 0; i < d; ++i) radial += g[i] * x[i];
            double gn = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] -= radial * x[i];
                gn += g[i] * g[i];
            }
            gn = std::sqrt(gn);
            if (gn < 1e-14) break;
            const double prev = fx;
            bool improved = false;
            for (int half = 0; half < 24 && !improved; ++half) {
                std::vector<double> xn = x;
                for (std::size_t i = 0; i < d; ++i) xn[i] += step * g[i] / gn;
                project_to_sphere(xn);
                const double fn = obj(xn);
                if (fn > fx) {
                    x = std::move(xn);
                    fx = fn;
                    improved = true;
                    step *= 1.5;
                } else {
                    step *= 0.5;
                }
            }
            if (!improved || fx - prev <= opts.improvement_tol * std::max(1.0, fx)) break;
        }
        best_opt = std::max(best_opt, fx);
    }

    double best_samp = 0.0;
    Rng rng(split_seed(opts.seed, tag, 99));
    std::vector<double> x(d);
    for (std::size_t draw = 0; draw < opts.samples; ++draw) {
        for (double& xi : x) xi = rng.normal();
        project_to_sphere(x);
        best_samp = std::max(best_samp, obj(x));
    }
    const double gap = best_samp - best_opt;
    if (gap > opts.agreement_tol * std::max(1.0, best_samp)) {
        raise(ErrorKind::NonConvergence, std::string(what) + ": ascent reached " + fmt(best_opt) +
                                             " but sampling found " + fmt(best_samp));
    }
    return {std::max(best_opt, best_samp), std::max(0.0, gap)};
}

struct RestrictedResult {
    double value = 0.0;
    double gap = 0.0;
};

RestrictedResult restricted_strong_impl(const OperatorFn& T, std::size_t k, double r,
                                        const InterpolationConfig& cfg,
                                        const OptimizerOptions& opts) {
    if (!(std::isfinite(r) && r > 0.0)) raise(ErrorKind::Domain, "restricted constant needs r > 0");
    const std::vector<double> lambdas = block_exponents(cfg.part(), k);
    const double s_den = r / cfg.beta();
    const Measure nu = cfg.source_measure();
    auto ratio = [&](const std::vector<double>& x) -> double {
        const MuntzPolynomial f = from_coeffs(lambdas, x);
        if (f.is_zero()) return 0.0;
        const double den = lp_norm(f, s_den, nu);
        if (!(den > 0.0)) return 0.0;
        return lp_norm(T(f), r, cfg.mu()) / den;
    };
    if (lambdas.size() == 1) {
        // One-dimensional blocks: the ratio is coefficient-free.
        return {ratio({1.0}), 0.0};
    }
    const SphereMax best =
        maximize_on_sphere(ratio, lambdas.size(), k, opts, "restricted strong constant");
    return {best.value, best.gap};
}

// sup over levels of level * mu(|g| > level)^{1/r}: dyadic sweep down from
// sup|g| followed by a golden pass in log-level around the best octave.
double weak_level_sup(const MuntzPolynomial& g, double r, const Measure& mu,
                      std::size_t octaves) {
    if (g.is_zero()) return 0.0;
    const double top = sup_norm(g);
    if (!(top > 0.0)) return 0.0;
    const DistributionScanner scan(g, mu);
    auto value_at = [&](double level) {
        const double m = scan.mass_above(level);
        return m > 0.0 ? level * std::pow(m, 1.0 / r) : 0.0;
    };
    double best = 0.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j <= octaves; ++j) {
        const double v = value_at(top * std::exp2(-static_cast<double>(j)));
        if (v > best) {
            best = v;
            best_j = j;
        }
    }
    const double ln2 = std::log(2.0);
    const double hi = std::log(top) - static_cast<double>(best_j > 0 ? best_j - 1 : 0) * ln2;
    const double lo = std::log(top) - static_cast<double>(best_j + 1) * ln2;
    const double arg =
        golden_max([&](double lv) { return value_at(std::exp(lv)); }, lo, hi, 1e-10, 80);
    return std::max(best, value_at(std::exp(arg)));
}

RestrictedResult restricted_weak_impl(const OperatorFn& T, std::size_t k, double r,
                                      const InterpolationConfig& cfg,
                                      const OptimizerOptions& opts) {
    if (!(std::isfinite(r) && r > 0.0)) raise(ErrorKind::Domain, "restricted constant needs r > 0");
    const std::vector<double> lambdas = block_exponents(cfg.part(), k);
    const double s_den = r / cfg.beta();
    const Measure nu = cfg.source_measure();
    auto ratio = [&](const std::vector<double>& x) -> double {
        const MuntzPolynomial f = from_coeffs(lambdas, x);
        if (f.is_zero()) return 0.0;
        const double den = lp_norm(f, s_den, nu);
        if (!(den > 0.0)) return 0.0;
        return weak_level_sup(T(f), r, cfg.mu(), opts.level_octaves) / den;
    };
    if (lambdas.size() == 1) {
        return {ratio({1.0}), 0.0};
    }
    const SphereMax best =
        maximize_on_sphere(ratio, lambdas.size(), k, opts, "restricted weak constant");
    return {best.value, best.gap};
}

}  // namespace

double restricted_strong_constant(const OperatorFn& T, std::size_t k, double r,
                                  const InterpolationConfig& cfg, const OptimizerOptions& opts) {
    return restricted_strong_impl(T, k, r, cfg, opts).value;
}

double restricted_weak_constant(const OperatorFn& T, std::size_t k, double r,
                                const InterpolationConfig& cfg, const OptimizerOptions& opts) {
    return restricted_weak_impl(T, k, r, cfg, opts).value;
}

double strong_constant_lower_bound(const OperatorFn& T, double r, const InterpolationConfig& cfg,
                                   const std::vector<MuntzPolynomial>& family) {
    if (!(std::isfinite(r) && r > 0.0)) raise(ErrorKind::Domain, "lower bound needs r > 0");
    if (family.empty()) raise(ErrorKind::Domain, "lower bound needs a nonempty family");
    const double s_den = r / cfg.beta();
    const Measure nu = cfg.source_measure();
    double best = 0.0;
    for (const MuntzPolynomial& f : family) {
        if (f.is_zero()) continue;
        const double den = lp_norm(f, s_den, nu);
        if (!(den > 0.0)) continue;
        best = std::max(best, lp_norm(T(f), r, cfg.mu()) / den);
    }
    return best;
}

std::vector<MuntzPolynomial> make_default_family(const BlockPartition& part, double alpha,
                                                 double beta, double r, std::uint64_t seed,
                                                 std::size_t random_count) {
    if (!(alpha > 0.0 && beta > 0.0 && r > 0.0)) {
        raise(ErrorKind::Domain, "family weights need alpha, beta, r > 0");
    }
    const ExponentSequence& seq = part.sequence();
    const std::size_t total = seq.size();
    std::vector<MuntzPolynomial> family;

    // Coordinated witnesses over dyadic prefixes of the sequence.
    const double w_exp = alpha * beta / r;
    for (std::size_t n = 1;; n *= 2) {
        const std::size_t take = std::min(n, total);
        std::vector<MuntzPolynomial::Term> terms;
        terms.reserve(take);
        for (std::size_t i = 0; i < take; ++i) {
            terms.push_back({seq[i], std::exp(w_exp * std::log(seq[i]))});
        }
        family.push_back(MuntzPolynomial(std::move(terms)));
        if (take == total) break;
    }

    // Random sparse polynomials. Member i depends on (seed, i) only, so a
    // family built with a larger random_count extends this one verbatim.
    const std::size_t max_support = std::min<std::size_t>(total, 10);
    for (std::size_t i = 0; i < random_count; ++i) {
        Rng rng(split_seed(seed, 1000 + i));
        std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_support));
        m = std::min(m, max_support);
        std::vector<std::size_t> idx(total);
        for (std::size_t j = 0; j < total; ++j) idx[j] = j;
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t pick = j + static_cast<std::size_t>(rng.next_u64() % (total - j));
            std::swap(idx[j], idx[pick]);
        }
        std::vector<MuntzPolynomial::Term> terms;
        terms.reserve(m);
        for (std::size_t j = 0; j < m; ++j) terms.push_back({seq[idx[j]], rng.normal()});
        family.push_back(MuntzPolynomial(std::move(terms)));
    }
    return family;
}

TypeConstantReport restricted_profile(const OperatorFn& T, const InterpolationConfig& cfg,
                                      double s, ConstantKind kind, IndexRange range,
                                      const OptimizerOptions& opts) {
    if (kind == ConstantKind::GlobalStrongLower) {
        raise(ErrorKind::Domain, "profile supports restricted kinds only");
    }
    if (!(range.lo <= range.hi) || range.hi >= cfg.part().block_count()) {
        raise(ErrorKind::Domain, "profile block range out of bounds");
    }
    TypeConstantReport rep;
    rep.kind = kind;
    rep.r = s;
    rep.alpha = cfg.alpha();
    rep.beta = cfg.beta();
    rep.restarts = opts.restarts;
    rep.samples = opts.samples;
    for (std::size_t k = range.lo; k <= range.hi; ++k) {
        const RestrictedResult res = kind == ConstantKind::RestrictedStrong
                                         ? restricted_strong_impl(T, k, s, cfg, opts)
                                         : restricted_weak_impl(T, k, s, cfg, opts);
        rep.k.push_back(k);
        rep.constant.push_back(res.value);
        rep.aggregate = std::max(rep.aggregate, res.value);
        rep.achieved_tolerance = std::max(rep.achieved_tolerance, res.gap);
    }
    return rep;
}

DecouplingInterval decoupling_ratio(const BlockPartition& part, double p, double alpha,
                                    std::size_t samples, std::uint64_t seed,
                                    std::size_t max_blocks) {
    if (!(p > 0.0 && std::isfinite(p))) raise(ErrorKind::Domain, "decoupling needs p > 0");
    if (!(alpha > 0.0)) raise(ErrorKind::Domain, "decoupling needs alpha > 0");
    if (samples == 0) raise(ErrorKind::Domain, "decoupling needs at least one sample");
    if (part.block_count() < 2) raise(ErrorKind::Domain, "decoupling needs at least two blocks");
    if (max_blocks < 2) raise(ErrorKind::Domain, "decoupling needs max_blocks >= 2");

    const Measure nu = Measure::jacobi(alpha);
    const ExponentSequence& seq = part.sequence();
    std::vector<double> mono_cache(seq.size(), -1.0);
    auto monomial_norm = [&](std::size_t i) {
        if (mono_cache[i] < 0.0) {
            mono_cache[i] = lp_norm(MuntzPolynomial::monomial(seq[i]), p, nu);
        }
        return mono_cache[i];
    };

    const std::size_t block_cap = std::min(max_blocks, part.block_count());
    DecouplingInterval out;
    out.samples = samples;
    std::vector<double> log_ratios;
    log_ratios.reserve(samples);
    std::vector<std::size_t> block_idx(part.block_count());
    for (std::size_t b = 0; b < block_idx.size(); ++b) block_idx[b] = b;

    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(split_seed(seed, s, 2));
        const std::size_t nb = block_cap;
        for (std::size_t j = 0; j < nb; ++j) {
            const std::size_t pick =
                j + static_cast<std::size_t>(rng.next_u64() % (block_idx.size() - j));
            std::swap(block_idx[j], block_idx[pick]);
        }
        std::vector<MuntzPolynomial::Term> all_terms;
        double pow_sum = 0.0;
        for (std::size_t j = 0; j < nb; ++j) {
            const IndexRange blk = part.blocks()[block_idx[j]];
            std::vector<MuntzPolynomial::Term> terms;
            for (std::size_t i = blk.lo; i <= blk.hi; ++i) {
                const double c = rng.normal();
                if (c == 0.0) continue;
                terms.push_back({seq[i], c});
                all_terms.push_back({seq[i], c});
            }
            if (terms.empty()) continue;
            const double nrm = terms.size() == 1
                                   ? std::fabs(terms[0].coeff) * monomial_norm(blk.lo)
                                   : lp_norm(MuntzPolynomial(std::move(terms)), p, nu);
            pow_sum += std::pow(nrm, p);
        }
        if (all_terms.empty() || !(pow_sum > 0.0)) continue;
        const double whole = lp_norm(MuntzPolynomial(std::move(all_terms)), p, nu);
        const double ratio = whole / std::pow(pow_sum, 1.0 / p);
        if (ratio > 0.0) log_ratios.push_back(std::log(ratio));
    }
    if (log_ratios.empty()) return out;

    // Two-sigma coverage band of the sampled log ratios. Raw sample extremes
    // keep drifting as the sample count grows; the band is a root-n-stable
    // summary of the same spread.
    double mean = 0.0;
    for (double lr : log_ratios) mean += lr;
    mean /= static_cast<double>(log_ratios.size());
    double var = 0.0;
    for (double lr : log_ratios) var += (lr - mean) * (lr - mean);
    const double sd = std::sqrt(var / static_cast<double>(log_ratios.size()));
    out.c_low = std::exp(mean - 2.0 * sd);
    out.c_high = std::exp(mean + 2.0 * sd);
    return out;
}

double bernstein_constant(const BlockPartition& part, std::size_t k, double p, double q,
                          double alpha_w, double beta, const Measure& mu, std::size_t samples,
                          std::uint64_t seed) {
    if (!(p > 0.0 && q > 0.0)) raise(ErrorKind::Domain, "bernstein constant needs p, q > 0");
    if (!(alpha_w > -1.0)) raise(ErrorKind::Domain, "bernstein weight needs alpha_w > -1");
    if (!(beta > 0.0)) raise(ErrorKind::Domain, "bernstein constant needs beta > 0");
    const MxReport mx = check_Mx_gamma(mu, beta);
    if (!mx.verdict) {
        raise(ErrorKind::Precondition,
              "measure fails the near-1 mass bound at exponent " + fmt(beta));
    }
    const std::vector<double> lambdas = block_exponents(part, k);
    const double delta = (1.0 + alpha_w) / q - beta / p;
    const double lam_scale = std::exp(delta * std::log(part.block_start(k)));
    const Measure weight = Measure::jacobi(alpha_w + 1.0);
    auto value = [&](const std::vector<double>& x) -> double {
        const MuntzPolynomial f = from_coeffs(lambdas, x);
        if (f.is_zero()) return 0.0;
        const double den = lp_norm(f, q, weight);
        if (!(den > 0.0)) return 0.0;
        return lp_norm(f, p, mu) / (lam_scale * den);
    };

    const std::size_t d = lambdas.size();
    std::vector<double> x(d, 0.0);
    double best = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        std::fill(x.begin(), x.end(), 0.0);
        x[i] = 1.0;
        best = std::max(best, value(x));
    }
    Rng rng(split_seed(seed, k, 3));
    for (std::size_t s = 0; s < samples && d > 1; ++s) {
        for (double& xi : x) xi = rng.normal();
        project_to_sphere(x);
        best = std::max(best, value(x));
    }
    return best;
}

bool summable_trend_gate(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 8) return false;
    double last = 0.0;
    for (std::size_t i = n / 2; i < n; ++i) last += values[i];
    double prev = 0.0;
    for (std::size_t i = n / 4; i < n / 2; ++i) prev += values[i];
    if (!(prev > 0.0)) return !(last > 0.0);
    return last < 0.9 * prev;
}

EpsilonProfile epsilon_profile(const OperatorFn& T, const InterpolationConfig& cfg, double s,
                               IndexRange k_range, const OptimizerOptions& opts) {
    if (!(cfg.beta() < 1.0)) {
        raise(ErrorKind::Domain, "epsilon profile requires beta in (0, 1)");
    }
    if (!(k_range.lo <= k_range.hi) || k_range.hi >= cfg.part().block_count()) {
        raise(ErrorKind::Domain, "epsilon profile block range out of bounds");
    }
    EpsilonProfile out;
    for (std::size_t k = k_range.lo; k <= k_range.hi; ++k) {
        out.constants.push_back(restricted_strong_impl(T, k, s, cfg, opts).value);
    }
    out.normalizer = *std::max_element(out.constants.begin(), out.constants.end());
    const double expo = s / (1.0 - cfg.beta());
    out.eps.reserve(out.constants.size());
    for (double c : out.constants) {
        out.eps.push_back(out.normalizer > 0.0 ? std::pow(c / out.normalizer, expo) : 0.0);
        out.partial_sum += out.eps.back();
    }
    out.summable_trend = summable_trend_gate(out.eps);
    return out;
}

}  // namespace muntzlab
