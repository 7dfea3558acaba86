#include "muntzlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "muntzlab/errors.hpp"
#include "muntzlab/quadrature.hpp"
#include "muntzlab/special_functions.hpp"

namespace muntzlab {

Measure Measure::zero() { return Measure(); }

Measure Measure::jacobi(double gamma) {
    if (!(gamma > 0.0)) raise(ErrorKind::Domain, "Measure::jacobi: gamma must be positive");
    Measure m;
    m.jacobi_gamma_ = gamma;
    m.eta_ = gamma;
    return m;
}

Measure Measure::from_density(std::function<double(double)> density, double eta_hint) {
    if (!density) raise(ErrorKind::Domain, "Measure::from_density: empty handle");
    if (!(eta_hint > 0.0))
        raise(ErrorKind::Domain, "Measure::from_density: eta_hint must be positive");
    Measure m;
    m.density_ = std::move(density);
    m.eta_ = eta_hint;
    return m;
}

Measure Measure::atomic(std::vector<Atom> atoms) {
    Measure m;
    for (const Atom& a : atoms) {
        if (!(a.location >= 0.0 && a.location <= 1.0))
            raise(ErrorKind::Domain, "Measure: atom location outside [0,1]");
        if (!(a.mass > 0.0)) raise(ErrorKind::Domain, "Measure: atom mass must be positive");
    }
    m.atoms_ = std::move(atoms);
    return m;
}

Measure Measure::with_atom(double location, double mass) const {
    if (!(location >= 0.0 && location <= 1.0))
        raise(ErrorKind::Domain, "Measure: atom location outside [0,1]");
    if (!(mass > 0.0)) raise(ErrorKind::Domain, "Measure: atom mass must be positive");
    Measure m = *this;
    m.atoms_.push_back({location, mass});
    return m;
}

double Measure::singularity_exponent() const { return eta_; }

double Measure::density_at(double t) const {
    if (jacobi_gamma_) return std::exp((*jacobi_gamma_ - 1.0) * std::log1p(-t));
    if (density_) return density_(t);
    return 0.0;
}

double Measure::regular_density_near_one(double w) const {
    if (jacobi_gamma_) return 1.0;
    if (density_) return density_(1.0 - w) * std::exp((1.0 - eta_) * std::log(w));
    return 0.0;
}

namespace {

// Integrand given in both coordinates: as a function of t and of w = 1-t.
// The w form is the accurate one near t=1.
struct DualIntegrand {
    std::function<double(double)> g_t;
    std::function<double(double)> g_w;
};

enum class PanelKind { SubstNearOne, WBand, TBand };

struct Panel {
    PanelKind kind;
    double a, b;
    double crude = 0.0;
};

// Continuous-part integral of g dmu over [0,1]. The window [1-w_tilde, 1] is
// mapped by w = w_tilde * s^{1/eta}, which turns the (1-t)^{eta-1} weight
// factor into the exact constant w_tilde^eta/eta; the middle runs over dyadic
// bands in w, the left tail over dyadic bands in t with early termination.
double integrate_continuous(const Measure& mu, const DualIntegrand& g, double s_eff,
                            double rel_tol) {
    if (!mu.has_continuous_part()) return 0.0;
    const double eta = mu.singularity_exponent();
    const double w_tilde = std::min(0.5, 50.0 / std::max(s_eff, 1.0));
    const double prefactor = std::exp(eta * std::log(w_tilde)) / eta;

    const auto f_subst = [&](double s) {
        const double w = w_tilde * std::exp(std::log(s) / eta);
        return g.g_w(w) * mu.regular_density_near_one(w) * prefactor;
    };
    const auto f_wband = [&](double w) {
        return g.g_w(w) * mu.regular_density_near_one(w) * std::exp((eta - 1.0) * std::log(w));
    };
    const auto f_tband = [&](double t) { return g.g_t(t) * mu.density_at(t); };

    std::vector<Panel> panels;
    double lo = 0.0, hi = std::ldexp(1.0, -60);
    panels.push_back({PanelKind::SubstNearOne, lo, hi});
    while (hi < 1.0) {
        lo = hi;
        hi = std::min(1.0, 2.0 * hi);
        panels.push_back({PanelKind::SubstNearOne, lo, hi});
    }
    lo = w_tilde;
    while (lo < 0.5) {
        hi = std::min(0.5, 2.0 * lo);
        panels.push_back({PanelKind::WBand, lo, hi});
        lo = hi;
    }

    double crude_total = 0.0;
    for (Panel& p : panels) {
        p.crude = p.kind == PanelKind::SubstNearOne ? gauss_panel(f_subst, p.a, p.b)
                                                    : gauss_panel(f_wband, p.a, p.b);
        crude_total += std::abs(p.crude);
    }

    double t_hi = 0.5;
    int negligible = 0;
    for (int j = 0; j < 400 && negligible < 3; ++j) {
        const double t_lo = 0.5 * t_hi;
        Panel p{PanelKind::TBand, t_lo, t_hi, gauss_panel(f_tband, t_lo, t_hi)};
        panels.push_back(p);
        crude_total += std::abs(p.crude);
        if (std::abs(p.crude) <= 1e-18 * crude_total)
            ++negligible;
        else
            negligible = 0;
        t_hi = t_lo;
    }

    if (crude_total == 0.0) return 0.0;

    double total = 0.0;
    bool all_converged = true;
    const double floor_share = 0.25 / static_cast<double>(panels.size());
    for (const Panel& p : panels) {
        const double share = std::max(std::abs(p.crude) / crude_total, floor_share);
        const double tol = rel_tol * crude_total * share;
        bool converged = true;
        switch (p.kind) {
            case PanelKind::SubstNearOne:
                total += integrate_to_abs(f_subst, p.a, p.b, tol, converged);
                break;
            case PanelKind::WBand:
                total += integrate_to_abs(f_wband, p.a, p.b, tol, converged);
                break;
            case PanelKind::TBand:
                total += integrate_to_abs(f_tband, p.a, p.b, tol, converged);
                break;
        }
        all_converged = all_converged && converged;
    }
    if (!all_converged)
        raise(ErrorKind::Accuracy,
              "quadrature did not reach the requested tolerance; estimate " +
                  std::to_string(total));
    return total;
}

// Continuous-part mass of the t-interval [1-w_hi, 1-w_lo], arguments in the
// w coordinate with 0 <= w_lo < w_hi <= 1.
double continuous_interval_mass(const Measure& mu, double w_lo, double w_hi) {
    if (!mu.has_continuous_part() || !(w_hi > w_lo)) return 0.0;
    if (mu.jacobi_gamma()) {
        const double gamma = *mu.jacobi_gamma();
        const double hi = std::exp(gamma * std::log(w_hi));
        const double lo = w_lo > 0.0 ? std::exp(gamma * std::log(w_lo)) : 0.0;
        return (hi - lo) / gamma;
    }
    const double eta = mu.singularity_exponent();
    double mass = 0.0;
    bool converged = true;
    const double split = 0.25;
    if (w_hi > split) {
        // Away from t=1 the density is evaluated directly in t.
        const double t_lo = 1.0 - w_hi;
        const double t_hi = 1.0 - std::max(w_lo, split);
        const auto f = [&](double t) { return mu.density_at(t); };
        const double crude = std::abs(gauss_panel(f, t_lo, t_hi));
        mass += integrate_to_abs(f, t_lo, t_hi, 1e-14 + 1e-11 * crude, converged);
    }
    const double w_cap = std::min(w_hi, split);
    if (w_lo < w_cap) {
        // Near t=1, substitute w = s^{1/eta} so the modeled singularity
        // integrates exactly: integral of reg(w) w^{eta-1} dw = (1/eta)
        // integral of reg(s^{1/eta}) ds.
        const double s_lo = w_lo > 0.0 ? std::exp(eta * std::log(w_lo)) : 0.0;
        const double s_hi = std::exp(eta * std::log(w_cap));
        const auto f = [&](double s) {
            const double w = std::exp(std::log(s) / eta);
            return mu.regular_density_near_one(w) / eta;
        };
        const double crude = std::abs(gauss_panel(f, s_lo, s_hi));
        mass += integrate_to_abs(f, s_lo, s_hi, 1e-14 + 1e-11 * crude, converged);
    }
    if (!converged)
        raise(ErrorKind::Accuracy, "interval mass quadrature did not converge; estimate " +
                                       std::to_string(mass));
    return mass;
}

double atom_moment(const Measure& mu, double s) {
    double total = 0.0;
    for (const auto& a : mu.atoms()) total += a.mass * std::pow(a.location, s);
    return total;
}

}  // namespace

double moment(const Measure& mu, double s) {
    if (!(s >= 0.0)) raise(ErrorKind::Domain, "moment: s must be nonnegative");
    double total = atom_moment(mu, s);
    if (mu.jacobi_gamma()) {
        total += std::exp(lbeta(s + 1.0, *mu.jacobi_gamma()));
    } else if (mu.has_continuous_part()) {
        DualIntegrand g{[s](double t) { return std::exp(s * std::log(t)); },
                        [s](double w) { return std::exp(s * std::log1p(-w)); }};
        total += integrate_continuous(mu, g, std::max(s, 1.0), 1e-11);
    }
    return total;
}

double moment_quadrature(const Measure& mu, double s) {
    if (!(s >= 0.0)) raise(ErrorKind::Domain, "moment: s must be nonnegative");
    double total = atom_moment(mu, s);
    if (mu.has_continuous_part()) {
        DualIntegrand g{[s](double t) { return std::exp(s * std::log(t)); },
                        [s](double w) { return std::exp(s * std::log1p(-w)); }};
        total += integrate_continuous(mu, g, std::max(s, 1.0), 1e-11);
    }
    return total;
}

double tail_mass(const Measure& mu, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) raise(ErrorKind::Domain, "tail_mass: eps outside [0,1]");
    double total = continuous_interval_mass(mu, 0.0, eps);
    for (const auto& a : mu.atoms())
        if (a.location >= 1.0 - eps) total += a.mass;
    return total;
}

double lp_norm(const MuntzPolynomial& f, double p, const Measure& mu) {
    if (!(p > 0.0)) raise(ErrorKind::Domain, "lp_norm: p must be positive");
    if (f.is_zero()) return 0.0;
    double total = 0.0;
    for (const auto& a : mu.atoms())
        total += a.mass * std::pow(std::abs(f.evaluate(a.location)), p);
    if (mu.has_continuous_part()) {
        DualIntegrand g{
            [&f, p](double t) { return std::pow(std::abs(f.evaluate(t)), p); },
            [&f, p](double w) { return std::pow(std::abs(f.evaluate_one_minus(w)), p); }};
        total += integrate_continuous(mu, g, p * f.max_exponent(), 1e-10);
    }
    return std::pow(total, 1.0 / p);
}

namespace {

// One superlevel crossing, stored in the w coordinate (w = 1-t), plus the
// state (inside/outside the superlevel set) to its right in t.
struct Crossing {
    double w;
    bool enters;
};

double abs_at_w(const MuntzPolynomial& f, double w) { return std::abs(f.evaluate_one_minus(w)); }
double abs_at_t(const MuntzPolynomial& f, double t) { return std::abs(f.evaluate(t)); }

// Bisects a sign change of |f|-level inside a log-coordinate bracket.
// coord_is_w selects the representation; returns the crossing as a w value.
double refine_crossing_log(const MuntzPolynomial& f, double level, double lo, double hi,
                           bool coord_is_w) {
    const auto above = [&](double u) {
        const double x = std::exp(u);
        return (coord_is_w ? abs_at_w(f, x) : abs_at_t(f, x)) > level;
    };
    const bool side_lo = above(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (above(mid) == side_lo)
            lo = mid;
        else
            hi = mid;
    }
    const double x = std::exp(0.5 * (lo + hi));
    return coord_is_w ? x : 1.0 - x;
}

}  // namespace

DistributionScanner::DistributionScanner(MuntzPolynomial f, Measure mu)
    : f_(std::move(f)), mu_(std::move(mu)) {
    if (f_.is_zero() || !mu_.has_continuous_part()) return;
    // Dense scan ordered by t: a log grid in t over [1e-16, 1/2], then a log
    // grid in w from 1/2 down to the boundary layer, then the endpoint t=1.
    constexpr std::size_t kHalfGrid = 2048;
    w_min_ = std::min(1e-16, 1e-3 / f_.max_exponent());
    probes_.reserve(2 * kHalfGrid - 1);
    const double lt_lo = std::log(1e-16), lt_hi = std::log(0.5);
    for (std::size_t i = 0; i < kHalfGrid; ++i) {
        const double u = lt_lo + (lt_hi - lt_lo) * static_cast<double>(i) / (kHalfGrid - 1);
        probes_.push_back({u, false, abs_at_t(f_, std::exp(u))});
    }
    const double lw_hi = std::log(0.5), lw_lo = std::log(w_min_);
    for (std::size_t i = 1; i < kHalfGrid; ++i) {
        const double u = lw_hi + (lw_lo - lw_hi) * static_cast<double>(i) / (kHalfGrid - 1);
        probes_.push_back({u, true, abs_at_w(f_, std::exp(u))});
    }
    abs_at_one_ = std::abs(f_.coefficient_sum());
}

double DistributionScanner::mass_above(double level) const {
    if (!(level > 0.0)) raise(ErrorKind::Domain, "distribution: level must be positive");
    double total = 0.0;
    for (const auto& a : mu_.atoms())
        if (std::abs(f_.evaluate(a.location)) > level) total += a.mass;
    if (probes_.empty()) return total;

    std::vector<Crossing> crossings;
    // The set never contains a neighborhood of t=0, so the initial state is
    // outside; a first probe already above level opens the set there.
    bool state = false;
    if (probes_.front().abs_value > level) {
        crossings.push_back({1.0 - std::exp(probes_.front().log_coord), true});
        state = true;
    }
    for (std::size_t i = 1; i < probes_.size(); ++i) {
        const Probe& a = probes_[i - 1];
        const Probe& b = probes_[i];
        const bool above_a = a.abs_value > level;
        const bool above_b = b.abs_value > level;
        if (above_a == above_b) continue;
        double w_cross;
        if (a.coord_is_w == b.coord_is_w) {
            const double lo = std::min(a.log_coord, b.log_coord);
            const double hi = std::max(a.log_coord, b.log_coord);
            w_cross = refine_crossing_log(f_, level, lo, hi, a.coord_is_w);
        } else {
            // Bracket straddles the representation switch at t = 1/2; both
            // endpoints map into the w coordinate.
            w_cross =
                refine_crossing_log(f_, level, b.log_coord, std::log(0.5), true);
        }
        crossings.push_back({w_cross, above_b});
        state = above_b;
    }
    // Bracket between the last probe (w = w_min) and the endpoint t=1.
    const bool above_at_one = abs_at_one_ > level;
    if (above_at_one != state) {
        double lo = 0.0, hi = w_min_;
        const auto above = [&](double w) { return abs_at_w(f_, w) > level; };
        const bool side_hi = above(hi);
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (above(mid) == side_hi)
                hi = mid;
            else
                lo = mid;
        }
        crossings.push_back({0.5 * (lo + hi), above_at_one});
    }

    // Walk crossings in t order (descending w) accumulating the open spans.
    double open_w = -1.0;
    for (const Crossing& c : crossings) {
        if (c.enters) {
            open_w = c.w;
        } else if (open_w >= 0.0) {
            total += continuous_interval_mass(mu_, c.w, open_w);
            open_w = -1.0;
        }
    }
    if (open_w >= 0.0) total += continuous_interval_mass(mu_, 0.0, open_w);
    return total;
}

double distribution(const MuntzPolynomial& f, const Measure& mu, double level) {
    return DistributionScanner(f, mu).mass_above(level);
}

MxReport check_Mx_gamma(const Measure& mu, double gamma, std::vector<double> eps_grid) {
    if (!(gamma > 0.0)) raise(ErrorKind::Domain, "check_Mx_gamma: gamma must be positive");
    if (eps_grid.empty())
        for (int j = 1; j <= 30; ++j) eps_grid.push_back(std::ldexp(1.0, -j));
    for (double e : eps_grid)
        if (!(e > 0.0 && e < 1.0))
            raise(ErrorKind::Domain, "check_Mx_gamma: eps values must lie in (0,1)");
    std::sort(eps_grid.begin(), eps_grid.end());

    MxReport report;
    report.eps = eps_grid;
    report.ratio.reserve(eps_grid.size());
    std::vector<double> log_inv_eps, log_ratio;
    for (double e : eps_grid) {
        const double r = tail_mass(mu, e) / std::exp(gamma * std::log(e));
        report.ratio.push_back(r);
        report.constant = std::max(report.constant, r);
        log_inv_eps.push_back(-std::log(e));
        log_ratio.push_back(std::log(std::max(r, 1e-300)));
    }

    bool finite = std::isfinite(report.constant);
    // Stability at the sharp end: the two smallest eps must give ratios
    // within a factor 10 of each other.
    bool stable_pair = true;
    if (eps_grid.size() >= 2) {
        const double r0 = std::max(report.ratio[0], 1e-300);
        const double r1 = std::max(report.ratio[1], 1e-300);
        stable_pair = std::max(r0 / r1, r1 / r0) < 10.0;
    }
    // Flatness across the grid: a drifting ratio (any power growth in 1/eps)
    // means the comparison fails even when single steps look tame.
    const LineFit fit = fit_line(log_inv_eps.data(), log_ratio.data(), log_inv_eps.size());
    const bool flat = fit.slope <= 0.02;
    report.verdict = finite && stable_pair && flat;
    return report;
}

namespace {

// True when the last few values keep growing by a large total factor,
// reading the finite prefix as evidence of divergence.
bool trending_up(const std::vector<double>& v) {
    const std::size_t window = std::min<std::size_t>(5, v.size());
    if (window < 2) return false;
    const std::size_t start = v.size() - window;
    for (std::size_t i = start + 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return v[v.size() - 1] > 1.5 * v[start];
}

bool tending_to_zero(const std::vector<double>& v) {
    const std::size_t window = std::min<std::size_t>(5, v.size());
    if (window < 2) return false;
    const std::size_t start = v.size() - window;
    for (std::size_t i = start + 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return false;
    const double peak = *std::max_element(v.begin(), v.end());
    return v.back() <= 0.5 * v[start] && v.back() <= 0.1 * peak;
}

// Eventual geometric decay: the trailing consecutive ratios all below 0.95.
bool tail_decays(const std::vector<double>& v, std::size_t from) {
    if (v.size() < from + 2) return false;
    const std::size_t window = std::min<std::size_t>(5, v.size() - from - 1);
    for (std::size_t i = v.size() - window; i < v.size(); ++i) {
        if (v[i - 1] <= 1e-300 && v[i] <= 1e-300) continue;
        if (!(v[i] < 0.95 * v[i - 1])) return false;
    }
    return true;
}

bool all_decay(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i - 1] <= 1e-300 && v[i] <= 1e-300) continue;
        if (!(v[i] < 0.95 * v[i - 1])) return false;
    }
    return v.size() >= 2;
}

bool essentially_zero(const std::vector<double>& v) {
    for (double x : v)
        if (x > 1e-300) return false;
    return true;
}

}  // namespace

MomentReport check_B_condition(const Measure& mu, double p, const BlockPartition& part,
                               double alpha, double beta) {
    if (!(p > 0.0)) raise(ErrorKind::Domain, "check_B_condition: p must be positive");
    if (!(alpha > 0.0)) raise(ErrorKind::Domain, "check_B_condition: alpha must be positive");
    if (!(beta >= 1.0)) raise(ErrorKind::Domain, "check_B_condition: beta must be at least 1");
    MomentReport report;
    const double ab = alpha * beta;
    for (std::size_t k = 0; k < part.block_count(); ++k) {
        const double lam = part.block_endpoint(k);
        const double m = moment(mu, p * lam);
        const double v = m > 0.0 ? std::exp(ab * std::log(lam) + std::log(m)) : 0.0;
        report.block_index.push_back(k);
        report.endpoint.push_back(lam);
        report.value.push_back(v);
        report.aggregate = std::max(report.aggregate, v);
    }
    report.verdict_all_k = !trending_up(report.value);
    std::vector<double> tail(report.value.begin() +
                                 static_cast<std::ptrdiff_t>(
                                     std::min(part.onset_index(), report.value.size())),
                             report.value.end());
    report.verdict_tail = !trending_up(tail);
    report.verdict = report.verdict_all_k;
    report.compact = tending_to_zero(report.value);
    return report;
}

MomentReport check_A_condition(const Measure& mu, double p, const BlockPartition& part,
                               double alpha, double beta) {
    if (!(p > 0.0)) raise(ErrorKind::Domain, "check_A_condition: p must be positive");
    if (!(alpha > 0.0)) raise(ErrorKind::Domain, "check_A_condition: alpha must be positive");
    if (!(beta > 0.0 && beta < 1.0))
        raise(ErrorKind::Domain, "check_A_condition: beta must lie in (0,1)");
    MomentReport report;
    const double ab = alpha * beta;
    for (std::size_t k = 0; k < part.block_count(); ++k) {
        const double lam = part.block_endpoint(k);
        const double m = moment(mu, p * lam);
        const double term =
            m > 0.0 ? std::exp((ab * std::log(lam) + std::log(m)) / (1.0 - beta)) : 0.0;
        report.block_index.push_back(k);
        report.endpoint.push_back(lam);
        report.value.push_back(term);
        report.aggregate += term;
    }
    const bool zero = essentially_zero(report.value);
    report.verdict = zero || tail_decays(report.value, 0);
    report.verdict_all_k = zero || all_decay(report.value);
    report.verdict_tail = zero || tail_decays(report.value, part.onset_index());
    return report;
}

}  // namespace muntzlab
