#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "muntzlab/exponents.hpp"
#include "muntzlab/muntz_poly.hpp"

namespace muntzlab {

// Positive Borel measure on [0,1]: an optional continuous part, either the
// one-parameter weight (1-x)^{gamma-1} dx or a caller-supplied density with a
// declared singularity exponent at x=1, plus finitely many atoms.
class Measure {
  public:
    struct Atom {
        double location;
        double mass;
    };

    static Measure zero();
    static Measure jacobi(double gamma);
    static Measure lebesgue() { return jacobi(1.0); }
    // density is integrated as density(t) dt; eta_hint declares the behavior
    // (1-t)^{eta_hint-1} near t=1 so quadrature can absorb the singularity.
    static Measure from_density(std::function<double(double)> density, double eta_hint = 1.0);
    static Measure atomic(std::vector<Atom> atoms);

    Measure with_atom(double location, double mass) const;

    bool has_continuous_part() const { return jacobi_gamma_.has_value() || bool(density_); }
    std::optional<double> jacobi_gamma() const { return jacobi_gamma_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    // Exponent eta in the (1-t)^{eta-1} model of the density near t=1.
    double singularity_exponent() const;
    // Continuous-part density at an interior point.
    double density_at(double t) const;
    // density(1-w) * w^{1-eta}, the factor left after removing the modeled
    // singularity; bounded near w=0 by assumption.
    double regular_density_near_one(double w) const;

  private:
    Measure() = default;
    std::optional<double> jacobi_gamma_;
    std::function<double(double)> density_;
    double eta_ = 1.0;
    std::vector<Atom> atoms_;
};

// Integral of t^s dmu. Jacobi continuous parts use the log-gamma closed form
// B(s+1, gamma); general densities are integrated adaptively.
double moment(const Measure& mu, double s);

// Same value forced through the quadrature engine even when a closed form
// exists; used to cross-check the two paths against each other.
double moment_quadrature(const Measure& mu, double s);

// mu([1-eps, 1]).
double tail_mass(const Measure& mu, double eps);

// (integral of |f|^p dmu)^{1/p}. The near-1 boundary layer of width ~1/lambda
// is resolved by an exact power substitution that also absorbs the weight
// singularity; the rest is covered by dyadic panels in t and in 1-t.
double lp_norm(const MuntzPolynomial& f, double p, const Measure& mu);

// mu({t : |f(t)| > level}); superlevel sets are located by a dense dual-log
// grid scan plus bisection of each sign change.
double distribution(const MuntzPolynomial& f, const Measure& mu, double level);

// Reusable form of the superlevel scan: the |f| grid is built once so many
// levels can be queried against the same polynomial cheaply.
class DistributionScanner {
  public:
    DistributionScanner(MuntzPolynomial f, Measure mu);
    // mu(|f| > level), level > 0.
    double mass_above(double level) const;

  private:
    struct Probe {
        double log_coord;
        bool coord_is_w;
        double abs_value;
    };
    MuntzPolynomial f_;
    Measure mu_;
    std::vector<Probe> probes_;
    double abs_at_one_ = 0.0;
    double w_min_ = 0.0;
};

struct MxReport {
    double constant = 0.0;  // max over the grid of mu([1-eps,1]) / eps^gamma
    bool verdict = false;
    std::vector<double> eps;
    std::vector<double> ratio;
};

// Checks mu([1-eps,1]) <= C eps^gamma on a grid (default eps = 2^-j, j=1..30).
// The verdict requires the ratio both stable at the two smallest eps and flat
// in the log-log fit across the grid.
MxReport check_Mx_gamma(const Measure& mu, double gamma, std::vector<double> eps_grid = {});

struct MomentReport {
    std::vector<std::size_t> block_index;
    std::vector<double> endpoint;  // lambda at the right edge of each block
    std::vector<double> value;     // sup-form term or series summand
    double aggregate = 0.0;        // max of values, or their partial sum
    bool verdict = false;          // trend criterion on the stored prefix
    bool verdict_all_k = false;    // criterion applied to every stored index
    bool verdict_tail = false;     // criterion applied from the onset block on
    bool compact = false;          // values tending to zero (sup form only)
};

// Boundedness check for lambda^{alpha*beta} * moment(mu, p*lambda) over block
// endpoints; verdict is a trend heuristic on the finite prefix.
MomentReport check_B_condition(const Measure& mu, double p, const BlockPartition& part,
                               double alpha, double beta);

// Summability check for lambda^{alpha*beta/(1-beta)} * moment^{1/(1-beta)}
// over block endpoints; aggregate is the partial sum.
MomentReport check_A_condition(const Measure& mu, double p, const BlockPartition& part,
                               double alpha, double beta);

}  // namespace muntzlab
