#pragma once

#include <array>
#include <cmath>
#include <cstdlib>

namespace muntzlab {

// 32-point Gauss-Legendre rule on [-1,1]; nodes computed once by Newton
// iteration on the Legendre recurrence.
struct GaussRule {
    std::array<double, 32> node;
    std::array<double, 32> weight;
};
const GaussRule& gauss32();

template <class F>
double gauss_panel(const F& f, double a, double b) {
    const GaussRule& rule = gauss32();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 32; ++i) sum += rule.weight[i] * f(mid + half * rule.node[i]);
    return half * sum;
}

namespace detail {

template <class F>
double adaptive_rec(const F& f, double a, double b, double whole, double abs_tol, int depth,
                    int max_depth, bool& converged) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_panel(f, a, mid);
    const double right = gauss_panel(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= abs_tol) return left + right;
    if (depth >= max_depth || mid <= a || mid >= b) {
        converged = false;
        return left + right;
    }
    return adaptive_rec(f, a, mid, left, 0.5 * abs_tol, depth + 1, max_depth, converged) +
           adaptive_rec(f, mid, b, right, 0.5 * abs_tol, depth + 1, max_depth, converged);
}

}  // namespace detail

// Adaptive bisection with the split-vs-whole error estimate. Returns the
// integral; sets converged=false if the budget was not met before max_depth.
template <class F>
double integrate_to_abs(const F& f, double a, double b, double abs_tol, bool& converged,
                        int max_depth = 48) {
    if (!(b > a)) return 0.0;
    const double whole = gauss_panel(f, a, b);
    return detail::adaptive_rec(f, a, b, whole, abs_tol, 0, max_depth, converged);
}

// Golden-section maximization of f on [a,b]; tol is the absolute bracket
// width in the search coordinate. Returns the best abscissa found.
template <class F>
double golden_max(const F& f, double a, double b, double tol, int max_iter = 300) {
    constexpr double kInvPhi = 0.61803398874989484820;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

// Least-squares fit of y = slope*x + intercept; also reports R^2.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    double slope_stderr = 0.0;
};
LineFit fit_line(const double* x, const double* y, std::size_t n);

}  // namespace muntzlab
