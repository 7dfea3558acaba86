#pragma once

namespace muntzlab {

// Natural log of the Gamma function for x > 0.
double lgamma_pos(double x);

// Stirling-series tail S(x) with ln Gamma(x) = (x-1/2)ln x - x + ln(2*pi)/2 + S(x).
// Accurate to full double precision for x >= 16.
double stirling_tail(double x);

// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), computed so that the
// large-argument cancellation between lgamma(a) and lgamma(a+b) never happens
// explicitly. Arguments can be as large as ~1e19 (exponents up to 2^60 times
// small p) without losing relative accuracy in exp(lbeta).
double lbeta(double a, double b);

// B(a,b) = exp(lbeta(a,b)).
double beta_function(double a, double b);

// || t^lambda ||_{L^p((1-x)^{gamma-1} dx)} = B(p*lambda + 1, gamma)^{1/p}.
double monomial_lp_norm(double lambda, double p, double gamma);

}  // namespace muntzlab
