#pragma once

#include <functional>
#include <stdexcept>

namespace gsw {

/// Controls adaptive quadrature (absolute/relative target and panel budget).
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 64; // maximum bisection depth per panel

    void validate() const;
};

/// Shrinkage threshold lambda, restricted to [2, inf). The lower bound keeps
/// 1 - 4/r^2 nonnegative on the pass region r > lambda and sqrt(lambda^2 - 4)
/// real in the closed-form risk constants.
class Threshold {
  public:
    explicit Threshold(double lambda);
    double value() const noexcept { return lambda_; }

  private:
    double lambda_;
};

/// Standard normal density phi(x) = exp(-x^2/2) / sqrt(2 pi).
double gaussian_pdf(double x);

/// Upper tail Q(x) = integral of phi over [x, inf); Q(x) + Q(-x) = 1.
double gaussian_q(double x);

/// First-order Marcum Q-function Q_1(a, b): survival function of a Rician
/// radius with noncentrality a, evaluated at b. Computed as the Poisson
/// mixture of chi-square tails with truncation error bounded by the
/// remaining Poisson mass; throws numerical_error if the 1e5-term cap is
/// reached before the bound drops below tolerance.
double marcum_q1(double a, double b);

/// p = Pr(|eta + xi| > lambda) for standard complex normal xi,
/// i.e. Q_1(sqrt(2) |eta|, sqrt(2) lambda). At eta_abs = 0 this is
/// exp(-lambda^2).
double exceedance_prob_complex(double eta_abs, Threshold lambda);

/// Real-field analogue: p = Q(lambda - eta) + Q(lambda + eta).
double exceedance_prob_real(double eta, Threshold lambda);

/// Residual-variance constant of the GSW rule at zero SNR, complex field:
/// rho(lambda) = ((lambda^2 - 1)/2) e^{-lambda^2}
///             + (1/2) * integral_{lambda^2}^{inf} sqrt(t^2 - 4t) e^{-t} dt.
/// The tail integral is evaluated under the substitution t = 4 + s^2, which
/// removes the square-root branch point at t = 4.
double rho_gsw_complex(Threshold lambda, const QuadratureSpec& quad = {});

/// Real-field counterpart, fully closed form:
/// (lambda + sqrt(lambda^2-4)) phi(lambda) + e^{-2} Q(sqrt(lambda^2-4)) - Q(lambda).
double rho_gsw_real(Threshold lambda);

/// Adaptive quadrature of f over [a, b]: 15-point Gauss-Legendre per panel,
/// error estimated by panel halving, recursive bisection down to
/// max_subdivisions. Throws numerical_error (with the achieved error
/// estimate) if the budget is exhausted before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& quad = {});

} // namespace gsw
