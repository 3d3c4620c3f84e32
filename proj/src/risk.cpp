#include "gsw/risk.hpp"

#include <cmath>
#include <stdexcept>

namespace gsw {

namespace {

void validate(const RiskPoint& p) {
    if (!std::isfinite(p.eta_abs) || p.eta_abs < 0.0) {
        throw std::invalid_argument("risk point requires finite eta_abs >= 0");
    }
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) {
        throw std::invalid_argument("risk point requires positive finite sigma");
    }
}

} // namespace

double high_snr_mse(const RiskPoint& p) {
    validate(p);
    const double prob = p.field == Field::Complex
                            ? exceedance_prob_complex(p.eta_abs, p.lambda)
                            : exceedance_prob_real(p.eta_abs, p.lambda);
    const double x2 = p.eta_abs * p.eta_abs * p.sigma * p.sigma;
    return (1.0 - prob) * x2 + prob * p.sigma * p.sigma;
}

double low_snr_mse(const RiskPoint& p, const QuadratureSpec& quad) {
    validate(p);
    const double rho =
        p.field == Field::Complex ? rho_gsw_complex(p.lambda, quad) : rho_gsw_real(p.lambda);
    const double x2 = p.eta_abs * p.eta_abs * p.sigma * p.sigma;
    return x2 + rho * p.sigma * p.sigma;
}

double oracle_mmse_risk(const RiskPoint& p) {
    validate(p);
    const double s = p.eta_abs * p.eta_abs;
    if (std::isinf(s)) return p.sigma * p.sigma;
    return p.sigma * p.sigma * (s / (1.0 + s));
}

double ls_risk(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("ls_risk requires positive finite sigma");
    }
    return sigma * sigma;
}

double aggregate_vector_risk(std::span<const double> per_component) {
    double total = 0.0;
    for (double v : per_component) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("per-component MSE values must be nonnegative");
        }
        total += v;
    }
    return total;
}

} // namespace gsw
