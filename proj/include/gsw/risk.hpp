#pragma once

#include <span>
#include <vector>

#include "gsw/field.hpp"
#include "gsw/specfun.hpp"

namespace gsw {

/// One evaluation point of the analytical MSE predictors: normalized signal
/// magnitude |eta| = |x| / sigma, the noise level, the threshold and the field.
struct RiskPoint {
    double eta_abs;
    double sigma;
    Threshold lambda;
    Field field = Field::Complex;
};

enum class RiskRegime { HighSNR, LowSNR, Oracle, LS };

struct RiskCurvePoint {
    double grid_value; // eta_abs or sigma, whichever the caller sweeps
    double mse;
    RiskRegime regime;
};

using RiskCurve = std::vector<RiskCurvePoint>;

/// High-SNR expansion of the per-component GSW MSE:
/// (1 - p) |x|^2 + p sigma^2 with p the threshold exceedance probability.
/// Intended for |eta| >> lambda; no hard cutoff is enforced, and regime
/// selection is the caller's responsibility.
double high_snr_mse(const RiskPoint& p);

/// Low-SNR expansion: |x|^2 + rho(lambda) sigma^2. Intended for |eta| << 1.
double low_snr_mse(const RiskPoint& p, const QuadratureSpec& quad = {});

/// Exact per-component MSE of the oracle Wiener gain s/(1+s):
/// sigma^2 s / (1 + s) with s = eta^2.
double oracle_mmse_risk(const RiskPoint& p);

/// Per-component MSE of the LS estimator: sigma^2.
double ls_risk(double sigma);

/// Sum of per-component MSEs (vector-level risk).
double aggregate_vector_risk(std::span<const double> per_component);

} // namespace gsw
