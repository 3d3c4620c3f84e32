#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gsw/field.hpp"
#include "gsw/matrix.hpp"
#include "gsw/specfun.hpp"

namespace gsw {

/// Per-component noise standard deviations: one scalar sigma (homoscedastic)
/// or a length-N vector (heteroscedastic diagonal), plus the field tag.
class NoiseModel {
  public:
    NoiseModel(double sigma, Field field);
    NoiseModel(std::vector<double> sigmas, Field field);

    bool homoscedastic() const noexcept { return sigmas_.size() == 1; }
    std::size_t size() const noexcept { return sigmas_.size(); }
    Field field() const noexcept { return field_; }

    double sigma(std::size_t n) const noexcept {
        return sigmas_.size() == 1 ? sigmas_[0] : sigmas_[n];
    }

    /// Throws if the model cannot be applied to a vector of length n.
    void check_length(std::size_t n) const;

  private:
    std::vector<double> sigmas_;
    Field field_;
};

/// A named, parameterized denoising rule.
///   LS          : identity (least squares).
///   GSW(lambda) : nonlinear shrinkage with tunable threshold lambda >= 2.
///   SW          : the original self-Wiener rule; identical to GSW(2).
///   ST(tau)     : soft thresholding at tau in normalized (y/sigma) units.
///   JS          : positive-part James-Stein; homoscedastic noise only.
///   OracleMMSE  : per-component Wiener gain s/(1+s) from the true signal.
struct ShrinkageRule {
    enum class Kind { LS, GSW, SW, ST, JS, OracleMMSE };

    Kind kind = Kind::LS;
    double param = 0.0; // lambda for GSW/SW, tau for ST, unused otherwise

    static ShrinkageRule ls() { return {Kind::LS, 0.0}; }
    static ShrinkageRule gsw(Threshold lambda) { return {Kind::GSW, lambda.value()}; }
    static ShrinkageRule sw() { return {Kind::SW, 2.0}; }
    static ShrinkageRule st(double tau);
    static ShrinkageRule js() { return {Kind::JS, 0.0}; }
    static ShrinkageRule oracle_mmse() { return {Kind::OracleMMSE, 0.0}; }

    bool needs_truth() const noexcept { return kind == Kind::OracleMMSE; }

    /// Canonical name, parameters included: "GSW(4.09)", "ST(4.09)", "LS", ...
    std::string name() const;
};

/// GSW gain g_lambda(r): 0 for r <= lambda, else (1 + sqrt(1 - 4/r^2)) / 2.
/// This form is algebraically equal to 2 r^{-2} / (1 - sqrt(1 - 4 r^{-2}))
/// for r > 2 but does not cancel catastrophically at large r.
double gsw_gain(double r, Threshold lambda) noexcept;

/// Apply a rule componentwise. truth must be supplied iff the rule is
/// OracleMMSE. Throws unsupported_config for JS with heteroscedastic noise,
/// std::invalid_argument for field/length/finiteness violations.
template <typename T>
std::vector<T> denoise(const ShrinkageRule& rule, std::span<const T> y, const NoiseModel& noise,
                       std::span<const T> truth = {});

/// Denoise in the coefficient domain of a unitary transform:
/// returns U * denoise(rule, U^H y). Requires homoscedastic noise (the noise
/// law is unitarily invariant only then) and U unitary to 1e-10.
template <typename T>
std::vector<T> transform_denoise(const ShrinkageRule& rule, std::span<const T> y,
                                 const NoiseModel& noise, const Matrix<T>& transform,
                                 std::span<const T> truth = {});

} // namespace gsw
