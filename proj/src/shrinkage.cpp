#include "gsw/shrinkage.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "gsw/errors.hpp"

namespace gsw {

namespace {

bool finite_scalar(double x) { return std::isfinite(x); }
bool finite_scalar(const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

double abs_scalar(double x) { return std::abs(x); }
double abs_scalar(const cplx& x) { return std::abs(x); }

} // namespace

NoiseModel::NoiseModel(double sigma, Field field) : sigmas_{sigma}, field_(field) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("noise sigma must be positive and finite");
    }
}

NoiseModel::NoiseModel(std::vector<double> sigmas, Field field)
    : sigmas_(std::move(sigmas)), field_(field) {
    if (sigmas_.empty()) {
        throw std::invalid_argument("noise model requires at least one sigma");
    }
    for (double s : sigmas_) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("all noise sigmas must be positive and finite");
        }
    }
}

void NoiseModel::check_length(std::size_t n) const {
    if (sigmas_.size() != 1 && sigmas_.size() != n) {
        throw std::invalid_argument("noise model length " + std::to_string(sigmas_.size()) +
                                    " does not match vector length " + std::to_string(n));
    }
}

ShrinkageRule ShrinkageRule::st(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("soft threshold tau must be positive and finite");
    }
    return {Kind::ST, tau};
}

std::string ShrinkageRule::name() const {
    const auto fmt = [](double v) {
        // locale-independent, short but unambiguous
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 8);
        return std::string(buf, res.ptr);
    };
    switch (kind) {
        case Kind::LS: return "LS";
        case Kind::GSW: return "GSW(" + fmt(param) + ")";
        case Kind::SW: return "SW";
        case Kind::ST: return "ST(" + fmt(param) + ")";
        case Kind::JS: return "JS";
        case Kind::OracleMMSE: return "OracleMMSE";
    }
    return "?";
}

double gsw_gain(double r, Threshold lambda) noexcept {
    if (!(r > lambda.value())) return 0.0; // boundary |z| = lambda belongs to the kill zone
    const double u = 2.0 / r;
    return 0.5 * (1.0 + std::sqrt((1.0 - u) * (1.0 + u)));
}

template <typename T>
std::vector<T> denoise(const ShrinkageRule& rule, std::span<const T> y, const NoiseModel& noise,
                       std::span<const T> truth) {
    const std::size_t n = y.size();
    if (n == 0) {
        throw std::invalid_argument("observation vector must have at least one component");
    }
    if (noise.field() != field_of_v<T>) {
        throw std::invalid_argument("field tag mismatch between observation and noise model");
    }
    noise.check_length(n);
    for (const T& v : y) {
        if (!finite_scalar(v)) {
            throw std::invalid_argument("observation vector contains a non-finite value");
        }
    }
    if (rule.needs_truth()) {
        if (truth.size() != n) {
            throw std::invalid_argument("OracleMMSE requires a ground-truth vector of equal length");
        }
    } else if (!truth.empty()) {
        throw std::invalid_argument("ground truth may only be supplied with OracleMMSE");
    }

    std::vector<T> out(n);
    switch (rule.kind) {
        case ShrinkageRule::Kind::LS:
            out.assign(y.begin(), y.end());
            break;
        case ShrinkageRule::Kind::GSW:
        case ShrinkageRule::Kind::SW: {
            const Threshold lambda{rule.param};
            for (std::size_t i = 0; i < n; ++i) {
                const double r = abs_scalar(y[i]) / noise.sigma(i);
                out[i] = y[i] * gsw_gain(r, lambda);
            }
            break;
        }
        case ShrinkageRule::Kind::ST: {
            for (std::size_t i = 0; i < n; ++i) {
                const double a = abs_scalar(y[i]);
                const double cut = rule.param * noise.sigma(i);
                // (y/|y|) max(|y| - tau sigma, 0), written gain-form; y = 0 maps to 0.
                out[i] = (a > cut) ? y[i] * (1.0 - cut / a) : T{};
            }
            break;
        }
        case ShrinkageRule::Kind::JS: {
            if (!noise.homoscedastic()) {
                throw unsupported_config("James-Stein requires homoscedastic noise");
            }
            double energy = 0.0;
            for (const T& v : y) energy += detail::abs2(v);
            const double c =
                std::max<double>(field_of_v<T> == Field::Complex ? static_cast<double>(n) - 1.0
                                                                 : static_cast<double>(n) - 2.0,
                                 0.0);
            const double s2 = noise.sigma(0) * noise.sigma(0);
            const double gain = energy > 0.0 ? std::max(1.0 - c * s2 / energy, 0.0) : 0.0;
            for (std::size_t i = 0; i < n; ++i) out[i] = y[i] * gain;
            break;
        }
        case ShrinkageRule::Kind::OracleMMSE: {
            for (std::size_t i = 0; i < n; ++i) {
                const double s2 = noise.sigma(i) * noise.sigma(i);
                const double s = detail::abs2(truth[i]) / s2;
                out[i] = y[i] * (s / (1.0 + s));
            }
            break;
        }
    }
    return out;
}

template <typename T>
std::vector<T> transform_denoise(const ShrinkageRule& rule, std::span<const T> y,
                                 const NoiseModel& noise, const Matrix<T>& transform,
                                 std::span<const T> truth) {
    if (transform.size() != y.size()) {
        throw std::invalid_argument("transform dimension does not match vector length");
    }
    if (!noise.homoscedastic()) {
        throw unsupported_config("transform-domain denoising requires homoscedastic noise");
    }
    if (!transform.is_unitary(1e-10)) {
        throw std::invalid_argument("transform matrix is not unitary to tolerance 1e-10");
    }
    const std::vector<T> w = transform.adjoint_times(std::vector<T>(y.begin(), y.end()));
    std::vector<T> truth_w;
    std::span<const T> truth_span{};
    if (rule.needs_truth()) {
        if (truth.size() != y.size()) {
            throw std::invalid_argument("OracleMMSE requires a ground-truth vector of equal length");
        }
        truth_w = transform.adjoint_times(std::vector<T>(truth.begin(), truth.end()));
        truth_span = truth_w;
    } else if (!truth.empty()) {
        throw std::invalid_argument("ground truth may only be supplied with OracleMMSE");
    }
    const std::vector<T> est = denoise<T>(rule, w, noise, truth_span);
    return transform.times(est);
}

template std::vector<double> denoise<double>(const ShrinkageRule&, std::span<const double>,
                                             const NoiseModel&, std::span<const double>);
template std::vector<cplx> denoise<cplx>(const ShrinkageRule&, std::span<const cplx>,
                                         const NoiseModel&, std::span<const cplx>);
template std::vector<double> transform_denoise<double>(const ShrinkageRule&,
                                                       std::span<const double>, const NoiseModel&,
                                                       const Matrix<double>&,
                                                       std::span<const double>);
template std::vector<cplx> transform_denoise<cplx>(const ShrinkageRule&, std::span<const cplx>,
                                                   const NoiseModel&, const Matrix<cplx>&,
                                                   std::span<const cplx>);

} // namespace gsw
