#include "gsw/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsw {

double LambdaRule::lambda_for(std::size_t n) const {
    if (kind == Kind::Fixed) return value;
    return value * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

void ExperimentConfig::validate() const {
    if (N < 1) throw std::invalid_argument("config: N must be >= 1");
    if (K < 1 || K > N) throw std::invalid_argument("config: K must satisfy 1 <= K <= N");
    if (!(nonzero_magnitude > 0.0) || !std::isfinite(nonzero_magnitude)) {
        throw std::invalid_argument("config: nonzero_magnitude must be positive and finite");
    }
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (sigma_grid.empty()) throw std::invalid_argument("config: sigma_grid must be nonempty");
    for (double s : sigma_grid) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("config: sigma_grid entries must be positive and finite");
        }
    }
    if (sigma_grid.size() > 1) {
        const bool inc = sigma_grid[1] > sigma_grid[0];
        for (std::size_t i = 1; i < sigma_grid.size(); ++i) {
            const bool step_inc = sigma_grid[i] > sigma_grid[i - 1];
            if (step_inc != inc || sigma_grid[i] == sigma_grid[i - 1]) {
                throw std::invalid_argument("config: sigma_grid must be strictly monotone");
            }
        }
    }
    if (rules.empty()) throw std::invalid_argument("config: rules must be nonempty");
    if (lambda_rule.kind == LambdaRule::Kind::UniversalScaled && !(lambda_rule.value > 0.0)) {
        throw std::invalid_argument("config: universal threshold factor must be positive");
    }
    if (phase_mode == PhaseMode::RandomPhase && field == Field::Real) {
        throw std::invalid_argument("config: random_phase requires the complex field");
    }
    (void)resolved_lambda(); // throws if the resulting lambda is < 2
}

void set_thread_count(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

namespace {

template <typename T>
T nonzero_value(const ExperimentConfig& cfg, RandomStream& stream);

template <>
double nonzero_value<double>(const ExperimentConfig& cfg, RandomStream&) {
    return cfg.nonzero_magnitude;
}

template <>
cplx nonzero_value<cplx>(const ExperimentConfig& cfg, RandomStream& stream) {
    if (cfg.phase_mode == PhaseMode::UnitReal) return {cfg.nonzero_magnitude, 0.0};
    const double th = 2.0 * M_PI * stream.next_unit();
    return cfg.nonzero_magnitude * cplx{std::cos(th), std::sin(th)};
}

template <typename T>
double sq_dist(const std::vector<T>& a, const std::vector<T>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += detail::abs2(a[i] - b[i]);
    return acc;
}

MseEstimate reduce_in_order(std::span<const double> errs) {
    MseEstimate est;
    est.trials = errs.size();
    double sum = 0.0;
    for (double e : errs) sum += e;
    est.mean = sum / static_cast<double>(errs.size());
    if (errs.size() >= 2) {
        double ss = 0.0;
        for (double e : errs) ss += (e - est.mean) * (e - est.mean);
        const double var = ss / static_cast<double>(errs.size() - 1);
        est.stderr_mean = std::sqrt(var / static_cast<double>(errs.size()));
    } else {
        est.stderr_mean = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

} // namespace

template <typename T>
std::vector<T> gen_sparse_signal(const ExperimentConfig& cfg, RandomStream& stream) {
    if (cfg.field != field_of_v<T>) {
        throw std::invalid_argument("gen_sparse_signal: field tag does not match scalar type");
    }
    if (cfg.phase_mode == PhaseMode::RandomPhase && field_of_v<T> == Field::Real) {
        throw std::invalid_argument("gen_sparse_signal: random_phase requires the complex field");
    }
    // Partial Fisher-Yates: first K slots of a uniformly shuffled index array.
    std::vector<std::uint32_t> idx(cfg.N);
    std::iota(idx.begin(), idx.end(), 0u);
    std::vector<T> x(cfg.N, T{});
    for (std::size_t i = 0; i < cfg.K; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(stream.next_below(cfg.N - i));
        std::swap(idx[i], idx[j]);
        x[idx[i]] = nonzero_value<T>(cfg, stream);
    }
    return x;
}

std::vector<double> sample_noise_real(std::size_t n, double sigma, RandomStream& stream) {
    std::vector<double> xi(n);
    for (auto& v : xi) v = sigma * stream.next_gaussian();
    return xi;
}

std::vector<cplx> sample_noise_complex(std::size_t n, double sigma, RandomStream& stream) {
    std::vector<cplx> xi(n);
    for (auto& v : xi) v = sigma * stream.next_cgaussian();
    return xi;
}

namespace {

template <typename T>
std::vector<T> add_noise(std::span<const T> x, double sigma, RandomStream& stream);

template <>
std::vector<double> add_noise<double>(std::span<const double> x, double sigma,
                                      RandomStream& stream) {
    std::vector<double> y(x.begin(), x.end());
    for (auto& v : y) v += sigma * stream.next_gaussian();
    return y;
}

template <>
std::vector<cplx> add_noise<cplx>(std::span<const cplx> x, double sigma, RandomStream& stream) {
    std::vector<cplx> y(x.begin(), x.end());
    for (auto& v : y) v += sigma * stream.next_cgaussian();
    return y;
}

template <typename T>
double mse_trial(const ShrinkageRule& rule, std::span<const T> x, double sigma,
                 RandomStream& stream) {
    const std::vector<T> y = add_noise<T>(x, sigma, stream);
    const NoiseModel noise{sigma, field_of_v<T>};
    const std::vector<T> xhat =
        denoise<T>(rule, y, noise, rule.needs_truth() ? x : std::span<const T>{});
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += detail::abs2(xhat[i] - x[i]);
    return acc;
}

} // namespace

template <typename T>
MseEstimate empirical_mse(const ShrinkageRule& rule, std::span<const T> x, double sigma,
                          std::size_t trials, std::uint64_t seed, std::uint64_t stream_base,
                          Execution exec) {
    if (trials < 1) throw std::invalid_argument("empirical_mse: trials must be >= 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("empirical_mse: sigma must be positive and finite");
    }
    std::vector<double> errs(trials);
    const auto body = [&](std::size_t t) {
        RandomStream stream(seed, stream_base + t);
        errs[t] = mse_trial<T>(rule, x, sigma, stream);
    };
    if (exec == Execution::Serial) {
        for (std::size_t t = 0; t < trials; ++t) body(t);
    } else {
        const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
        for (std::int64_t t = 0; t < n; ++t) body(static_cast<std::size_t>(t));
    }
    return reduce_in_order(errs);
}

SweepResult run_sweep(const ExperimentConfig& cfg, Execution exec) {
    cfg.validate();
    SweepResult result;
    result.config = cfg;

    const std::size_t n_rules = cfg.rules.size();
    const bool complex_field = cfg.field == Field::Complex;

    // fixed_signal mode draws one signal from a dedicated stream id, shared by
    // every trial at every grid point.
    std::vector<cplx> fixed_x_c;
    std::vector<double> fixed_x_r;
    if (cfg.fixed_signal) {
        RandomStream sig_stream(cfg.seed, std::numeric_limits<std::uint64_t>::max());
        if (complex_field) {
            fixed_x_c = gen_sparse_signal<cplx>(cfg, sig_stream);
        } else {
            fixed_x_r = gen_sparse_signal<double>(cfg, sig_stream);
        }
    }

    // One stream per (sigma point, trial); the signal and the noise for a trial
    // come from the same stream, and every rule sees the same realization.
    const auto run_point = [&](std::size_t point, double sigma, std::vector<double>& errs) {
        const std::uint64_t base = static_cast<std::uint64_t>(point) * cfg.trials;
        const auto trial = [&](std::size_t t) {
            RandomStream stream(cfg.seed, base + t);
            if (complex_field) {
                const std::vector<cplx> x =
                    cfg.fixed_signal ? fixed_x_c : gen_sparse_signal<cplx>(cfg, stream);
                const std::vector<cplx> y = add_noise<cplx>(x, sigma, stream);
                const NoiseModel noise{sigma, Field::Complex};
                for (std::size_t r = 0; r < n_rules; ++r) {
                    const auto& rule = cfg.rules[r];
                    const std::vector<cplx> xhat = denoise<cplx>(
                        rule, y, noise, rule.needs_truth() ? x : std::span<const cplx>{});
                    errs[r * cfg.trials + t] = sq_dist(xhat, x);
                }
            } else {
                const std::vector<double> x =
                    cfg.fixed_signal ? fixed_x_r : gen_sparse_signal<double>(cfg, stream);
                const std::vector<double> y = add_noise<double>(x, sigma, stream);
                const NoiseModel noise{sigma, Field::Real};
                for (std::size_t r = 0; r < n_rules; ++r) {
                    const auto& rule = cfg.rules[r];
                    const std::vector<double> xhat = denoise<double>(
                        rule, y, noise, rule.needs_truth() ? x : std::span<const double>{});
                    errs[r * cfg.trials + t] = sq_dist(xhat, x);
                }
            }
        };
        if (exec == Execution::Serial) {
            for (std::size_t t = 0; t < cfg.trials; ++t) trial(t);
        } else {
            const auto n = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(static)
            for (std::int64_t t = 0; t < n; ++t) trial(static_cast<std::size_t>(t));
        }
    };

    std::vector<double> errs(n_rules * cfg.trials);
    for (std::size_t point = 0; point < cfg.sigma_grid.size(); ++point) {
        const double sigma = cfg.sigma_grid[point];
        run_point(point, sigma, errs);

        const double s = (cfg.nonzero_magnitude / sigma) * (cfg.nonzero_magnitude / sigma);
        const double oracle_total =
            static_cast<double>(cfg.K) * sigma * sigma * (s / (1.0 + s));
        const double ls_total = static_cast<double>(cfg.N) * sigma * sigma;

        for (std::size_t r = 0; r < n_rules; ++r) {
            SweepCell cell{sigma, cfg.rules[r], MseEstimate{}, oracle_total, ls_total};
            cell.mse = reduce_in_order(
                std::span<const double>{errs}.subspan(r * cfg.trials, cfg.trials));
            result.cells.push_back(cell);
        }
    }
    return result;
}

McEstimate mc_rho_oracle(Threshold lambda, Field field, std::size_t samples, std::uint64_t seed,
                         std::uint64_t stream_base, Execution exec) {
    if (samples < 10000) {
        throw std::invalid_argument("mc_rho_oracle: need at least 1e4 samples");
    }
    constexpr std::size_t kChunk = 1u << 16;
    const std::size_t n_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<double> sums(n_chunks, 0.0);
    std::vector<double> sums2(n_chunks, 0.0);

    const auto chunk_body = [&](std::size_t c) {
        RandomStream stream(seed, stream_base + c);
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(lo + kChunk, samples);
        double acc = 0.0;
        double acc2 = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            double r2; // squared magnitude of the standard draw
            if (field == Field::Complex) {
                r2 = std::norm(stream.next_cgaussian());
            } else {
                const double g = stream.next_gaussian();
                r2 = g * g;
            }
            const double r = std::sqrt(r2);
            const double g = gsw_gain(r, lambda);
            const double v = r2 * g * g; // zero below threshold since g = 0 there
            acc += v;
            acc2 += v * v;
        }
        sums[c] = acc;
        sums2[c] = acc2;
    };
    if (exec == Execution::Serial) {
        for (std::size_t c = 0; c < n_chunks; ++c) chunk_body(c);
    } else {
        const auto n = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < n; ++c) chunk_body(static_cast<std::size_t>(c));
    }

    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        sum += sums[c];
        sum2 += sums2[c];
    }
    McEstimate est;
    const auto n = static_cast<double>(samples);
    est.estimate = sum / n;
    const double var = std::max(sum2 - n * est.estimate * est.estimate, 0.0) / (n - 1.0);
    est.stderr_mean = std::sqrt(var / n);
    return est;
}

template std::vector<double> gen_sparse_signal<double>(const ExperimentConfig&, RandomStream&);
template std::vector<cplx> gen_sparse_signal<cplx>(const ExperimentConfig&, RandomStream&);
template MseEstimate empirical_mse<double>(const ShrinkageRule&, std::span<const double>, double,
                                           std::size_t, std::uint64_t, std::uint64_t, Execution);
template MseEstimate empirical_mse<cplx>(const ShrinkageRule&, std::span<const cplx>, double,
                                         std::size_t, std::uint64_t, std::uint64_t, Execution);

} // namespace gsw
