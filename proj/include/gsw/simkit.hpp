#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gsw/field.hpp"
#include "gsw/random.hpp"
#include "gsw/shrinkage.hpp"

namespace gsw {

enum class PhaseMode { UnitReal, RandomPhase };

/// How the working threshold is obtained: a fixed value, or
/// factor * sqrt(2 ln N) (the scaled universal threshold).
struct LambdaRule {
    enum class Kind { Fixed, UniversalScaled };
    Kind kind = Kind::UniversalScaled;
    double value = 1.1;

    double lambda_for(std::size_t n) const;
};

/// Full description of a Monte Carlo sweep. Everything that affects the
/// output is here, including the seed; fixed config implies bit-identical
/// results at any thread count.
struct ExperimentConfig {
    std::size_t N = 1000;
    std::size_t K = 10;
    Field field = Field::Complex;
    double nonzero_magnitude = 1.0;
    PhaseMode phase_mode = PhaseMode::RandomPhase;
    std::vector<double> sigma_grid;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<ShrinkageRule> rules;
    LambdaRule lambda_rule{};
    bool fixed_signal = false; // one signal for all trials instead of fresh draws

    Threshold resolved_lambda() const { return Threshold{lambda_rule.lambda_for(N)}; }

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;
};

struct MseEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0; // NaN when trials < 2
    std::size_t trials = 0;
};

struct SweepCell {
    double sigma;
    ShrinkageRule rule;
    MseEstimate mse;
    double analytic_oracle; // oracle MMSE bound for the configured signal
    double analytic_ls;     // N sigma^2
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepCell> cells; // sigma-major, rule-minor, in config order
};

struct McEstimate {
    double estimate = 0.0;
    double stderr_mean = 0.0;
};

/// Trial execution strategy. Parallel distributes trials over OpenMP threads;
/// Serial is the reference loop kept for testing. Both assign one RandomStream
/// per trial and reduce in fixed order, so results are bit-identical.
enum class Execution { Serial, Parallel };

/// Sets the OpenMP thread count for subsequent parallel runs (no-op when
/// built without OpenMP). Zero means "leave as is".
void set_thread_count(int threads);

/// Sparse signal draw: exactly K entries of magnitude nonzero_magnitude at
/// uniformly random positions (without replacement), phases per phase_mode.
/// The field of T must match cfg.field.
template <typename T>
std::vector<T> gen_sparse_signal(const ExperimentConfig& cfg, RandomStream& stream);

std::vector<double> sample_noise_real(std::size_t n, double sigma, RandomStream& stream);
std::vector<cplx> sample_noise_complex(std::size_t n, double sigma, RandomStream& stream);

/// Mean and standard error of ||xhat - x||^2 over independent noise draws on
/// a fixed signal x. Trial t uses RandomStream(seed, stream_base + t).
template <typename T>
MseEstimate empirical_mse(const ShrinkageRule& rule, std::span<const T> x, double sigma,
                          std::size_t trials, std::uint64_t seed, std::uint64_t stream_base,
                          Execution exec = Execution::Parallel);

/// Full sweep: for every sigma in the grid and every rule, the empirical MSE
/// with a fresh signal per trial (unless cfg.fixed_signal) and shared noise
/// realizations across rules within a trial. Analytical oracle/LS reference
/// curves are attached to every cell. Pure function of cfg.
SweepResult run_sweep(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);

/// Monte Carlo estimate of the residual-variance constant rho(lambda):
/// mean of |xi|^2 g_lambda(|xi|)^2 1{|xi| > lambda} over standard normal
/// draws (complex or real). Serves as the independent oracle for the
/// closed-form evaluations.
McEstimate mc_rho_oracle(Threshold lambda, Field field, std::size_t samples, std::uint64_t seed,
                         std::uint64_t stream_base, Execution exec = Execution::Parallel);

} // namespace gsw
