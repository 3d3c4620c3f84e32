#include <doctest.h>

#include <cmath>
#include <cstring>
#include <map>
#include <vector>

#include "gsw/simkit.hpp"
#include "gsw/specfun.hpp"

using namespace gsw;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.N = 50;
    cfg.K = 3;
    cfg.sigma_grid = {1.0, 0.4, 0.1};
    cfg.trials = 200;
    cfg.seed = 77;
    cfg.rules = {ShrinkageRule::ls(),
                 ShrinkageRule::st(4.0),
                 ShrinkageRule::js(),
                 ShrinkageRule::sw(),
                 ShrinkageRule::gsw(Threshold{4.0}),
                 ShrinkageRule::oracle_mmse()};
    cfg.lambda_rule = {LambdaRule::Kind::Fixed, 4.0};
    return cfg;
}

bool same_cells(const SweepResult& a, const SweepResult& b) {
    if (a.cells.size() != b.cells.size()) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        if (std::memcmp(&a.cells[i].mse.mean, &b.cells[i].mse.mean, sizeof(double)) != 0) {
            return false;
        }
        const bool both_nan = std::isnan(a.cells[i].mse.stderr_mean) &&
                              std::isnan(b.cells[i].mse.stderr_mean);
        if (!both_nan && std::memcmp(&a.cells[i].mse.stderr_mean, &b.cells[i].mse.stderr_mean,
                                     sizeof(double)) != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("simkit") {

TEST_CASE("config validation catches each invariant") {
    auto cfg = small_config();
    cfg.validate();

    auto bad = cfg;
    bad.K = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.K = bad.N + 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.sigma_grid = {};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.sigma_grid = {1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.sigma_grid = {1.0, 2.0, 1.5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.sigma_grid = {1.0, -1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.rules = {};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.nonzero_magnitude = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.field = Field::Real;
    bad.phase_mode = PhaseMode::RandomPhase;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.lambda_rule = {LambdaRule::Kind::Fixed, 1.5}; // resolved lambda < 2
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("universal threshold resolution") {
    LambdaRule univ{LambdaRule::Kind::UniversalScaled, 1.1};
    CHECK(univ.lambda_for(1000) == doctest::Approx(4.0886144077348225).epsilon(1e-15));
    LambdaRule fixed{LambdaRule::Kind::Fixed, 3.25};
    CHECK(fixed.lambda_for(12345) == 3.25);
}

TEST_CASE("sparse signal generation") {
    ExperimentConfig cfg = small_config();
    cfg.N = 1000;
    cfg.K = 10;
    RandomStream stream(5, 0);
    const auto x = gen_sparse_signal<cplx>(cfg, stream);
    std::size_t nonzero = 0;
    double energy = 0.0;
    for (const auto& v : x) {
        if (v != cplx{0.0, 0.0}) {
            ++nonzero;
            CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-12));
        }
        energy += std::norm(v);
    }
    CHECK(nonzero == 10);
    CHECK(energy == doctest::Approx(10.0).epsilon(1e-12));

    // unit-real phases put the magnitude on the real axis
    cfg.phase_mode = PhaseMode::UnitReal;
    cfg.nonzero_magnitude = 2.5;
    RandomStream stream2(5, 1);
    const auto xr = gen_sparse_signal<cplx>(cfg, stream2);
    for (const auto& v : xr) {
        if (v != cplx{0.0, 0.0}) CHECK(v == cplx{2.5, 0.0});
    }

    // degenerate full support
    cfg.K = cfg.N;
    RandomStream stream3(5, 2);
    const auto full = gen_sparse_signal<cplx>(cfg, stream3);
    for (const auto& v : full) CHECK(std::abs(v) == doctest::Approx(2.5).epsilon(1e-12));

    // field mismatch and phase restrictions
    ExperimentConfig real_cfg = small_config();
    real_cfg.field = Field::Real;
    real_cfg.phase_mode = PhaseMode::RandomPhase;
    RandomStream stream4(5, 3);
    CHECK_THROWS_AS(gen_sparse_signal<double>(real_cfg, stream4), std::invalid_argument);
    CHECK_THROWS_AS(gen_sparse_signal<double>(cfg, stream4), std::invalid_argument);
}

TEST_CASE("sparse support is uniform over positions") {
    ExperimentConfig cfg = small_config();
    cfg.N = 8;
    cfg.K = 4;
    cfg.field = Field::Real;
    cfg.phase_mode = PhaseMode::UnitReal;
    const int reps = 20000;
    std::vector<int> counts(cfg.N, 0);
    for (int rep = 0; rep < reps; ++rep) {
        RandomStream stream(99, static_cast<std::uint64_t>(rep));
        const auto x = gen_sparse_signal<double>(cfg, stream);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] != 0.0) ++counts[i];
        }
    }
    const double p = 0.5; // K/N
    const double se = std::sqrt(p * (1 - p) / reps);
    for (const int c : counts) {
        CHECK(std::abs(static_cast<double>(c) / reps - p) < 4 * se);
    }
}

TEST_CASE("noise sampler moments") {
    RandomStream stream(6, 0);
    const std::size_t n = 1000000;
    const auto xi = sample_noise_complex(n, 1.0, stream);
    cplx mean{0.0, 0.0};
    cplx pseudo{0.0, 0.0};
    double power = 0.0;
    std::size_t tail = 0;
    for (const auto& v : xi) {
        mean += v;
        pseudo += v * v;
        power += std::norm(v);
        if (std::abs(v) > 2.0) ++tail;
    }
    const double rn = std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean.real()) / n < 3.0 / (rn * M_SQRT2));
    CHECK(std::abs(mean.imag()) / n < 3.0 / (rn * M_SQRT2));
    CHECK(std::abs(power / n - 1.0) < 3.0 / rn);
    CHECK(std::abs(pseudo.real()) / n < 3.0 / rn); // circular symmetry
    CHECK(std::abs(pseudo.imag()) / n < 3.0 / rn);
    const double p = std::exp(-4.0);
    CHECK(std::abs(static_cast<double>(tail) / n - p) < 3.0 * std::sqrt(p * (1 - p) / n));

    RandomStream rstream(6, 1);
    const auto xr = sample_noise_real(n, 2.0, rstream);
    double rmean = 0.0;
    double rpow = 0.0;
    for (const double v : xr) {
        rmean += v;
        rpow += v * v;
    }
    CHECK(std::abs(rmean / n) < 3.0 * 2.0 / rn);
    CHECK(std::abs(rpow / n - 4.0) < 3.0 * 4.0 * std::sqrt(2.0) / rn);
}

TEST_CASE("empirical MSE of LS matches N sigma^2") {
    ExperimentConfig cfg = small_config();
    cfg.N = 100;
    cfg.K = 5;
    RandomStream stream(8, 0);
    const auto x = gen_sparse_signal<cplx>(cfg, stream);
    const auto est = empirical_mse<cplx>(ShrinkageRule::ls(), x, 1.0, 100000, 8, 1000);
    CHECK(std::abs(est.mean - 100.0) < 3.0 * est.stderr_mean);
}

TEST_CASE("empirical MSE of the oracle at x = 0 is exactly zero") {
    const std::vector<cplx> x(16, cplx{0.0, 0.0});
    const auto est = empirical_mse<cplx>(ShrinkageRule::oracle_mmse(), x, 1.0, 500, 9, 0);
    CHECK(est.mean == 0.0);
    CHECK(est.stderr_mean == 0.0);
}

TEST_CASE("empirical MSE of GSW at x = 0 sits in the rare-event regime") {
    // with lambda ~ 4.09 the per-component survival rate is e^{-16.7}; at
    // N = 1000 and 1000 trials the empirical mean is statistically
    // indistinguishable from zero.
    const std::vector<cplx> x(1000, cplx{0.0, 0.0});
    const auto est = empirical_mse<cplx>(
        ShrinkageRule::gsw(Threshold{4.0886144077348225}), x, 1.0, 1000, 10, 0);
    CHECK(est.mean < 0.05);
}

TEST_CASE("single-trial estimates report no standard error") {
    const std::vector<cplx> x{cplx{1.0, 0.0}};
    const auto est = empirical_mse<cplx>(ShrinkageRule::ls(), x, 1.0, 1, 11, 0);
    CHECK(est.trials == 1);
    CHECK(std::isnan(est.stderr_mean));

    auto cfg = small_config();
    cfg.trials = 1;
    const auto sweep = run_sweep(cfg);
    for (const auto& cell : sweep.cells) CHECK(std::isnan(cell.mse.stderr_mean));
}

TEST_CASE("sweeps are deterministic and execution-independent") {
    const auto cfg = small_config();
    const auto a = run_sweep(cfg, Execution::Parallel);
    const auto b = run_sweep(cfg, Execution::Parallel);
    const auto serial = run_sweep(cfg, Execution::Serial);
    CHECK(same_cells(a, b));
    CHECK(same_cells(a, serial));
}

TEST_CASE("fixed-signal mode is deterministic too") {
    auto cfg = small_config();
    cfg.fixed_signal = true;
    const auto a = run_sweep(cfg, Execution::Parallel);
    const auto serial = run_sweep(cfg, Execution::Serial);
    CHECK(same_cells(a, serial));
}

TEST_CASE("SW cells equal GSW(2) cells under the same seed") {
    auto cfg = small_config();
    cfg.rules = {ShrinkageRule::sw(), ShrinkageRule::gsw(Threshold{2.0})};
    const auto sweep = run_sweep(cfg);
    for (std::size_t p = 0; p < cfg.sigma_grid.size(); ++p) {
        const auto& sw_cell = sweep.cells[2 * p];
        const auto& gsw_cell = sweep.cells[2 * p + 1];
        CHECK(sw_cell.mse.mean == gsw_cell.mse.mean);
        CHECK(sw_cell.mse.stderr_mean == gsw_cell.mse.stderr_mean);
    }
}

TEST_CASE("no rule beats the oracle bound") {
    const auto sweep = run_sweep(small_config());
    for (const auto& cell : sweep.cells) {
        CHECK(cell.mse.mean >= cell.analytic_oracle - 3.0 * cell.mse.stderr_mean);
    }
}

TEST_CASE("LS sweep cells match the analytic reference within noise") {
    const auto sweep = run_sweep(small_config());
    for (const auto& cell : sweep.cells) {
        if (cell.rule.kind != ShrinkageRule::Kind::LS) continue;
        CHECK(std::abs(cell.mse.mean - cell.analytic_ls) < 3.0 * cell.mse.stderr_mean);
    }
}

TEST_CASE("rho oracle agrees with the closed forms") {
    const auto mc_c = mc_rho_oracle(Threshold{2.0}, Field::Complex, 10000000, 12, 0);
    CHECK(std::abs(mc_c.estimate - rho_gsw_complex(Threshold{2.0})) < 3.0 * mc_c.stderr_mean);

    const auto mc_r = mc_rho_oracle(Threshold{3.0}, Field::Real, 10000000, 13, 0);
    CHECK(std::abs(mc_r.estimate - rho_gsw_real(Threshold{3.0})) < 3.0 * mc_r.stderr_mean);
}

TEST_CASE("rho oracle cannot resolve the lambda = 8 tail") {
    // the survival event has probability e^{-64}; no sample ever crosses
    const auto mc = mc_rho_oracle(Threshold{8.0}, Field::Complex, 100000, 14, 0);
    CHECK(mc.estimate == 0.0);
}

TEST_CASE("rho oracle input validation and determinism") {
    CHECK_THROWS_AS(mc_rho_oracle(Threshold{2.0}, Field::Complex, 100, 15, 0),
                    std::invalid_argument);
    const auto a = mc_rho_oracle(Threshold{2.5}, Field::Complex, 200000, 15, 0,
                                 Execution::Parallel);
    const auto b = mc_rho_oracle(Threshold{2.5}, Field::Complex, 200000, 15, 0,
                                 Execution::Serial);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_mean == b.stderr_mean);
}

} // TEST_SUITE
