// gsw: command-line front end for the GSW denoising toolkit.
// Subcommands: sweep (Monte Carlo experiment), rho (residual-variance tables),
// risk (analytical MSE tables), denoise (apply a rule to a vector file).
// Exit codes: 0 success, 2 usage/config error, 3 numerical error.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsw/config.hpp"
#include "gsw/csvio.hpp"
#include "gsw/errors.hpp"
#include "gsw/risk.hpp"
#include "gsw/simkit.hpp"
#include "gsw/version.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << content;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        const auto second = spec.find(':', colon + 1);
        if (second == std::string::npos) throw std::invalid_argument("grid must be START:STOP:STEP");
        start = std::stod(spec.substr(0, colon));
        stop = std::stod(spec.substr(colon + 1, second - colon - 1));
        step = std::stod(spec.substr(second + 1));
        if (!(step > 0.0) || stop < start) {
            throw std::invalid_argument("grid requires STOP >= START and STEP > 0");
        }
        for (int k = 0;; ++k) {
            const double v = start + k * step;
            if (v > stop + 1e-12) break;
            grid.push_back(v);
        }
    } else {
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            auto next = spec.find(',', pos);
            if (next == std::string::npos) next = spec.size();
            grid.push_back(std::stod(spec.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    if (grid.empty()) throw std::invalid_argument("grid is empty");
    return grid;
}

int cmd_sweep(const std::string& config_path, const std::string& preset,
              const std::string& out_path, std::optional<std::uint64_t> trials_override,
              std::optional<std::uint64_t> seed_override, int threads) {
    gsw::ExperimentConfig cfg;
    if (!config_path.empty()) {
        cfg = gsw::load_config_file(config_path);
    } else {
        cfg = gsw::parse_config_text(gsw::preset_config_text(preset), "preset:" + preset);
    }
    if (trials_override) cfg.trials = *trials_override;
    if (seed_override) cfg.seed = *seed_override;
    cfg.validate();
    gsw::set_thread_count(threads);

    const auto t0 = std::chrono::steady_clock::now();
    const gsw::SweepResult result = gsw::run_sweep(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream csv;
    gsw::write_sweep_csv(csv, result);
    write_file(out_path, csv.str());
    write_file(out_path + ".manifest", gsw::manifest_text(cfg, utc_timestamp(), wall));

    std::cout << "wrote " << result.cells.size() << " rows to " << out_path << " ("
              << gsw::fmt_double(wall) << " s)\n";
    return 0;
}

int cmd_rho(double lambda_min, double lambda_max, double step, const std::string& field_name,
            std::uint64_t mc_samples, std::uint64_t seed, const std::string& out_path) {
    const gsw::Field field = gsw::field_from_string(field_name);
    if (lambda_max < lambda_min || !(step > 0.0)) {
        throw std::invalid_argument("rho: requires lambda-max >= lambda-min and step > 0");
    }
    std::ostringstream out;
    out << "lambda,rho";
    if (mc_samples > 0) out << ",mc_estimate,mc_stderr";
    out << "\n";
    for (int k = 0;; ++k) {
        const double lam = lambda_min + k * step;
        if (lam > lambda_max + 1e-12) break;
        const gsw::Threshold threshold{lam};
        const double rho = field == gsw::Field::Complex ? gsw::rho_gsw_complex(threshold)
                                                        : gsw::rho_gsw_real(threshold);
        out << gsw::fmt_double(lam) << ',' << gsw::fmt_double(rho);
        if (mc_samples > 0) {
            const auto mc = gsw::mc_rho_oracle(threshold, field, mc_samples, seed,
                                               static_cast<std::uint64_t>(k) << 32);
            out << ',' << gsw::fmt_double(mc.estimate) << ',' << gsw::fmt_double(mc.stderr_mean);
        }
        out << "\n";
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        write_file(out_path, out.str());
    }
    return 0;
}

int cmd_risk(const std::string& eta_spec, double sigma, double lambda,
             const std::string& field_name, const std::string& out_path) {
    const gsw::Field field = gsw::field_from_string(field_name);
    const gsw::Threshold threshold{lambda};
    const std::vector<double> etas = parse_grid(eta_spec);
    std::ostringstream out;
    out << "eta_abs,high_snr_mse,low_snr_mse,oracle_mmse,ls_risk\n";
    for (const double eta : etas) {
        const gsw::RiskPoint p{eta, sigma, threshold, field};
        out << gsw::fmt_double(eta) << ',' << gsw::fmt_double(gsw::high_snr_mse(p)) << ','
            << gsw::fmt_double(gsw::low_snr_mse(p)) << ','
            << gsw::fmt_double(gsw::oracle_mmse_risk(p)) << ','
            << gsw::fmt_double(gsw::ls_risk(sigma)) << "\n";
    }
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        write_file(out_path, out.str());
    }
    return 0;
}

int cmd_denoise(const std::string& input_path, double sigma, const std::string& rule_spec,
                const std::string& output_path) {
    const gsw::VectorData in = gsw::read_vector_file(input_path);
    // Bare GSW/ST get the scaled universal threshold for the vector's length.
    const double default_lambda =
        gsw::LambdaRule{gsw::LambdaRule::Kind::UniversalScaled, 1.1}.lambda_for(in.size());
    const gsw::ShrinkageRule rule = gsw::parse_rule(rule_spec, default_lambda);
    if (rule.needs_truth()) {
        throw std::invalid_argument("OracleMMSE needs ground truth and is not available here");
    }
    const gsw::NoiseModel noise{sigma, in.field};
    gsw::VectorData out;
    out.field = in.field;
    if (in.field == gsw::Field::Complex) {
        out.complex_values = gsw::denoise<gsw::cplx>(rule, in.complex_values, noise);
    } else {
        out.real_values = gsw::denoise<double>(rule, in.real_values, noise);
    }
    std::ostringstream text;
    gsw::write_vector(text, out);
    write_file(output_path, text.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GSW denoising toolkit"};
    app.set_version_flag("--version", gsw::kVersion);
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo denoising sweep");
    std::string sweep_config;
    std::string sweep_preset;
    std::string sweep_out = "sweep_results.csv";
    std::optional<std::uint64_t> sweep_trials;
    std::optional<std::uint64_t> sweep_seed;
    int sweep_threads = 0;
    auto* cfg_opt = sweep->add_option("--config", sweep_config, "config file path");
    sweep->add_option("--preset", sweep_preset, "bundled preset name (figure1)")
        ->excludes(cfg_opt);
    sweep->add_option("--out", sweep_out, "output CSV path");
    sweep->add_option("--trials", sweep_trials, "override trial count");
    sweep->add_option("--seed", sweep_seed, "override seed");
    sweep->add_option("--threads", sweep_threads, "thread count (0 = runtime default)");

    auto* rho = app.add_subcommand("rho", "tabulate the residual-variance constant rho(lambda)");
    double rho_min = 2.0, rho_max = 8.0, rho_step = 0.5;
    std::string rho_field = "complex";
    std::uint64_t rho_mc = 0;
    std::uint64_t rho_seed = 1;
    std::string rho_out;
    rho->add_option("--lambda-min", rho_min, "grid start (>= 2)");
    rho->add_option("--lambda-max", rho_max, "grid end");
    rho->add_option("--step", rho_step, "grid step");
    rho->add_option("--field", rho_field, "real|complex");
    rho->add_option("--mc", rho_mc, "add a Monte Carlo oracle column with this many samples");
    rho->add_option("--seed", rho_seed, "Monte Carlo seed");
    rho->add_option("--out", rho_out, "output path (default: stdout)");

    auto* risk = app.add_subcommand("risk", "tabulate analytical MSE predictors");
    std::string risk_eta = "0,1,10";
    double risk_sigma = 1.0;
    double risk_lambda = 4.09;
    std::string risk_field = "complex";
    std::string risk_out;
    risk->add_option("--eta", risk_eta, "eta grid: comma list or START:STOP:STEP");
    risk->add_option("--sigma", risk_sigma, "noise standard deviation");
    risk->add_option("--lambda", risk_lambda, "threshold (>= 2)");
    risk->add_option("--field", risk_field, "real|complex");
    risk->add_option("--out", risk_out, "output path (default: stdout)");

    auto* den = app.add_subcommand("denoise", "apply a shrinkage rule to a vector file");
    std::string den_in;
    std::string den_out;
    double den_sigma = 1.0;
    std::string den_rule = "GSW";
    den->add_option("--input", den_in, "input vector file")->required();
    den->add_option("--output", den_out, "output vector file")->required();
    den->add_option("--sigma", den_sigma, "noise standard deviation")->required();
    den->add_option("--rule", den_rule, "rule spec, e.g. GSW(4.09), ST(3), LS, SW, JS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            if (sweep_config.empty() && sweep_preset.empty()) {
                std::cerr << "sweep: provide --config or --preset\n";
                return kExitUsage;
            }
            return cmd_sweep(sweep_config, sweep_preset, sweep_out, sweep_trials, sweep_seed,
                             sweep_threads);
        }
        if (rho->parsed()) {
            return cmd_rho(rho_min, rho_max, rho_step, rho_field, rho_mc, rho_seed, rho_out);
        }
        if (risk->parsed()) {
            return cmd_risk(risk_eta, risk_sigma, risk_lambda, risk_field, risk_out);
        }
        if (den->parsed()) {
            return cmd_denoise(den_in, den_sigma, den_rule, den_out);
        }
    } catch (const gsw::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
