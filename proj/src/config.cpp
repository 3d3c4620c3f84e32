#include "gsw/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace gsw {

namespace {

std::string fmt_g17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            parts.push_back(trim(s.substr(pos)));
            break;
        }
        parts.push_back(trim(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return parts;
}

double parse_double(std::string_view s, const std::string& where) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw config_error(where + ": cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

std::uint64_t parse_u64(std::string_view s, const std::string& where) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw config_error(where + ": cannot parse integer '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> parse_sigma_grid(std::string_view value, const std::string& where) {
    std::vector<double> grid;
    if (value.substr(0, 3) == "db:") {
        const auto parts = split(value.substr(3), ':');
        if (parts.size() != 3) {
            throw config_error(where + ": expected db:START:STOP:STEP");
        }
        const double start = parse_double(parts[0], where);
        const double stop = parse_double(parts[1], where);
        const double step = parse_double(parts[2], where);
        if (!(step > 0.0) || stop < start) {
            throw config_error(where + ": dB grid requires STOP >= START and STEP > 0");
        }
        // grid of 1/sigma^2 in dB; sigma = 10^(-db/20), descending in sigma
        for (int k = 0;; ++k) {
            const double db = start + k * step;
            if (db > stop + 1e-9) break;
            grid.push_back(std::pow(10.0, -db / 20.0));
        }
    } else {
        for (const auto part : split(value, ',')) {
            grid.push_back(parse_double(part, where));
        }
    }
    return grid;
}

struct PendingRule {
    std::string name;
    bool has_param = false;
    double param = 0.0;
};

PendingRule parse_rule_spec(std::string_view spec, const std::string& where) {
    PendingRule out;
    const std::size_t open = spec.find('(');
    if (open == std::string_view::npos) {
        out.name = std::string(trim(spec));
        return out;
    }
    if (spec.back() != ')') {
        throw config_error(where + ": malformed rule spec '" + std::string(spec) + "'");
    }
    out.name = std::string(trim(spec.substr(0, open)));
    out.has_param = true;
    out.param = parse_double(trim(spec.substr(open + 1, spec.size() - open - 2)), where);
    return out;
}

ShrinkageRule materialize_rule(const PendingRule& pr, double default_lambda,
                               const std::string& where) {
    if (pr.name == "LS") {
        if (pr.has_param) throw config_error(where + ": LS takes no parameter");
        return ShrinkageRule::ls();
    }
    if (pr.name == "GSW") {
        return ShrinkageRule::gsw(Threshold{pr.has_param ? pr.param : default_lambda});
    }
    if (pr.name == "SW") {
        if (pr.has_param) throw config_error(where + ": SW takes no parameter (lambda = 2)");
        return ShrinkageRule::sw();
    }
    if (pr.name == "ST") {
        return ShrinkageRule::st(pr.has_param ? pr.param : default_lambda);
    }
    if (pr.name == "JS") {
        if (pr.has_param) throw config_error(where + ": JS takes no parameter");
        return ShrinkageRule::js();
    }
    if (pr.name == "OracleMMSE") {
        if (pr.has_param) throw config_error(where + ": OracleMMSE takes no parameter");
        return ShrinkageRule::oracle_mmse();
    }
    throw config_error(where + ": unknown rule '" + pr.name + "'");
}

} // namespace

ShrinkageRule parse_rule(std::string_view spec, double default_lambda) {
    const std::string where = "rule '" + std::string(spec) + "'";
    return materialize_rule(parse_rule_spec(spec, where), default_lambda, where);
}

ExperimentConfig parse_config_text(std::string_view text, std::string_view filename) {
    ExperimentConfig cfg;
    cfg.sigma_grid.clear();
    cfg.rules.clear();

    std::vector<PendingRule> pending_rules;
    bool have_rules = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        const std::string where = std::string(filename) + ":" + std::to_string(line_no);
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw config_error(where + ": expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) throw config_error(where + ": empty value for '" + std::string(key) + "'");

        if (key == "N") {
            cfg.N = parse_u64(value, where);
        } else if (key == "K") {
            cfg.K = parse_u64(value, where);
        } else if (key == "field") {
            try {
                cfg.field = field_from_string(value);
            } catch (const std::invalid_argument& e) {
                throw config_error(where + ": " + e.what());
            }
        } else if (key == "nonzero_magnitude") {
            cfg.nonzero_magnitude = parse_double(value, where);
        } else if (key == "phase_mode") {
            if (value == "unit_real") {
                cfg.phase_mode = PhaseMode::UnitReal;
            } else if (value == "random_phase") {
                cfg.phase_mode = PhaseMode::RandomPhase;
            } else {
                throw config_error(where + ": phase_mode must be unit_real|random_phase");
            }
        } else if (key == "sigma_grid") {
            cfg.sigma_grid = parse_sigma_grid(value, where);
        } else if (key == "trials") {
            cfg.trials = parse_u64(value, where);
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, where);
        } else if (key == "rules") {
            have_rules = true;
            for (const auto part : split(value, ',')) {
                pending_rules.push_back(parse_rule_spec(part, where));
            }
        } else if (key == "lambda_rule") {
            const auto parts = split(value, ':');
            if (parts.size() != 2) {
                throw config_error(where + ": lambda_rule must be fixed:VALUE or universal:FACTOR");
            }
            if (parts[0] == "fixed") {
                cfg.lambda_rule = {LambdaRule::Kind::Fixed, parse_double(parts[1], where)};
            } else if (parts[0] == "universal") {
                cfg.lambda_rule = {LambdaRule::Kind::UniversalScaled, parse_double(parts[1], where)};
            } else {
                throw config_error(where + ": lambda_rule must be fixed:VALUE or universal:FACTOR");
            }
        } else if (key == "fixed_signal") {
            if (value == "true") {
                cfg.fixed_signal = true;
            } else if (value == "false") {
                cfg.fixed_signal = false;
            } else {
                throw config_error(where + ": fixed_signal must be true|false");
            }
        } else {
            throw config_error(where + ": unknown key '" + std::string(key) + "'");
        }
    }

    if (!have_rules) {
        throw config_error(std::string(filename) + ": missing required key 'rules'");
    }
    if (cfg.sigma_grid.empty()) {
        throw config_error(std::string(filename) + ": missing required key 'sigma_grid'");
    }

    try {
        const double default_lambda = cfg.lambda_rule.lambda_for(cfg.N);
        for (const auto& pr : pending_rules) {
            cfg.rules.push_back(
                materialize_rule(pr, default_lambda, std::string(filename) + ": rules"));
        }
        cfg.validate();
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(std::string(filename) + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "N = " << cfg.N << "\n";
    out << "K = " << cfg.K << "\n";
    out << "field = " << to_string(cfg.field) << "\n";
    out << "nonzero_magnitude = " << fmt_g17(cfg.nonzero_magnitude) << "\n";
    out << "phase_mode = "
        << (cfg.phase_mode == PhaseMode::UnitReal ? "unit_real" : "random_phase") << "\n";
    out << "sigma_grid = ";
    for (std::size_t i = 0; i < cfg.sigma_grid.size(); ++i) {
        if (i) out << ",";
        out << fmt_g17(cfg.sigma_grid[i]);
    }
    out << "\n";
    out << "trials = " << cfg.trials << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "rules = ";
    for (std::size_t i = 0; i < cfg.rules.size(); ++i) {
        if (i) out << ",";
        const auto& r = cfg.rules[i];
        switch (r.kind) {
            case ShrinkageRule::Kind::LS: out << "LS"; break;
            case ShrinkageRule::Kind::GSW: out << "GSW(" << fmt_g17(r.param) << ")"; break;
            case ShrinkageRule::Kind::SW: out << "SW"; break;
            case ShrinkageRule::Kind::ST: out << "ST(" << fmt_g17(r.param) << ")"; break;
            case ShrinkageRule::Kind::JS: out << "JS"; break;
            case ShrinkageRule::Kind::OracleMMSE: out << "OracleMMSE"; break;
        }
    }
    out << "\n";
    out << "lambda_rule = "
        << (cfg.lambda_rule.kind == LambdaRule::Kind::Fixed ? "fixed:" : "universal:")
        << fmt_g17(cfg.lambda_rule.value) << "\n";
    out << "fixed_signal = " << (cfg.fixed_signal ? "true" : "false") << "\n";
    return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    const std::string text = config_to_text(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string preset_config_text(std::string_view name) {
    if (name == "figure1") {
        // Sparse-vector denoising benchmark: K = 10 unit-magnitude entries out
        // of N = 1000, scaled universal threshold, 1000 trials per noise level,
        // 0..25 dB grid of inverse noise power.
        return "N = 1000\n"
               "K = 10\n"
               "field = complex\n"
               "nonzero_magnitude = 1\n"
               "phase_mode = random_phase\n"
               "sigma_grid = db:0:25:1\n"
               "trials = 1000\n"
               "seed = 7\n"
               "rules = LS,ST,JS,SW,GSW,OracleMMSE\n"
               "lambda_rule = universal:1.1\n";
    }
    throw config_error("unknown preset '" + std::string(name) + "' (available: figure1)");
}

} // namespace gsw
