#include "gsw/csvio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gsw/config.hpp"
#include "gsw/version.hpp"

namespace gsw {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

char hex_digit(unsigned v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

std::string hex64(std::uint64_t h) {
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = hex_digit(h & 0xF);
        h >>= 4;
    }
    return s;
}

double parse_double_strict(std::string_view s, const std::string& where) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument(where + ": cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "# gsw sweep results\n";
    out << "# manifest_hash=" << hex64(config_hash(result.config)) << "\n";
    out << "sigma,inv_sigma2_db,rule,mse_mean,mse_stderr,trials,analytic_oracle,analytic_ls\n";
    for (const auto& cell : result.cells) {
        const double db = -20.0 * std::log10(cell.sigma);
        out << fmt_double(cell.sigma) << ',' << fmt_double(db) << ',' << cell.rule.name() << ','
            << fmt_double(cell.mse.mean) << ',' << fmt_double(cell.mse.stderr_mean) << ','
            << cell.mse.trials << ',' << fmt_double(cell.analytic_oracle) << ','
            << fmt_double(cell.analytic_ls) << '\n';
    }
}

std::string manifest_text(const ExperimentConfig& cfg, const std::string& timestamp,
                          double wall_seconds) {
    std::ostringstream out;
    out << "# gsw run manifest\n";
    out << "# version=" << kVersion << "\n";
    out << "# created=" << timestamp << "\n";
    out << "# wall_seconds=" << fmt_double(wall_seconds) << "\n";
    out << "# manifest_hash=" << hex64(config_hash(cfg)) << "\n";
    out << config_to_text(cfg);
    return out.str();
}

VectorData read_vector_text(const std::string& text, const std::string& filename) {
    VectorData data;
    bool have_field = false;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const std::string where = filename + ":" + std::to_string(line_no);
        std::string_view sv{line};
        sv.remove_prefix(start);
        if (sv.front() == '#') {
            const std::size_t eq = sv.find('=');
            if (sv.find("field") != std::string_view::npos && eq != std::string_view::npos) {
                std::string_view val = sv.substr(eq + 1);
                while (!val.empty() && val.front() == ' ') val.remove_prefix(1);
                data.field = field_from_string(val);
                have_field = true;
            }
            continue;
        }
        if (!have_field) {
            throw std::invalid_argument(where +
                                        ": missing '# field=real|complex' header before data");
        }
        if (data.field == Field::Complex) {
            const std::size_t comma = sv.find(',');
            if (comma == std::string_view::npos) {
                throw std::invalid_argument(where + ": complex value must be 're,im'");
            }
            const double re = parse_double_strict(sv.substr(0, comma), where);
            const double im = parse_double_strict(sv.substr(comma + 1), where);
            data.complex_values.emplace_back(re, im);
        } else {
            data.real_values.push_back(parse_double_strict(sv, where));
        }
    }
    if (!have_field) {
        throw std::invalid_argument(filename + ": missing '# field=real|complex' header");
    }
    if (data.size() == 0) {
        throw std::invalid_argument(filename + ": vector file has no values");
    }
    return data;
}

VectorData read_vector_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open vector file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_vector_text(ss.str(), path);
}

void write_vector(std::ostream& out, const VectorData& v) {
    out << "# field=" << to_string(v.field) << "\n";
    if (v.field == Field::Complex) {
        for (const auto& z : v.complex_values) {
            out << fmt_double(z.real()) << ',' << fmt_double(z.imag()) << '\n';
        }
    } else {
        for (const double x : v.real_values) {
            out << fmt_double(x) << '\n';
        }
    }
}

} // namespace gsw
