#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gsw/field.hpp"
#include "gsw/simkit.hpp"

namespace gsw {

/// Locale-independent, shortest-within-17-significant-digits formatting;
/// round-trips every finite double exactly.
std::string fmt_double(double v);

/// Sweep results as CSV. Fixed header, fixed column order:
/// sigma,inv_sigma2_db,rule,mse_mean,mse_stderr,trials,analytic_oracle,analytic_ls
/// preceded by a commented block carrying the config hash. Byte-identical for
/// identical sweeps.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Run manifest: tool metadata as comments plus the canonical config echo, so
/// the manifest itself parses as a config and reproduces the run.
std::string manifest_text(const ExperimentConfig& cfg, const std::string& timestamp,
                          double wall_seconds);

/// Vector file: '# field=complex|real' header, one value per line,
/// complex entries as "re,im".
struct VectorData {
    Field field = Field::Real;
    std::vector<double> real_values;
    std::vector<cplx> complex_values;

    std::size_t size() const {
        return field == Field::Real ? real_values.size() : complex_values.size();
    }
};

VectorData read_vector_text(const std::string& text, const std::string& filename);
VectorData read_vector_file(const std::string& path);
void write_vector(std::ostream& out, const VectorData& v);

} // namespace gsw
