#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gsw/simkit.hpp"

namespace gsw {

/// Config file problem with a file:line locator baked into the message.
class config_error : public std::invalid_argument {
  public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Parses a key/value config ('key = value' lines, '#' comments). Keys are the
/// ExperimentConfig field names. sigma_grid accepts an explicit comma list or
/// the shorthand db:START:STOP:STEP (grid of 10 log10(1/sigma^2) values).
/// Rules given without parameters pick up the resolved threshold:
/// GSW -> lambda_rule's lambda, ST -> the same value as tau, SW is always
/// GSW at lambda = 2.
ExperimentConfig parse_config_text(std::string_view text, std::string_view filename = "<config>");

ExperimentConfig load_config_file(const std::string& path);

/// Canonical echo of a config: explicit sigma values and fully parameterized
/// rules at round-trip precision, so reparsing reproduces the config exactly.
std::string config_to_text(const ExperimentConfig& cfg);

/// FNV-1a hash of the canonical echo; identifies a config in result files.
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Parses one rule spec, e.g. "GSW(4.09)", "ST(3)", "LS". default_lambda
/// fills the parameter of bare GSW/ST.
ShrinkageRule parse_rule(std::string_view spec, double default_lambda);

/// The bundled experiment preset ("figure1"); throws for unknown names.
std::string preset_config_text(std::string_view name);

} // namespace gsw
