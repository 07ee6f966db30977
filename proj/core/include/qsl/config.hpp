#pragma once

// Experiment configuration: a flat key = value document with [section]
// headers. '#' starts a comment (whole-line or trailing). Angles are degrees,
// delays are in coherence times.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qsl/bench.hpp"
#include "qsl/tomography.hpp"

namespace qsl {

struct TomographySetting {
  double n_per_basis = 1e4;
  std::optional<std::uint64_t> seed;
};

struct ExperimentConfig {
  std::string label = "experiment";
  SourceSetting source;
  SelectorSetting selector;
  DecohererSetting decoherer = NoDecoherer{};
  TomographySetting tomography;
  /// Absent: the reported point carries no Monte-Carlo error bars.
  std::optional<UncertaintyConfig> uncertainty;
};

/// Throws ParseError naming the line and field on any malformed, unknown or
/// out-of-range entry.
ExperimentConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& cfg);

/// Commented template documenting every key and its units.
std::string config_template();

}  // namespace qsl
