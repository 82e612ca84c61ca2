#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "meanmap/mapping.hpp"

namespace meanmap {

/// A mapping config document:
///
///   # comment
///   name       = agm
///   p          = 2
///   domain     = (0, inf)
///   components = arithmetic quasi:log
///   sample_box = [1, 10]          # optional
///   function   = product          # optional, used by decompose
///   lipschitz  = 2                # optional, fixture metadata
///
/// Components are separated by whitespace or ';'. Keys are case-insensitive.
struct MappingConfig {
  MeanTypeMapping mapping;
  std::optional<std::string> function;
  std::optional<double> lipschitz;
};

/// Throws ParseError naming the offending field (and line).
MappingConfig parse_mapping_config(std::string_view text);
MappingConfig load_mapping_config(const std::filesystem::path& path);

}  // namespace meanmap
