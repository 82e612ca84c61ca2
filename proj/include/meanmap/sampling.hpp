#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "meanmap/interval.hpp"

namespace meanmap {

/// Compact closed box [lower, upper] used for sampling coordinates.
struct Box {
  double lower;
  double upper;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Compact sub-box of the domain: the interval itself when bounded (open
/// endpoints nudged inward by 1e-9 of the width); finite endpoint +/- 10 for
/// half-lines; [-10, 10] for the whole line.
Box default_box(const Interval& domain);

struct SamplerOptions {
  std::optional<Box> box;
  /// Prepend structured vectors (near-constant, one-outlier, alternating,
  /// ramp). They take at most a quarter of the requested samples.
  bool stress = true;
};

/// Deterministic for fixed arguments. Every vector lies in domain^p.
std::vector<std::vector<double>> draw_samples(const Interval& domain,
                                              std::size_t p,
                                              std::size_t count,
                                              std::uint64_t seed,
                                              const SamplerOptions& options = {});

/// Structured vectors drawn from the box, in a fixed order.
std::vector<std::vector<double>> stress_vectors(const Box& box, std::size_t p);

}  // namespace meanmap
