#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "meanmap/interval.hpp"

namespace meanmap {

/// Strictly monotone continuous generator for quasi-arithmetic means,
/// paired with its closed-form inverse.
class Generator {
 public:
  enum class Kind { Identity, Log, Power, Exp };

  static Generator identity() { return Generator(Kind::Identity, 1.0); }
  static Generator log() { return Generator(Kind::Log, 0.0); }
  static Generator exp() { return Generator(Kind::Exp, 0.0); }
  /// Throws InvalidArgument when q == 0 or q is not finite.
  static Generator power(double q);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }

  double forward(double x) const;
  double inverse(double y) const;
  /// True when x lies in the generator's natural domain.
  bool admits(double x) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  Generator(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

  Kind kind_;
  double exponent_;
};

namespace means {
struct Arithmetic { friend bool operator==(Arithmetic, Arithmetic) = default; };
struct Geometric { friend bool operator==(Geometric, Geometric) = default; };
struct Harmonic { friend bool operator==(Harmonic, Harmonic) = default; };
struct Power {
  double exponent;
  friend bool operator==(Power, Power) = default;
};
struct QuasiArithmetic {
  Generator generator;
  friend bool operator==(const QuasiArithmetic&, const QuasiArithmetic&) = default;
};
struct Median { friend bool operator==(Median, Median) = default; };
struct Min { friend bool operator==(Min, Min) = default; };
struct Max { friend bool operator==(Max, Max) = default; };
/// 1-based coordinate index.
struct Projection {
  std::size_t index;
  friend bool operator==(Projection, Projection) = default;
};
struct WeightedArithmetic {
  std::vector<double> weights;
  friend bool operator==(const WeightedArithmetic&, const WeightedArithmetic&) = default;
};
}  // namespace means

using MeanKind =
    std::variant<means::Arithmetic, means::Geometric, means::Harmonic,
                 means::Power, means::QuasiArithmetic, means::Median,
                 means::Min, means::Max, means::Projection,
                 means::WeightedArithmetic>;

/// Declarative description of one catalog mean of a fixed arity.
class MeanSpec {
 public:
  /// Validates the kind against the arity (projection index range,
  /// weight count and normalization).
  MeanSpec(MeanKind kind, std::size_t arity);

  /// Parses the canonical text form, e.g. "arithmetic", "power:0.5",
  /// "projection:2", "quasi:log", "weighted:0.3,0.7". Case-insensitive.
  static MeanSpec parse(std::string_view text, std::size_t arity);

  const MeanKind& kind() const noexcept { return kind_; }
  std::size_t arity() const noexcept { return arity_; }

  /// Canonical text form; parse(to_string(), arity()) == *this.
  std::string to_string() const;

  /// True when the mean is only defined for strictly positive inputs.
  bool requires_positive() const noexcept;

  friend bool operator==(const MeanSpec&, const MeanSpec&) = default;

 private:
  MeanKind kind_;
  std::size_t arity_;
};

/// Absolute slack used when checking internality of floating results.
inline constexpr double kInternalityTolerance = 1e-12;
/// Below this magnitude a power mean is evaluated as the geometric mean.
inline constexpr double kPowerZeroThreshold = 1e-8;

/// Checks arity, finiteness, membership in `domain` and in the mean's
/// natural domain. Throws Error on the first offending coordinate.
void validate_input(const MeanSpec& spec, std::span<const double> v,
                    const Interval& domain);

/// Evaluates the mean. The result always satisfies
/// min(v) <= result <= max(v), and equals c exactly on constant vectors.
double eval_mean(const MeanSpec& spec, std::span<const double> v,
                 const Interval& domain);

struct InternalityViolation {
  std::size_t sample;
  std::vector<double> v;
  double value;
  double excess;  // distance outside [min v, max v]
};

struct SampleFailure {
  std::size_t sample;
  std::string message;
};

struct InternalityReport {
  std::size_t samples = 0;
  std::vector<InternalityViolation> violations;
  std::vector<SampleFailure> failures;
  std::optional<InternalityViolation> worst;
};

/// Samples vectors in domain^p (uniform plus structured stress vectors) and
/// records every evaluation outside [min v, max v] by more than
/// kInternalityTolerance. Evaluation errors are recorded per sample.
InternalityReport internality_probe(const MeanSpec& spec, const Interval& domain,
                                    std::size_t sample_count, std::uint64_t seed);

}  // namespace meanmap
