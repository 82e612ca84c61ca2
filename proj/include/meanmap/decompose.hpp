#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meanmap/invariant.hpp"
#include "meanmap/mapping.hpp"

namespace meanmap {

/// A function F: I^p -> R assumed continuous, carried with a description.
class InvariantFunction {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  InvariantFunction(std::string description, std::size_t arity, Fn fn);

  /// Textual catalog, built against a mapping (arity, domain, and the
  /// invariant mean when `invariant` appears):
  ///   product | sum | coord:i | const:c | mean:<mean spec> | invariant
  ///   <unary>(<inner>)  with unary one of identity, square, sqrt, exp, log,
  ///                     pow:q, affine:a,b   (x -> a*x + b)
  static InvariantFunction parse(std::string_view text, const MeanTypeMapping& m,
                                 const GaussOptions& options = {});

  double operator()(std::span<const double> v) const;

  const std::string& description() const noexcept { return description_; }
  std::size_t arity() const noexcept { return arity_; }

 private:
  std::string description_;
  std::size_t arity_;
  Fn fn_;
};

/// phi(x) = F(x, ..., x).
std::function<double(double)> diagonal_restriction(const InvariantFunction& f);

/// max over the mapping's samples of |F(M(v)) - F(v)|.
ProbeReport check_invariance(const InvariantFunction& f, const MeanTypeMapping& m,
                             std::size_t sample_count, std::uint64_t seed);

struct StepStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
};

/// Residuals above this are reported as "invariance not supported by the
/// samples".
inline constexpr double kDefaultInvarianceThreshold = 1e-9;

struct DecompositionReport {
  std::string fixture;
  double invariance_residual = 0.0;
  /// max |phi(K(v)) - F(v)| over the same sample set.
  double decomposition_residual = 0.0;
  std::size_t samples = 0;
  std::size_t evaluated = 0;
  double tol = 0.0;
  StepStats k_steps;
  std::size_t max_iter_samples = 0;
  std::vector<std::string> flags;
  std::vector<std::string> errors;

  bool flagged() const noexcept { return !flags.empty(); }
};

/// Computes K through the invariant engine and phi through the diagonal
/// restriction, then reports both residuals on one sample set. The report
/// states magnitudes only; it flags (never asserts) a failed hypothesis.
DecompositionReport verify_decomposition(const InvariantFunction& f,
                                         const MeanTypeMapping& m,
                                         const GaussOptions& options,
                                         std::size_t sample_count,
                                         std::uint64_t seed,
                                         double threshold = kDefaultInvarianceThreshold);

}  // namespace meanmap
