#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meanmap/mapping.hpp"

namespace meanmap {

/// How a scalar is read off the (nearly constant) final iterate.
enum class Readout { Mid, Min, Max, First };

/// Absolute: diameter < tol. Relative: diameter < tol * |midpoint|, falling
/// back to absolute when the midpoint is 0.
enum class StopRule { Absolute, Relative };

std::string to_string(Readout readout);
Readout parse_readout(std::string_view text);

enum class ConvergenceStatus { Converged, MaxIterReached };
std::string to_string(ConvergenceStatus status);

inline constexpr double kDefaultTol = 1e-12;
inline constexpr std::size_t kDefaultMaxIter = 10000;

struct GaussOptions {
  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
  Readout readout = Readout::Mid;
  StopRule stop = StopRule::Absolute;
  /// Attach the trace even on convergence. Non-converged runs always carry it.
  bool keep_trace = false;
};

struct InvariantEstimate {
  double value = 0.0;
  std::size_t steps = 0;
  double final_diameter = 0.0;
  ConvergenceStatus status = ConvergenceStatus::Converged;
  Vector final_vector;
  std::optional<IterationTrace> trace;

  bool converged() const noexcept { return status == ConvergenceStatus::Converged; }
};

/// Iterates M from v until the stopping rule holds or max_iter applications
/// have been made. Hitting max_iter is a status, not an error.
InvariantEstimate gauss_iterate(const MeanTypeMapping& m, std::span<const double> v,
                                const GaussOptions& options = {});

/// Any p-ary mean, as a callable.
using MeanFunction = std::function<double(std::span<const double>)>;

/// Wraps a catalog mean as a MeanFunction.
MeanFunction as_function(MeanSpec spec, Interval domain);

/// The M-invariant mean K(v) = gauss_iterate(M, v).value.
class InvariantMean {
 public:
  InvariantMean(MeanTypeMapping mapping, GaussOptions options);

  double operator()(std::span<const double> v) const;
  InvariantEstimate estimate(std::span<const double> v) const;

  const MeanTypeMapping& mapping() const noexcept { return mapping_; }
  const GaussOptions& options() const noexcept { return options_; }
  std::size_t arity() const noexcept { return mapping_.p(); }

  operator MeanFunction() const;

 private:
  MeanTypeMapping mapping_;
  GaussOptions options_;
};

InvariantMean invariant_mean(const MeanTypeMapping& m, const GaussOptions& options = {});

struct ProbeReport {
  /// Maximum absolute difference over successfully evaluated samples.
  double value = 0.0;
  std::size_t samples = 0;
  std::size_t evaluated = 0;
  std::optional<Vector> worst;
  std::vector<std::string> errors;
};

/// max over samples of |K(M(v)) - K(v)|, with v drawn from the mapping's
/// sampler.
ProbeReport invariance_residual(const MeanFunction& k, const MeanTypeMapping& m,
                                std::size_t sample_count, std::uint64_t seed);

/// max over samples of |K1(v) - K2(v)| for v in domain^p.
ProbeReport uniqueness_probe(const MeanFunction& k1, const MeanFunction& k2,
                             const Interval& domain, std::size_t p,
                             std::size_t sample_count, std::uint64_t seed,
                             const SamplerOptions& sampler = {});

}  // namespace meanmap
