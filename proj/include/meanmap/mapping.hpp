#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meanmap/error.hpp"
#include "meanmap/interval.hpp"
#include "meanmap/mean.hpp"
#include "meanmap/sampling.hpp"

namespace meanmap {

using Vector = std::vector<double>;

/// Mean-type mapping M = (M_1, ..., M_p) acting on domain^p.
class MeanTypeMapping {
 public:
  /// Requires p >= 2 and every component of arity p.
  MeanTypeMapping(std::vector<MeanSpec> components, Interval domain,
                  std::string name = {});

  /// Convenience: parses each canonical component string with arity
  /// components.size().
  static MeanTypeMapping from_strings(const std::vector<std::string>& components,
                                      Interval domain, std::string name = {});

  std::size_t p() const noexcept { return components_.size(); }
  const std::vector<MeanSpec>& components() const noexcept { return components_; }
  const Interval& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }

  /// Box used by every sampling probe on this mapping.
  Box sample_box() const { return sample_box_.value_or(default_box(domain_)); }
  void set_sample_box(Box box);

  /// Name if set, otherwise "(c1, c2, ...)" built from the component strings.
  std::string id() const;

 private:
  std::vector<MeanSpec> components_;
  Interval domain_;
  std::string name_;
  std::optional<Box> sample_box_;
};

struct TraceStep {
  Vector x;
  double diameter;
};

/// v, M(v), M^2(v), ... with per-step diameters.
struct IterationTrace {
  std::string mapping_id;
  std::vector<TraceStep> steps;

  const TraceStep& last() const { return steps.back(); }
};

/// Thrown by find_n0 / star_apply when no strict decrease shows up within the
/// cap. This does not prove the mapping is not weakly contractive.
class NotFoundWithinCap : public Error {
 public:
  NotFoundWithinCap(std::size_t cap, IterationTrace trace);
  std::size_t cap() const noexcept { return cap_; }
  const IterationTrace& trace() const noexcept { return trace_; }

 private:
  std::size_t cap_;
  IterationTrace trace_;
};

inline constexpr std::size_t kDefaultN0Cap = 1000;
/// Probe witnesses must have at least this diameter.
inline constexpr double kWitnessMinDiameter = 1e-9;

/// max(v) - min(v). Throws EmptyVector / NonFiniteInput.
double diameter(std::span<const double> v);

/// result[i] = eval_mean(components[i], v). Errors carry the component index.
Vector map_apply(const MeanTypeMapping& m, std::span<const double> v);

/// n + 1 steps starting at v. Errors carry the failing step index.
IterationTrace iterate(const MeanTypeMapping& m, std::span<const double> v,
                       std::size_t n);

/// diameter(M(v)) < diameter(v), compared exactly. Throws ConstantVector.
bool is_contractive_at(const MeanTypeMapping& m, std::span<const double> v);

/// Smallest n in [1, cap] with diameter(M^n(v)) < diameter(v).
std::size_t find_n0(const MeanTypeMapping& m, std::span<const double> v,
                    std::size_t cap = kDefaultN0Cap);

/// M*(v) = M^{n0(v)}(v); constant vectors are returned unchanged.
Vector star_apply(const MeanTypeMapping& m, std::span<const double> v,
                  std::size_t cap = kDefaultN0Cap);

struct ContractivityVerdict {
  /// First sample (by index) that is not contracted, if any.
  std::optional<Vector> witness;
  std::optional<std::size_t> witness_sample;
  std::size_t samples = 0;
  std::size_t checked = 0;
  /// Near-constant samples plus samples whose evaluation failed.
  std::size_t skipped = 0;
  std::vector<std::string> errors;

  bool counterexample_found() const noexcept { return witness.has_value(); }
};

/// Samples domain^p (uniform on the mapping's sample box plus stress vectors)
/// and looks for a nonconstant v that M fails to contract. Sampling can only
/// refute contractivity, never prove it.
ContractivityVerdict probe_contractivity(const MeanTypeMapping& m,
                                         std::size_t sample_count,
                                         std::uint64_t seed);

/// Built-in weakly contractive family: components projection:2, ...,
/// projection:p followed by arithmetic.
MeanTypeMapping shift_average(std::size_t p, Interval domain = Interval::real_line());

}  // namespace meanmap
