#include "meanmap/mean.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "meanmap/error.hpp"
#include "meanmap/sampling.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace meanmap {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Generator

Generator Generator::power(double q) {
  if (!std::isfinite(q) || q == 0.0) {
    raise(ErrorKind::InvalidArgument,
          "power generator exponent must be finite and nonzero");
  }
  return Generator(Kind::Power, q);
}

double Generator::forward(double x) const {
  switch (kind_) {
    case Kind::Identity: return x;
    case Kind::Log: return std::log(x);
    case Kind::Power: return std::pow(x, exponent_);
    case Kind::Exp: return std::exp(x);
  }
  return x;
}

double Generator::inverse(double y) const {
  switch (kind_) {
    case Kind::Identity: return y;
    case Kind::Log: return std::exp(y);
    case Kind::Power: return std::pow(y, 1.0 / exponent_);
    case Kind::Exp: return std::log(y);
  }
  return y;
}

bool Generator::admits(double x) const noexcept {
  switch (kind_) {
    case Kind::Log:
    case Kind::Power: return x > 0.0;
    case Kind::Identity:
    case Kind::Exp: return std::isfinite(x);
  }
  return false;
}

std::string Generator::to_string() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::Log: return "log";
    case Kind::Power: return "power:" + detail::format_double(exponent_);
    case Kind::Exp: return "exp";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// MeanSpec

namespace {

constexpr double kWeightSumTolerance = 1e-12;

void check_kind(const MeanKind& kind, std::size_t arity) {
  if (arity < 1) raise(ErrorKind::InvalidArgument, "mean arity must be >= 1");
  if (const auto* proj = std::get_if<means::Projection>(&kind)) {
    if (proj->index < 1 || proj->index > arity) {
      raise(ErrorKind::InvalidArgument,
            "projection index " + std::to_string(proj->index) +
                " outside 1.." + std::to_string(arity));
    }
  }
  if (const auto* w = std::get_if<means::WeightedArithmetic>(&kind)) {
    if (w->weights.size() != arity) {
      raise(ErrorKind::InvalidArgument,
            "weighted mean needs " + std::to_string(arity) + " weights, got " +
                std::to_string(w->weights.size()));
    }
    double sum = 0.0;
    for (double x : w->weights) {
      if (!std::isfinite(x) || x < 0.0) {
        raise(ErrorKind::InvalidArgument,
              "weights must be finite and nonnegative, got " +
                  detail::format_double(x));
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
      raise(ErrorKind::InvalidArgument,
            "weights must sum to 1, got " + detail::format_double(sum));
    }
  }
  if (const auto* pw = std::get_if<means::Power>(&kind)) {
    if (!std::isfinite(pw->exponent)) {
      raise(ErrorKind::InvalidArgument, "power mean exponent must be finite");
    }
  }
}

Generator parse_generator(const std::vector<std::string>& parts,
                          std::string_view whole) {
  auto fail = [&](const std::string& token) -> Generator {
    raise(ErrorKind::ParseError, "unknown generator '" + token + "' in '" +
                                     std::string(whole) + "'");
  };
  if (parts.size() < 2) fail("");
  const std::string& name = parts[1];
  if (name == "identity" || name == "id") {
    if (parts.size() != 2) fail(parts[2]);
    return Generator::identity();
  }
  if (name == "log") {
    if (parts.size() != 2) fail(parts[2]);
    return Generator::log();
  }
  if (name == "exp") {
    if (parts.size() != 2) fail(parts[2]);
    return Generator::exp();
  }
  if (name == "power" || name == "pow") {
    if (parts.size() != 3) {
      raise(ErrorKind::ParseError,
            "quasi:power needs one exponent in '" + std::string(whole) + "'");
    }
    const double q = detail::parse_real(parts[2]);
    if (q == 0.0) {
      raise(ErrorKind::ParseError,
            "generator exponent '" + parts[2] + "' must be nonzero");
    }
    return Generator::power(q);
  }
  return fail(name);
}

}  // namespace

MeanSpec::MeanSpec(MeanKind kind, std::size_t arity)
    : kind_(std::move(kind)), arity_(arity) {
  check_kind(kind_, arity_);
}

MeanSpec MeanSpec::parse(std::string_view text, std::size_t arity) {
  const std::string whole = detail::lower(detail::trim(text));
  if (whole.empty()) raise(ErrorKind::ParseError, "empty mean specification");
  const auto parts = detail::split(whole, ':');
  const std::string& head = parts[0];

  auto no_args = [&](MeanKind kind) {
    if (parts.size() != 1) {
      raise(ErrorKind::ParseError, "unexpected argument '" + parts[1] +
                                       "' for mean '" + head + "'");
    }
    return MeanSpec(std::move(kind), arity);
  };
  auto one_arg = [&]() -> const std::string& {
    if (parts.size() != 2 || parts[1].empty()) {
      raise(ErrorKind::ParseError,
            "mean '" + head + "' needs exactly one argument, got '" + whole + "'");
    }
    return parts[1];
  };

  try {
    if (head == "arithmetic") return no_args(means::Arithmetic{});
    if (head == "geometric") return no_args(means::Geometric{});
    if (head == "harmonic") return no_args(means::Harmonic{});
    if (head == "median") return no_args(means::Median{});
    if (head == "min") return no_args(means::Min{});
    if (head == "max") return no_args(means::Max{});
    if (head == "power") {
      return MeanSpec(means::Power{detail::parse_real(one_arg())}, arity);
    }
    if (head == "projection") {
      const long long index = detail::parse_integer(one_arg());
      if (index < 1) {
        raise(ErrorKind::ParseError,
              "projection index '" + parts[1] + "' must be >= 1");
      }
      return MeanSpec(means::Projection{static_cast<std::size_t>(index)}, arity);
    }
    if (head == "quasi") {
      return MeanSpec(means::QuasiArithmetic{parse_generator(parts, whole)}, arity);
    }
    if (head == "weighted") {
      std::vector<double> weights;
      for (const auto& token : detail::split(one_arg(), ',')) {
        weights.push_back(detail::parse_real(token));
      }
      return MeanSpec(means::WeightedArithmetic{std::move(weights)}, arity);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    raise(ErrorKind::ParseError, "'" + whole + "': " + e.detail());
  }
  raise(ErrorKind::ParseError, "unknown mean '" + head + "'");
}

std::string MeanSpec::to_string() const {
  return std::visit(
      overloaded{
          [](means::Arithmetic) -> std::string { return "arithmetic"; },
          [](means::Geometric) -> std::string { return "geometric"; },
          [](means::Harmonic) -> std::string { return "harmonic"; },
          [](means::Median) -> std::string { return "median"; },
          [](means::Min) -> std::string { return "min"; },
          [](means::Max) -> std::string { return "max"; },
          [](means::Power p) { return "power:" + detail::format_double(p.exponent); },
          [](means::Projection p) { return "projection:" + std::to_string(p.index); },
          [](const means::QuasiArithmetic& q) { return "quasi:" + q.generator.to_string(); },
          [](const means::WeightedArithmetic& w) {
            std::string out = "weighted:";
            for (std::size_t i = 0; i < w.weights.size(); ++i) {
              if (i) out += ',';
              out += detail::format_double(w.weights[i]);
            }
            return out;
          },
      },
      kind_);
}

bool MeanSpec::requires_positive() const noexcept {
  return std::visit(
      overloaded{
          [](means::Geometric) { return true; },
          [](means::Harmonic) { return true; },
          [](means::Power) { return true; },
          [](const means::QuasiArithmetic& q) { return !q.generator.admits(-1.0); },
          [](const auto&) { return false; },
      },
      kind_);
}

// ---------------------------------------------------------------------------
// Evaluation

void validate_input(const MeanSpec& spec, std::span<const double> v,
                    const Interval& domain) {
  if (v.size() != spec.arity()) {
    raise(ErrorKind::ArityMismatch,
          spec.to_string() + " expects " + std::to_string(spec.arity()) +
              " coordinates, got " + std::to_string(v.size()));
  }
  const bool positive = spec.requires_positive();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const std::string where = "coordinate " + std::to_string(i + 1);
    if (!std::isfinite(x)) {
      raise(ErrorKind::NonFiniteInput, where + " is not finite");
    }
    if (!domain.contains(x)) {
      raise(ErrorKind::DomainViolation, where + " = " + detail::format_double(x) +
                                            " lies outside " + domain.to_string());
    }
    if (positive && !(x > 0.0)) {
      raise(ErrorKind::DomainViolation,
            where + " = " + detail::format_double(x) + " is not positive, as " +
                spec.to_string() + " requires");
    }
  }
}

namespace {

double arithmetic(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double geometric(std::span<const double> v) {
  if (v.size() == 2) return std::sqrt(v[0]) * std::sqrt(v[1]);
  double log_sum = 0.0;
  for (double x : v) log_sum += std::log(x);
  return std::exp(log_sum / static_cast<double>(v.size()));
}

double harmonic(std::span<const double> v) {
  double inv = 0.0;
  for (double x : v) inv += 1.0 / x;
  return static_cast<double>(v.size()) / inv;
}

double power_mean(std::span<const double> v, double r) {
  if (std::abs(r) < kPowerZeroThreshold) return geometric(v);
  // Scaled by the largest coordinate so x^r cannot overflow for large |r|.
  const double scale = *std::max_element(v.begin(), v.end());
  double acc = 0.0;
  for (double x : v) acc += std::pow(x / scale, r);
  return scale * std::pow(acc / static_cast<double>(v.size()), 1.0 / r);
}

double quasi_arithmetic(std::span<const double> v, const Generator& g) {
  double acc = 0.0;
  for (double x : v) acc += g.forward(x);
  return g.inverse(acc / static_cast<double>(v.size()));
}

double median(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  const double a = sorted[n / 2 - 1];
  const double b = sorted[n / 2];
  return a + 0.5 * (b - a);
}

double weighted(std::span<const double> v, const std::vector<double>& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * v[i];
  return acc;
}

}  // namespace

double eval_mean(const MeanSpec& spec, std::span<const double> v,
                 const Interval& domain) {
  validate_input(spec, v, domain);
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (lo == hi) return lo;

  const double value = std::visit(
      overloaded{
          [&](means::Arithmetic) { return arithmetic(v); },
          [&](means::Geometric) { return geometric(v); },
          [&](means::Harmonic) { return harmonic(v); },
          [&](means::Power p) { return power_mean(v, p.exponent); },
          [&](const means::QuasiArithmetic& q) { return quasi_arithmetic(v, q.generator); },
          [&](means::Median) { return median(v); },
          [&](means::Min) { return lo; },
          [&](means::Max) { return hi; },
          [&](means::Projection p) { return v[p.index - 1]; },
          [&](const means::WeightedArithmetic& w) { return weighted(v, w.weights); },
      },
      spec.kind());

  if (!std::isfinite(value)) {
    raise(ErrorKind::DomainViolation,
          spec.to_string() + " overflowed on this input");
  }
  // The exact mean lies in [lo, hi]; the clamp only removes rounding.
  return std::clamp(value, lo, hi);
}

InternalityReport internality_probe(const MeanSpec& spec, const Interval& domain,
                                    std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) {
    raise(ErrorKind::InvalidArgument, "sample_count must be >= 1");
  }
  const auto samples = draw_samples(domain, spec.arity(), sample_count, seed);

  struct Slot {
    double value = 0.0;
    std::optional<std::string> error;
  };
  std::vector<Slot> slots(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t i) {
    try {
      slots[i].value = eval_mean(spec, samples[i], domain);
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  });

  InternalityReport report;
  report.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (slots[i].error) {
      report.failures.push_back({i, *slots[i].error});
      continue;
    }
    const auto& v = samples[i];
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double value = slots[i].value;
    const double excess = std::max({*lo - value, value - *hi, 0.0});
    if (excess > kInternalityTolerance) {
      InternalityViolation violation{i, v, value, excess};
      if (!report.worst || excess > report.worst->excess) report.worst = violation;
      report.violations.push_back(std::move(violation));
    }
  }
  return report;
}

}  // namespace meanmap
