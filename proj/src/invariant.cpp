#include "meanmap/invariant.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "text.hpp"

namespace meanmap {

std::string to_string(Readout readout) {
  switch (readout) {
    case Readout::Mid: return "mid";
    case Readout::Min: return "min";
    case Readout::Max: return "max";
    case Readout::First: return "first";
  }
  return "?";
}

Readout parse_readout(std::string_view text) {
  const std::string t = detail::lower(detail::trim(text));
  if (t == "mid") return Readout::Mid;
  if (t == "min") return Readout::Min;
  if (t == "max") return Readout::Max;
  if (t == "first") return Readout::First;
  raise(ErrorKind::ParseError, "unknown readout '" + t + "'");
}

std::string to_string(ConvergenceStatus status) {
  return status == ConvergenceStatus::Converged ? "converged" : "max_iter_reached";
}

namespace {

double read_value(const Vector& x, Readout readout) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  switch (readout) {
    case Readout::Mid: return *lo + 0.5 * (*hi - *lo);
    case Readout::Min: return *lo;
    case Readout::Max: return *hi;
    case Readout::First: return x.front();
  }
  return x.front();
}

bool stopped(const Vector& x, double d, const GaussOptions& options) {
  if (options.stop == StopRule::Relative) {
    const double mid = std::abs(read_value(x, Readout::Mid));
    if (mid > 0.0) return d < options.tol * mid;
  }
  return d < options.tol;
}

}  // namespace

InvariantEstimate gauss_iterate(const MeanTypeMapping& m, std::span<const double> v,
                                const GaussOptions& options) {
  if (!(options.tol > 0.0)) raise(ErrorKind::InvalidArgument, "tol must be > 0");
  if (options.max_iter < 1) {
    raise(ErrorKind::InvalidArgument, "max_iter must be >= 1");
  }
  if (v.size() != m.p()) {
    raise(ErrorKind::ArityMismatch, "mapping has p = " + std::to_string(m.p()) +
                                        ", vector has " + std::to_string(v.size()) +
                                        " coordinates");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      raise(ErrorKind::NonFiniteInput,
            "coordinate " + std::to_string(i + 1) + " is not finite");
    }
    if (!m.domain().contains(v[i])) {
      raise(ErrorKind::DomainViolation,
            "coordinate " + std::to_string(i + 1) + " = " +
                detail::format_double(v[i]) + " lies outside " +
                m.domain().to_string());
    }
  }

  IterationTrace trace{m.id(), {}};
  Vector x(v.begin(), v.end());
  double d = diameter(x);
  trace.steps.push_back({x, d});

  std::size_t n = 0;
  while (!stopped(x, d, options) && n < options.max_iter) {
    ++n;
    try {
      x = map_apply(m, x);
    } catch (const Error& e) {
      throw e.with_step(n);
    }
    d = diameter(x);
    trace.steps.push_back({x, d});
  }

  InvariantEstimate out;
  out.value = read_value(x, options.readout);
  out.steps = n;
  out.final_diameter = d;
  out.status = stopped(x, d, options) ? ConvergenceStatus::Converged
                                      : ConvergenceStatus::MaxIterReached;
  out.final_vector = std::move(x);
  if (options.keep_trace || !out.converged()) out.trace = std::move(trace);
  return out;
}

MeanFunction as_function(MeanSpec spec, Interval domain) {
  return [spec = std::move(spec), domain = std::move(domain)](std::span<const double> v) {
    return eval_mean(spec, v, domain);
  };
}

InvariantMean::InvariantMean(MeanTypeMapping mapping, GaussOptions options)
    : mapping_(std::move(mapping)), options_(options) {
  options_.keep_trace = false;
  if (!(options_.tol > 0.0)) raise(ErrorKind::InvalidArgument, "tol must be > 0");
  if (options_.max_iter < 1) raise(ErrorKind::InvalidArgument, "max_iter must be >= 1");
}

double InvariantMean::operator()(std::span<const double> v) const {
  return gauss_iterate(mapping_, v, options_).value;
}

InvariantEstimate InvariantMean::estimate(std::span<const double> v) const {
  return gauss_iterate(mapping_, v, options_);
}

InvariantMean::operator MeanFunction() const {
  return [self = *this](std::span<const double> v) { return self(v); };
}

InvariantMean invariant_mean(const MeanTypeMapping& m, const GaussOptions& options) {
  return InvariantMean(m, options);
}

namespace {

template <class Eval>
ProbeReport max_abs_difference(const std::vector<Vector>& samples, Eval&& eval) {
  struct Slot {
    double diff = 0.0;
    std::optional<std::string> error;
  };
  std::vector<Slot> slots(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t i) {
    try {
      slots[i].diff = eval(samples[i]);
      if (!std::isfinite(slots[i].diff)) slots[i].error = "non-finite difference";
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  });

  ProbeReport report;
  report.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (slots[i].error) {
      report.errors.push_back("sample " + std::to_string(i) + ": " + *slots[i].error);
      continue;
    }
    ++report.evaluated;
    if (!report.worst || slots[i].diff > report.value) {
      report.value = slots[i].diff;
      report.worst = samples[i];
    }
  }
  return report;
}

}  // namespace

ProbeReport invariance_residual(const MeanFunction& k, const MeanTypeMapping& m,
                                std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) raise(ErrorKind::InvalidArgument, "sample_count must be >= 1");
  const auto samples = draw_samples(m.domain(), m.p(), sample_count, seed,
                                    {.box = m.sample_box(), .stress = true});
  return max_abs_difference(samples, [&](const Vector& v) {
    return std::abs(k(map_apply(m, v)) - k(v));
  });
}

ProbeReport uniqueness_probe(const MeanFunction& k1, const MeanFunction& k2,
                             const Interval& domain, std::size_t p,
                             std::size_t sample_count, std::uint64_t seed,
                             const SamplerOptions& sampler) {
  if (sample_count < 1) raise(ErrorKind::InvalidArgument, "sample_count must be >= 1");
  const auto samples = draw_samples(domain, p, sample_count, seed, sampler);
  return max_abs_difference(samples, [&](const Vector& v) {
    return std::abs(k1(v) - k2(v));
  });
}

}  // namespace meanmap
