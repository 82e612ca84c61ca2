#include "meanmap/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "text.hpp"

namespace meanmap {

InvariantFunction::InvariantFunction(std::string description, std::size_t arity,
                                     Fn fn)
    : description_(std::move(description)), arity_(arity), fn_(std::move(fn)) {
  if (arity_ < 1) raise(ErrorKind::InvalidArgument, "function arity must be >= 1");
  if (!fn_) raise(ErrorKind::InvalidArgument, "function body is empty");
}

double InvariantFunction::operator()(std::span<const double> v) const {
  if (v.size() != arity_) {
    raise(ErrorKind::ArityMismatch,
          description_ + " expects " + std::to_string(arity_) +
              " coordinates, got " + std::to_string(v.size()));
  }
  const double y = fn_(v);
  if (!std::isfinite(y)) {
    raise(ErrorKind::NonFiniteInput, description_ + " evaluated to a non-finite value");
  }
  return y;
}

namespace {

using Unary = std::function<double(double)>;

Unary parse_unary(const std::string& text) {
  const auto parts = detail::split(text, ':');
  const std::string& name = parts[0];
  auto expect_args = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      raise(ErrorKind::ParseError, "unary '" + name + "' takes " +
                                       std::to_string(n) + " argument(s), got '" +
                                       text + "'");
    }
  };
  if (name == "identity") {
    expect_args(0);
    return [](double x) { return x; };
  }
  if (name == "square") {
    expect_args(0);
    return [](double x) { return x * x; };
  }
  if (name == "sqrt") {
    expect_args(0);
    return [](double x) { return std::sqrt(x); };
  }
  if (name == "exp") {
    expect_args(0);
    return [](double x) { return std::exp(x); };
  }
  if (name == "log") {
    expect_args(0);
    return [](double x) { return std::log(x); };
  }
  if (name == "pow") {
    expect_args(1);
    const double q = detail::parse_real(parts[1]);
    return [q](double x) { return std::pow(x, q); };
  }
  if (name == "affine") {
    expect_args(1);
    const auto coeffs = detail::split(parts[1], ',');
    if (coeffs.size() != 2) {
      raise(ErrorKind::ParseError, "affine needs 'a,b', got '" + parts[1] + "'");
    }
    const double a = detail::parse_real(coeffs[0]);
    const double b = detail::parse_real(coeffs[1]);
    return [a, b](double x) { return a * x + b; };
  }
  raise(ErrorKind::ParseError, "unknown unary function '" + name + "'");
}

}  // namespace

InvariantFunction InvariantFunction::parse(std::string_view text,
                                           const MeanTypeMapping& m,
                                           const GaussOptions& options) {
  const std::string t = detail::lower(detail::trim(text));
  const std::size_t p = m.p();
  if (t.empty()) raise(ErrorKind::ParseError, "empty function specification");

  if (const auto open = t.find('('); open != std::string::npos) {
    if (t.back() != ')') {
      raise(ErrorKind::ParseError, "unbalanced parentheses in '" + t + "'");
    }
    Unary outer = parse_unary(detail::trim(std::string_view(t).substr(0, open)));
    InvariantFunction inner =
        parse(std::string_view(t).substr(open + 1, t.size() - open - 2), m, options);
    return InvariantFunction(t, p, [outer = std::move(outer), inner = std::move(inner)](
                                       std::span<const double> v) {
      return outer(inner(v));
    });
  }

  if (t == "product") {
    return InvariantFunction(t, p, [](std::span<const double> v) {
      double acc = 1.0;
      for (double x : v) acc *= x;
      return acc;
    });
  }
  if (t == "sum") {
    return InvariantFunction(t, p, [](std::span<const double> v) {
      double acc = 0.0;
      for (double x : v) acc += x;
      return acc;
    });
  }
  if (t == "invariant") {
    InvariantMean k = invariant_mean(m, options);
    return InvariantFunction(t, p, [k = std::move(k)](std::span<const double> v) {
      return k(v);
    });
  }
  const auto colon = t.find(':');
  const std::string head = t.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : t.substr(colon + 1);
  if (head == "coord") {
    const long long index = detail::parse_integer(arg);
    if (index < 1 || static_cast<std::size_t>(index) > p) {
      raise(ErrorKind::ParseError,
            "coord index '" + arg + "' outside 1.." + std::to_string(p));
    }
    const auto i = static_cast<std::size_t>(index - 1);
    return InvariantFunction(t, p, [i](std::span<const double> v) { return v[i]; });
  }
  if (head == "const") {
    const double c = detail::parse_real(arg);
    return InvariantFunction(t, p, [c](std::span<const double>) { return c; });
  }
  if (head == "mean") {
    MeanFunction mean = as_function(MeanSpec::parse(arg, p), m.domain());
    return InvariantFunction(t, p, std::move(mean));
  }
  raise(ErrorKind::ParseError, "unknown function '" + t + "'");
}

std::function<double(double)> diagonal_restriction(const InvariantFunction& f) {
  return [f](double x) {
    const Vector diagonal(f.arity(), x);
    return f(diagonal);
  };
}

ProbeReport check_invariance(const InvariantFunction& f, const MeanTypeMapping& m,
                             std::size_t sample_count, std::uint64_t seed) {
  MeanFunction as_mean = [&f](std::span<const double> v) { return f(v); };
  return invariance_residual(as_mean, m, sample_count, seed);
}

DecompositionReport verify_decomposition(const InvariantFunction& f,
                                         const MeanTypeMapping& m,
                                         const GaussOptions& options,
                                         std::size_t sample_count,
                                         std::uint64_t seed, double threshold) {
  if (sample_count < 1) raise(ErrorKind::InvalidArgument, "sample_count must be >= 1");
  if (f.arity() != m.p()) {
    raise(ErrorKind::ArityMismatch, "function arity " + std::to_string(f.arity()) +
                                        " does not match p = " + std::to_string(m.p()));
  }
  const auto samples = draw_samples(m.domain(), m.p(), sample_count, seed,
                                    {.box = m.sample_box(), .stress = true});
  const auto phi = diagonal_restriction(f);
  GaussOptions engine = options;
  engine.keep_trace = false;

  struct Slot {
    double invariance = 0.0;
    double decomposition = 0.0;
    std::size_t steps = 0;
    bool converged = true;
    std::optional<std::string> error;
  };
  std::vector<Slot> slots(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t i) {
    const Vector& v = samples[i];
    try {
      const double fv = f(v);
      slots[i].invariance = std::abs(f(map_apply(m, v)) - fv);
      const InvariantEstimate k = gauss_iterate(m, v, engine);
      slots[i].steps = k.steps;
      slots[i].converged = k.converged();
      slots[i].decomposition = std::abs(phi(k.value) - fv);
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  });

  DecompositionReport report;
  report.fixture = f.description() + " under " + m.id();
  report.samples = samples.size();
  report.tol = options.tol;
  std::size_t step_sum = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Slot& s = slots[i];
    if (s.error) {
      report.errors.push_back("sample " + std::to_string(i) + ": " + *s.error);
      continue;
    }
    if (report.evaluated == 0) {
      report.k_steps.min = report.k_steps.max = s.steps;
    } else {
      report.k_steps.min = std::min(report.k_steps.min, s.steps);
      report.k_steps.max = std::max(report.k_steps.max, s.steps);
    }
    ++report.evaluated;
    step_sum += s.steps;
    if (!s.converged) ++report.max_iter_samples;
    report.invariance_residual = std::max(report.invariance_residual, s.invariance);
    report.decomposition_residual =
        std::max(report.decomposition_residual, s.decomposition);
  }
  if (report.evaluated > 0) {
    report.k_steps.mean =
        static_cast<double>(step_sum) / static_cast<double>(report.evaluated);
  }

  if (report.invariance_residual > threshold) {
    report.flags.push_back(
        "invariance-not-supported: max |F(M(v)) - F(v)| = " +
        detail::format_double(report.invariance_residual) + " exceeds " +
        detail::format_double(threshold) + "; the factorization F = phi(K) is not expected");
  }
  if (report.decomposition_residual > threshold) {
    report.flags.push_back("decomposition-residual: max |phi(K(v)) - F(v)| = " +
                           detail::format_double(report.decomposition_residual) +
                           " exceeds " + detail::format_double(threshold));
  }
  if (report.max_iter_samples > 0) {
    report.flags.push_back("warning: K reached max_iter on " +
                           std::to_string(report.max_iter_samples) +
                           " samples; residuals are diagnostic only");
  }
  if (!report.errors.empty()) {
    report.flags.push_back(std::to_string(report.errors.size()) +
                           " samples failed to evaluate");
  }
  return report;
}

}  // namespace meanmap
