#include "meanmap/mapping.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace meanmap {

MeanTypeMapping::MeanTypeMapping(std::vector<MeanSpec> components,
                                 Interval domain, std::string name)
    : components_(std::move(components)),
      domain_(std::move(domain)),
      name_(std::move(name)) {
  if (components_.size() < 2) {
    raise(ErrorKind::InvalidArgument,
          "a mean-type mapping needs p >= 2 components, got " +
              std::to_string(components_.size()));
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].arity() != components_.size()) {
      raise(ErrorKind::ArityMismatch,
            "component " + std::to_string(i + 1) + " has arity " +
                std::to_string(components_[i].arity()) + ", expected " +
                std::to_string(components_.size()));
    }
  }
}

MeanTypeMapping MeanTypeMapping::from_strings(
    const std::vector<std::string>& components, Interval domain,
    std::string name) {
  std::vector<MeanSpec> specs;
  specs.reserve(components.size());
  for (const auto& text : components) {
    specs.push_back(MeanSpec::parse(text, components.size()));
  }
  return MeanTypeMapping(std::move(specs), std::move(domain), std::move(name));
}

void MeanTypeMapping::set_sample_box(Box box) {
  if (!(box.lower < box.upper) || !domain_.contains(box.lower) ||
      !domain_.contains(box.upper)) {
    raise(ErrorKind::InvalidArgument,
          "sample box must be a nondegenerate subinterval of " +
              domain_.to_string());
  }
  sample_box_ = box;
}

std::string MeanTypeMapping::id() const {
  if (!name_.empty()) return name_;
  std::string out = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ", ";
    out += components_[i].to_string();
  }
  return out + ")";
}

NotFoundWithinCap::NotFoundWithinCap(std::size_t cap, IterationTrace trace)
    : Error(ErrorKind::NotFoundWithinCap,
            "no strict diameter decrease within " + std::to_string(cap) +
                " iterations"),
      cap_(cap),
      trace_(std::move(trace)) {}

double diameter(std::span<const double> v) {
  if (v.empty()) raise(ErrorKind::EmptyVector, "diameter of an empty vector");
  for (double x : v) {
    if (!std::isfinite(x)) {
      raise(ErrorKind::NonFiniteInput, "diameter of a non-finite vector");
    }
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

Vector map_apply(const MeanTypeMapping& m, std::span<const double> v) {
  Vector out(m.p());
  for (std::size_t i = 0; i < m.p(); ++i) {
    try {
      out[i] = eval_mean(m.components()[i], v, m.domain());
    } catch (const Error& e) {
      throw e.with_component(i);
    }
  }
  return out;
}

IterationTrace iterate(const MeanTypeMapping& m, std::span<const double> v,
                       std::size_t n) {
  IterationTrace trace{m.id(), {}};
  trace.steps.reserve(n + 1);
  trace.steps.push_back({Vector(v.begin(), v.end()), diameter(v)});
  for (std::size_t k = 1; k <= n; ++k) {
    Vector next;
    try {
      next = map_apply(m, trace.steps.back().x);
    } catch (const Error& e) {
      throw e.with_step(k);
    }
    const double d = diameter(next);
    trace.steps.push_back({std::move(next), d});
  }
  return trace;
}

namespace {

double require_nonconstant(std::span<const double> v) {
  const double d = diameter(v);
  if (d == 0.0) {
    raise(ErrorKind::ConstantVector,
          "contractivity is only defined for nonconstant vectors");
  }
  return d;
}

}  // namespace

bool is_contractive_at(const MeanTypeMapping& m, std::span<const double> v) {
  const double before = require_nonconstant(v);
  return diameter(map_apply(m, v)) < before;
}

std::size_t find_n0(const MeanTypeMapping& m, std::span<const double> v,
                    std::size_t cap) {
  if (cap < 1) raise(ErrorKind::InvalidArgument, "cap must be >= 1");
  const double start = require_nonconstant(v);
  IterationTrace trace{m.id(), {}};
  trace.steps.push_back({Vector(v.begin(), v.end()), start});
  for (std::size_t n = 1; n <= cap; ++n) {
    Vector next;
    try {
      next = map_apply(m, trace.steps.back().x);
    } catch (const Error& e) {
      throw e.with_step(n);
    }
    const double d = diameter(next);
    trace.steps.push_back({std::move(next), d});
    if (d < start) return n;
  }
  throw NotFoundWithinCap(cap, std::move(trace));
}

Vector star_apply(const MeanTypeMapping& m, std::span<const double> v,
                  std::size_t cap) {
  if (diameter(v) == 0.0) return Vector(v.begin(), v.end());
  const std::size_t n0 = find_n0(m, v, cap);
  return iterate(m, v, n0).last().x;
}

ContractivityVerdict probe_contractivity(const MeanTypeMapping& m,
                                         std::size_t sample_count,
                                         std::uint64_t seed) {
  if (sample_count < 1) {
    raise(ErrorKind::InvalidArgument, "sample_count must be >= 1");
  }
  const auto samples = draw_samples(m.domain(), m.p(), sample_count, seed,
                                    {.box = m.sample_box(), .stress = true});

  enum class Outcome { Contracted, NotContracted, Skipped, Failed };
  struct Slot {
    Outcome outcome = Outcome::Skipped;
    std::string error;
  };
  std::vector<Slot> slots(samples.size());
  detail::parallel_for(samples.size(), [&](std::size_t i) {
    try {
      if (diameter(samples[i]) <= kWitnessMinDiameter) return;
      slots[i].outcome = is_contractive_at(m, samples[i]) ? Outcome::Contracted
                                                          : Outcome::NotContracted;
    } catch (const std::exception& e) {
      slots[i].outcome = Outcome::Failed;
      slots[i].error = e.what();
    }
  });

  ContractivityVerdict verdict;
  verdict.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    switch (slots[i].outcome) {
      case Outcome::Contracted:
        ++verdict.checked;
        break;
      case Outcome::NotContracted:
        ++verdict.checked;
        if (!verdict.witness) {
          verdict.witness = samples[i];
          verdict.witness_sample = i;
        }
        break;
      case Outcome::Skipped:
        ++verdict.skipped;
        break;
      case Outcome::Failed:
        ++verdict.skipped;
        verdict.errors.push_back("sample " + std::to_string(i) + ": " +
                                 slots[i].error);
        break;
    }
  }
  return verdict;
}

MeanTypeMapping shift_average(std::size_t p, Interval domain) {
  if (p < 2) raise(ErrorKind::InvalidArgument, "shift-average needs p >= 2");
  std::vector<MeanSpec> components;
  for (std::size_t i = 2; i <= p; ++i) {
    components.emplace_back(means::Projection{i}, p);
  }
  components.emplace_back(means::Arithmetic{}, p);
  return MeanTypeMapping(std::move(components), std::move(domain),
                         "shift-average-" + std::to_string(p));
}

}  // namespace meanmap
