#include "meanmap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "meanmap/error.hpp"

namespace meanmap {

namespace {
constexpr double kHalfLineSpan = 10.0;
constexpr double kOpenNudge = 1e-9;
}  // namespace

Box default_box(const Interval& domain) {
  const bool lo_finite = std::isfinite(domain.lower());
  const bool hi_finite = std::isfinite(domain.upper());
  double lo = lo_finite ? domain.lower() : -kHalfLineSpan;
  double hi = hi_finite ? domain.upper() : kHalfLineSpan;
  if (lo_finite && !hi_finite) hi = lo + kHalfLineSpan;
  if (!lo_finite && hi_finite) lo = hi - kHalfLineSpan;
  const double width = hi - lo;
  if (!domain.contains(lo)) lo += kOpenNudge * width;
  if (!domain.contains(hi)) hi -= kOpenNudge * width;
  return {lo, hi};
}

std::vector<std::vector<double>> stress_vectors(const Box& box, std::size_t p) {
  const double a = box.lower;
  const double b = box.upper;
  const double mid = a + 0.5 * (b - a);
  std::vector<std::vector<double>> out;

  std::vector<double> near(p, mid);
  near.back() = mid + 1e-6 * (b - a);
  out.push_back(near);

  for (std::size_t i = 0; i < p; ++i) {
    std::vector<double> high_outlier(p, a);
    high_outlier[i] = b;
    out.push_back(std::move(high_outlier));
    std::vector<double> low_outlier(p, b);
    low_outlier[i] = a;
    out.push_back(std::move(low_outlier));
  }

  std::vector<double> alternating(p);
  for (std::size_t i = 0; i < p; ++i) alternating[i] = (i % 2 == 0) ? a : b;
  out.push_back(alternating);

  std::vector<double> ramp(p);
  for (std::size_t i = 0; i < p; ++i) {
    ramp[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(p - 1);
  }
  ramp.back() = b;
  out.push_back(ramp);
  return out;
}

std::vector<std::vector<double>> draw_samples(const Interval& domain,
                                              std::size_t p,
                                              std::size_t count,
                                              std::uint64_t seed,
                                              const SamplerOptions& options) {
  if (p < 1) raise(ErrorKind::InvalidArgument, "sample arity must be >= 1");
  const Box box = options.box.value_or(default_box(domain));
  if (!(box.lower < box.upper) || !domain.contains(box.lower) ||
      !domain.contains(box.upper)) {
    raise(ErrorKind::InvalidArgument,
          "sample box must be a nondegenerate subinterval of " +
              domain.to_string());
  }

  std::vector<std::vector<double>> out;
  out.reserve(count);
  if (options.stress && p >= 2) {
    auto stress = stress_vectors(box, p);
    const std::size_t take = std::min(stress.size(), count / 4);
    for (std::size_t i = 0; i < take; ++i) out.push_back(std::move(stress[i]));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(box.lower, box.upper);
  while (out.size() < count) {
    std::vector<double> v(p);
    for (auto& x : v) x = coord(rng);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace meanmap
