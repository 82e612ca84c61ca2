#include "meanmap/invariant.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace meanmap;

namespace {

// AGM(1, 2), cross-checked against a 30-digit arbitrary-precision AGM.
constexpr double kAgm12 = 1.45679103104690686;

MeanTypeMapping agm() {
  auto m = MeanTypeMapping::from_strings({"arithmetic", "geometric"}, Interval::positive(),
                                         "agm");
  m.set_sample_box({1, 10});
  return m;
}
MeanTypeMapping arith_harm() {
  auto m = MeanTypeMapping::from_strings({"arithmetic", "harmonic"}, Interval::positive(),
                                         "arithmetic-harmonic");
  m.set_sample_box({0.5, 10});
  return m;
}
MeanTypeMapping projections() {
  return MeanTypeMapping::from_strings({"projection:1", "projection:2"},
                                       Interval::closed(0, 1));
}

}  // namespace

TEST(Oracle, QuadratureRulesAgree) {
  for (auto [a, b] : {std::pair{1.0, 2.0}, {1.0, 9.0}, {0.5, 30.0}, {3.0, 3.5}}) {
    EXPECT_NEAR(oracle::elliptic_integral_trapezoid(a, b),
                oracle::elliptic_integral_simpson(a, b), 1e-12);
  }
  EXPECT_NEAR(oracle::agm_by_quadrature(1, 2), kAgm12, 1e-13);
  // a = b: the integral is pi / (2a).
  EXPECT_NEAR(oracle::agm_by_quadrature(2.5, 2.5), 2.5, 1e-13);
}

TEST(GaussIterate, AgmMatchesEllipticOracle) {
  const auto est = gauss_iterate(agm(), std::vector<double>{1, 2});
  EXPECT_TRUE(est.converged());
  EXPECT_NEAR(est.value, oracle::agm_by_quadrature(1, 2), 1e-10);
  EXPECT_LT(est.steps, 10u);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> coord(0.5, 50);
  for (int i = 0; i < 50; ++i) {
    const double a = coord(rng), b = coord(rng);
    EXPECT_NEAR(gauss_iterate(agm(), std::vector<double>{a, b}).value,
                oracle::agm_by_quadrature(a, b), 1e-10 * std::max(1.0, std::max(a, b)));
  }
}

TEST(GaussIterate, ArithmeticHarmonicGivesGeometricMean) {
  const auto est = gauss_iterate(arith_harm(), std::vector<double>{2, 8});
  EXPECT_TRUE(est.converged());
  EXPECT_NEAR(est.value, 4.0, 1e-12);
}

TEST(GaussIterate, ConstantInputReturnsImmediately) {
  for (const auto& m : {agm(), arith_harm(), projections(), shift_average(3)}) {
    const std::vector<double> c(m.p(), 0.75);
    const auto est = gauss_iterate(m, c);
    EXPECT_EQ(est.value, 0.75);
    EXPECT_EQ(est.steps, 0u);
    EXPECT_EQ(est.final_diameter, 0.0);
    EXPECT_TRUE(est.converged());
  }
}

TEST(GaussIterate, ShiftAverageMatchesLinearInvariant) {
  const std::vector<double> v = {0, 1, 0};
  const auto est = gauss_iterate(shift_average(3), v);
  ASSERT_TRUE(est.converged());
  EXPECT_NEAR(est.value, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(est.value, oracle::shift3_limit_by_iteration({0, 1, 0}, 1e-14), 1e-12);
}

TEST(GaussIterate, NonConvergentMappingReportsStatusAndTrace) {
  GaussOptions options;
  options.max_iter = 200;
  const auto est = gauss_iterate(projections(), std::vector<double>{0.25, 0.5}, options);
  EXPECT_EQ(est.status, ConvergenceStatus::MaxIterReached);
  EXPECT_EQ(est.steps, 200u);
  EXPECT_EQ(est.final_diameter, 0.25);
  ASSERT_TRUE(est.trace.has_value());
  EXPECT_EQ(est.trace->steps.size(), 201u);
}

TEST(GaussIterate, TraceOnlyAttachedWhenAsked) {
  const std::vector<double> v = {1, 2};
  EXPECT_FALSE(gauss_iterate(agm(), v).trace.has_value());
  GaussOptions options;
  options.keep_trace = true;
  const auto est = gauss_iterate(agm(), v, options);
  ASSERT_TRUE(est.trace.has_value());
  EXPECT_EQ(est.trace->steps.size(), est.steps + 1);
  for (std::size_t k = 0; k + 1 < est.trace->steps.size(); ++k) {
    EXPECT_LE(est.trace->steps[k + 1].diameter, est.trace->steps[k].diameter);
  }
}

TEST(GaussIterate, Readouts) {
  const std::vector<double> v = {1, 2};
  GaussOptions options;
  options.tol = 1e-3;
  options.max_iter = 2;
  options.readout = Readout::Min;
  const auto lo = gauss_iterate(agm(), v, options);
  options.readout = Readout::Max;
  const auto hi = gauss_iterate(agm(), v, options);
  options.readout = Readout::First;
  const auto first = gauss_iterate(agm(), v, options);
  options.readout = Readout::Mid;
  const auto mid = gauss_iterate(agm(), v, options);
  EXPECT_LE(lo.value, mid.value);
  EXPECT_LE(mid.value, hi.value);
  EXPECT_EQ(first.value, first.final_vector[0]);
  EXPECT_NEAR(hi.value - lo.value, mid.final_diameter, 1e-16);
  EXPECT_EQ(parse_readout("MAX"), Readout::Max);
  EXPECT_THROW(parse_readout("median"), Error);
}

TEST(GaussIterate, RelativeStoppingRuleForLargeMagnitudes) {
  GaussOptions options;
  options.stop = StopRule::Relative;
  const std::vector<double> v = {1e8, 3e8};
  const auto est = gauss_iterate(agm(), v, options);
  EXPECT_TRUE(est.converged());
  EXPECT_NEAR(est.value / oracle::agm_by_quadrature(1e8, 3e8), 1.0, 1e-12);
}

TEST(GaussIterate, RejectsBadArguments) {
  GaussOptions options;
  options.tol = 0;
  EXPECT_THROW(gauss_iterate(agm(), std::vector<double>{1, 2}, options), Error);
  options = {};
  options.max_iter = 0;
  EXPECT_THROW(gauss_iterate(agm(), std::vector<double>{1, 2}, options), Error);
  EXPECT_THROW(gauss_iterate(agm(), std::vector<double>{1, 2, 3}), Error);
  EXPECT_THROW(gauss_iterate(agm(), std::vector<double>{-1, 2}), Error);
}

TEST(GaussIterateProperty, EstimateInvariants) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coord(0.1, 20);
  const std::vector<MeanTypeMapping> mappings = {
      agm(), arith_harm(),
      MeanTypeMapping::from_strings({"power:3", "median", "quasi:log"}, Interval::positive()),
      shift_average(3, Interval::positive()), shift_average(5, Interval::positive())};
  for (int trial = 0; trial < 400; ++trial) {
    const auto& m = mappings[trial % mappings.size()];
    std::vector<double> v(m.p());
    for (auto& x : v) x = coord(rng);
    const auto est = gauss_iterate(m, v);
    ASSERT_TRUE(est.converged()) << m.id();
    EXPECT_LT(est.final_diameter, kDefaultTol);
    EXPECT_GE(est.value, *std::min_element(v.begin(), v.end()));
    EXPECT_LE(est.value, *std::max_element(v.begin(), v.end()));
    for (double x : est.final_vector) EXPECT_LE(std::abs(est.value - x), est.final_diameter);
    // The limit does not change after one more application.
    const auto shifted = gauss_iterate(m, map_apply(m, v));
    EXPECT_NEAR(shifted.value, est.value, 2 * kDefaultTol + 1e-15 * est.value) << m.id();
  }
}

TEST(InvariantMean, Examples) {
  const auto k_ah = invariant_mean(arith_harm());
  EXPECT_NEAR(k_ah(std::vector<double>{1, 9}), 3.0, 1e-12);
  EXPECT_EQ(invariant_mean(agm())(std::vector<double>{1, 1}), 1.0);

  const auto k_shift = invariant_mean(shift_average(3));
  const double value = k_shift(std::vector<double>{0, 1, 0});
  EXPECT_NEAR(value, oracle::shift3_limit_by_iteration({0, 1, 0}, 1e-14), kDefaultTol);
  EXPECT_EQ(k_shift.arity(), 3u);
}

TEST(InvariantMean, InternalAndReflexive) {
  const auto k = invariant_mean(agm());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(1, 10);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> v = {coord(rng), coord(rng)};
    const double value = k(v);
    EXPECT_GE(value, std::min(v[0], v[1]));
    EXPECT_LE(value, std::max(v[0], v[1]));
    const double c = coord(rng);
    EXPECT_EQ(k(std::vector<double>{c, c}), c);
  }
}

TEST(InvarianceResidual, Examples) {
  const auto k = invariant_mean(agm());
  const auto own = invariance_residual(k, agm(), 500, 42);
  EXPECT_LE(own.value, 2 * kDefaultTol);
  EXPECT_EQ(own.evaluated, 500u);

  // Arithmetic mean is not AGM-invariant: at (1, 9), A = 5 but A(M(v)) = 4.
  const auto arithmetic = as_function(MeanSpec::parse("arithmetic", 2), Interval::positive());
  EXPECT_EQ(arithmetic(std::vector<double>{1, 9}), 5.0);
  EXPECT_EQ(arithmetic(map_apply(agm(), std::vector<double>{1, 9})), 4.0);
  EXPECT_GT(invariance_residual(arithmetic, agm(), 500, 42).value, 0.001);

  const auto geometric = as_function(MeanSpec::parse("geometric", 2), Interval::positive());
  EXPECT_LE(invariance_residual(geometric, arith_harm(), 1000, 42).value, 1e-12);
}

TEST(InvarianceResidual, DeterministicForSeed) {
  const auto arithmetic = as_function(MeanSpec::parse("arithmetic", 2), Interval::positive());
  const auto a = invariance_residual(arithmetic, agm(), 300, 5);
  const auto b = invariance_residual(arithmetic, agm(), 300, 5);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.worst, b.worst);
}

TEST(UniquenessProbe, Examples) {
  GaussOptions mid, lo;
  lo.readout = Readout::Min;
  for (const auto& m : {agm(), shift_average(3)}) {
    const auto report = uniqueness_probe(invariant_mean(m, mid), invariant_mean(m, lo),
                                         m.domain(), m.p(), 300, 42, {.box = m.sample_box()});
    EXPECT_LE(report.value, 2 * kDefaultTol) << m.id();
  }

  const auto geometric = as_function(MeanSpec::parse("geometric", 2), Interval::positive());
  const auto report = uniqueness_probe(geometric, invariant_mean(arith_harm()),
                                       Interval::positive(), 2, 500, 42, {.box = Box{0.5, 100}});
  EXPECT_LE(report.value, 1e-10);

  const auto arithmetic = as_function(MeanSpec::parse("arithmetic", 2), Interval::positive());
  const auto differ = uniqueness_probe(arithmetic, geometric, Interval::closed(1, 4), 2, 100, 1);
  EXPECT_GE(differ.value, 0.25);
  EXPECT_EQ(std::abs(arithmetic(std::vector<double>{1, 4}) -
                     geometric(std::vector<double>{1, 4})),
            0.5);
}
