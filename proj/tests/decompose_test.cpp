#include "meanmap/decompose.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace meanmap;

namespace {

MeanTypeMapping agm() {
  auto m = MeanTypeMapping::from_strings({"arithmetic", "quasi:log"}, Interval::positive(),
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

}  // namespace

TEST(DiagonalRestriction, Examples) {
  const auto m = agm();
  EXPECT_EQ(diagonal_restriction(InvariantFunction::parse("product", m))(3), 9.0);
  EXPECT_EQ(diagonal_restriction(InvariantFunction::parse("mean:geometric", m))(5), 5.0);
  EXPECT_EQ(diagonal_restriction(InvariantFunction::parse("coord:1", m))(7.5), 7.5);
  EXPECT_EQ(diagonal_restriction(InvariantFunction::parse("invariant", m))(2.25), 2.25);
}

TEST(DiagonalRestriction, IsExact) {
  const auto m = arith_harm();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> coord(0.5, 10);
  for (const char* text : {"product", "sum", "square(mean:power:3)", "exp(coord:2)",
                           "affine:2,-1(invariant)"}) {
    const auto f = InvariantFunction::parse(text, m);
    const auto phi = diagonal_restriction(f);
    for (int i = 0; i < 100; ++i) {
      const double x = coord(rng);
      EXPECT_EQ(phi(x), f(std::vector<double>{x, x})) << text;
    }
  }
}

TEST(InvariantFunction, ParsesCatalog) {
  const auto m = agm();
  const std::vector<double> v = {2, 8};
  EXPECT_EQ(InvariantFunction::parse("product", m)(v), 16.0);
  EXPECT_EQ(InvariantFunction::parse("SUM", m)(v), 10.0);
  EXPECT_EQ(InvariantFunction::parse("coord:2", m)(v), 8.0);
  EXPECT_EQ(InvariantFunction::parse("const:-1.5", m)(v), -1.5);
  EXPECT_NEAR(InvariantFunction::parse("mean:harmonic", m)(v), 3.2, 1e-15);
  EXPECT_NEAR(InvariantFunction::parse("sqrt(product)", m)(v), 4.0, 1e-15);
  EXPECT_NEAR(InvariantFunction::parse("pow:3(coord:1)", m)(v), 8.0, 1e-14);
  EXPECT_NEAR(InvariantFunction::parse("log(exp(coord:1))", m)(v), 2.0, 1e-15);
  EXPECT_NEAR(InvariantFunction::parse("affine:3,1(identity(sum))", m)(v), 31.0, 1e-15);
  EXPECT_NEAR(InvariantFunction::parse("invariant", m)(v), oracle::agm_by_quadrature(2, 8),
              1e-10);

  EXPECT_THROW(InvariantFunction::parse("coord:3", m), Error);
  EXPECT_THROW(InvariantFunction::parse("cube(product)", m), Error);
  EXPECT_THROW(InvariantFunction::parse("square(product", m), Error);
  EXPECT_THROW(InvariantFunction::parse("mean:bogus", m), Error);
  EXPECT_THROW(InvariantFunction::parse("affine:1(sum)", m), Error);
  EXPECT_THROW(InvariantFunction::parse("", m), Error);
  EXPECT_THROW(InvariantFunction::parse("product", m)(std::vector<double>{1, 2, 3}), Error);
  EXPECT_THROW(InvariantFunction::parse("log(const:-1)", m)(v), Error);
}

TEST(CheckInvariance, Examples) {
  EXPECT_LE(check_invariance(InvariantFunction::parse("product", arith_harm()), arith_harm(),
                             1000, 42)
                .value,
            1e-12);

  const auto mean_a = InvariantFunction::parse("mean:arithmetic", agm());
  EXPECT_EQ(std::abs(mean_a(map_apply(agm(), std::vector<double>{1, 9})) -
                     mean_a(std::vector<double>{1, 9})),
            1.0);
  EXPECT_GT(check_invariance(mean_a, agm(), 500, 42).value, 0.01);

  EXPECT_EQ(check_invariance(InvariantFunction::parse("const:3", agm()), agm(), 100, 1).value,
            0.0);
}

TEST(VerifyDecomposition, ProductUnderArithmeticHarmonic) {
  const auto m = arith_harm();
  const auto report =
      verify_decomposition(InvariantFunction::parse("product", m), m, {}, 500, 42);
  EXPECT_LE(report.invariance_residual, 1e-12);
  EXPECT_LE(report.decomposition_residual, 1e-10);
  EXPECT_EQ(report.evaluated, 500u);
  EXPECT_FALSE(report.flagged());
  EXPECT_GE(report.k_steps.min, 0u);
  EXPECT_LE(report.k_steps.max, 10u);
}

TEST(VerifyDecomposition, InvariantMeanItself) {
  for (const auto& m : {agm(), shift_average(3, Interval::positive())}) {
    GaussOptions options;
    const auto report =
        verify_decomposition(InvariantFunction::parse("invariant", m, options), m, options,
                             300, 7);
    EXPECT_LE(report.decomposition_residual, 2 * options.tol) << m.id();
    EXPECT_LE(report.invariance_residual, 2 * options.tol) << m.id();
    EXPECT_FALSE(report.flagged());
  }
}

TEST(VerifyDecomposition, NonInvariantFunctionIsFlagged) {
  const auto m = agm();
  const auto f = InvariantFunction::parse("coord:1", m);
  // At v = (1, 9): F(v) = 1 while phi(K(v)) = AGM(1, 9) = 3.936...
  const double k19 = oracle::agm_by_quadrature(1, 9);
  EXPECT_NEAR(k19, 3.93623550364955548, 1e-12);
  const double gap = std::abs(diagonal_restriction(f)(invariant_mean(m)(std::vector<double>{1, 9})) -
                              f(std::vector<double>{1, 9}));
  EXPECT_NEAR(gap, k19 - 1.0, 1e-10);

  const auto report = verify_decomposition(f, m, {}, 200, 42);
  EXPECT_GT(report.invariance_residual, 0.01);
  EXPECT_GT(report.decomposition_residual, 0.01);
  ASSERT_TRUE(report.flagged());
  EXPECT_NE(report.flags.front().find("invariance-not-supported"), std::string::npos);
}

TEST(VerifyDecomposition, RoundTripThroughOuterFunction) {
  // F = psi(K) with psi(t) = t^2; Lip(psi) on [1, 10] is 20.
  const auto m = agm();
  GaussOptions options;
  const auto f = InvariantFunction::parse("square(invariant)", m, options);
  const auto report = verify_decomposition(f, m, options, 300, 3);
  EXPECT_LE(report.decomposition_residual, 2 * options.tol * 20.0);
}

TEST(VerifyDecomposition, MaxIterIsFlaggedNotThrown) {
  const auto m = MeanTypeMapping::from_strings({"projection:2", "projection:1"},
                                               Interval::closed(0, 1));
  GaussOptions options;
  options.max_iter = 50;
  const auto report =
      verify_decomposition(InvariantFunction::parse("sum", m, options), m, options, 40, 1);
  EXPECT_GT(report.max_iter_samples, 0u);
  EXPECT_TRUE(report.flagged());
  EXPECT_EQ(report.k_steps.max, 50u);
}
