#include <gtest/gtest.h>

#include <sstream>

#include "hypercert/asymptotics.hpp"

using namespace hypercert;

namespace {

const CertificationMode kPaper1 = paper_mode(Rat(1));

SweepSample make(Quantity q, int dim, const Rat& v) {
  SweepSample s;
  s.quantity = q;
  s.dim = dim;
  s.enclosure = RatInterval::point(v);
  return s;
}

}  // namespace

TEST(Dims, Progressions) {
  EXPECT_EQ(arithmetic_dims(8, 20, 4), (std::vector<int>{8, 12, 16, 20}));
  EXPECT_EQ(geometric_dims(25, 400, 2), (std::vector<int>{25, 50, 100, 200, 400}));
  EXPECT_THROW(arithmetic_dims(5, 4, 1), Error);
  EXPECT_THROW(geometric_dims(5, 40, 1), Error);
}

TEST(Quantity, NamesRoundTrip) {
  for (Quantity q : {Quantity::c_hat, Quantity::n_log_ratio, Quantity::n_c_minus, Quantity::rho0,
                     Quantity::lambda_const})
    EXPECT_EQ(parse_quantity(to_string(q)), q);
  EXPECT_THROW(parse_quantity("zeta"), Error);
}

TEST(Richardson, ExactOnAffineSequences) {
  EXPECT_EQ(richardson(Rat(5) + Rat(7, 10), Rat(5) + Rat(7, 20)), Rat(5));
  EXPECT_EQ(richardson(Rat(3, 7), Rat(3, 7)), Rat(3, 7));
  const RatInterval r = richardson(make(Quantity::c_hat, 10, Rat(57, 10)), make(Quantity::c_hat, 20, Rat(107, 20)));
  EXPECT_EQ(r, RatInterval::point(Rat(5)));
}

TEST(Richardson, RejectsMismatchedPairs) {
  EXPECT_THROW(richardson(make(Quantity::c_hat, 10, Rat(1)), make(Quantity::c_hat, 30, Rat(1))), Error);
  EXPECT_THROW(richardson(make(Quantity::c_hat, 10, Rat(1)), make(Quantity::rho0, 20, Rat(1))), Error);
  SweepSample bad = make(Quantity::c_hat, 20, Rat(1));
  bad.error = "x";
  EXPECT_THROW(richardson(make(Quantity::c_hat, 10, Rat(1)), bad), Error);
}

TEST(Sweep, BelowGuardGivesPerSampleErrors) {
  const auto s = sweep(Quantity::c_hat, {4, 7, 8}, Rat(3), Variant::rational_base, kPaper1);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].error, "dimension below guard threshold");
  EXPECT_TRUE(s[1].error);
  EXPECT_FALSE(s[2].error);
  EXPECT_TRUE(s[2].exact());
}

TEST(Sweep, RhoZeroNotPositiveIsAnErrorForLambda) {
  const auto s = sample_quantity(Quantity::lambda_const, 20, Rat(3), Variant::rational_base, kPaper1);
  EXPECT_TRUE(s.error);
}

TEST(Sweep, ExactValuesMatchDefinitions) {
  const WeightSequence w = build_weights(30, Rat(3));
  const MajorantPair m = c_pair_power(w);
  EXPECT_EQ(sample_quantity(Quantity::c_hat, 30, Rat(3), Variant::rational_base, kPaper1).value(), m.c_hat);
  EXPECT_EQ(sample_quantity(Quantity::n_c_minus, 30, Rat(3), Variant::rational_base, kPaper1).value(),
            Rat(30) * m.c_minus_ub);
  EXPECT_EQ(sample_quantity(Quantity::rho0, 30, Rat(3), Variant::rational_base, kPaper1).value(),
            Rat(17, 2) - m.c_minus_ub);
  const SweepSample lr = sample_quantity(Quantity::n_log_ratio, 30, Rat(3), Variant::rational_base, kPaper1);
  EXPECT_LE(lr.width(), Rat(30) * rat_pow(Rat(10), -14));
  const RatInterval e = exp_enclosure(lr.enclosure.lo / Rat(30), rat_pow(Rat(10), -30));
  EXPECT_LE(e.lo, m.c_hat / m.c_plain);
}

TEST(Sweep, EnclosedSamplesContainExactOnes) {
  SweepOptions enclosed;
  enclosed.exact_max_dim = 0;
  for (Quantity q : {Quantity::c_hat, Quantity::n_log_ratio, Quantity::n_c_minus, Quantity::rho0,
                     Quantity::lambda_const}) {
    const SweepSample a = sample_quantity(q, 60, Rat(3), Variant::rational_base, kPaper1);
    const SweepSample b = sample_quantity(q, 60, Rat(3), Variant::rational_base, kPaper1, enclosed);
    ASSERT_FALSE(a.error || b.error) << to_string(q);
    // Both enclose the same real number, so they must overlap.
    EXPECT_LE(a.enclosure.lo, b.enclosure.hi) << to_string(q);
    EXPECT_LE(b.enclosure.lo, a.enclosure.hi) << to_string(q);
    EXPECT_LT(b.width(), rat_pow(Rat(10), -12) * abs(b.value())) << to_string(q);
  }
}

TEST(Sweep, CHatDecreasesFromDim16) {
  const auto dims = arithmetic_dims(16, 400, 8);
  const auto s = sweep(Quantity::c_hat, dims, Rat(3), Variant::rational_base, kPaper1, {64, 256, 4, Rat(1, 1000)});
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i].enclosure.hi, s[i - 1].enclosure.lo) << s[i].dim;
  EXPECT_GT(s.back().enclosure.lo, exp_enclosure(Rat(3), Rat(1, 1000)).hi);
}

TEST(Sweep, ParallelOutputIsIdentical) {
  const std::vector<int> dims{8, 16, 32, 64, 100, 128};
  SweepOptions one, many;
  many.jobs = 6;
  const auto a = to_csv(sweep(Quantity::n_log_ratio, dims, Rat(3), Variant::rational_base, kPaper1, one));
  const auto b = to_csv(sweep(Quantity::n_log_ratio, dims, Rat(3), Variant::rational_base, kPaper1, many));
  EXPECT_EQ(a, b);
}

TEST(Targets, ClosedForms) {
  EXPECT_EQ(limit_target(Quantity::c_hat, Rat(3), kPaper1).closed_form, "e^3");
  EXPECT_EQ(limit_target(Quantity::n_log_ratio, Rat(3), kPaper1).value, RatInterval::point(Rat(18)));
  EXPECT_EQ(limit_target(Quantity::rho0, Rat(3), kPaper1).value, RatInterval::point(Rat(17, 2)));
  EXPECT_EQ(limit_target(Quantity::rho0, Rat(3), kPaper1).closed_form, "17/2");
  EXPECT_EQ(limit_target(Quantity::rho0, Rat(3), paper_mode()).value, RatInterval::point(Rat(85, 11)));
  const RatInterval n9 = limit_target(Quantity::n_c_minus, Rat(3), kPaper1).value;
  EXPECT_TRUE((RatInterval{Rat::parse("180.769832308688"), Rat::parse("180.769832308690")}).contains(n9));
  const RatInterval lam = limit_target(Quantity::lambda_const, Rat(3), kPaper1).value;
  EXPECT_TRUE((RatInterval{Rat::parse("23.3756"), Rat::parse("23.3757")}).contains(lam));
  EXPECT_EQ(limit_target(Quantity::c_hat, Rat(7, 2), kPaper1).closed_form, "e^(7/2)");
}

TEST(Targets, RelativeDeviation) {
  EXPECT_EQ(relative_deviation(RatInterval::point(Rat(11)), RatInterval::point(Rat(10))), Rat(1, 10));
  EXPECT_EQ(relative_deviation(RatInterval{Rat(9), Rat(10)}, RatInterval::point(Rat(10))), Rat(1, 10));
  EXPECT_THROW(relative_deviation(RatInterval::point(Rat(1)), RatInterval::point(Rat(0))), Error);
}

// Regression bounds frozen from the first verified run at dims {100, 200, 400}
// (const 3, paper mode, margin 1), rounded up.
TEST(LimitReport, FrozenDeviations) {
  const std::vector<std::pair<Quantity, Rat>> frozen{
      {Quantity::c_hat, Rat(75, 10000)},       {Quantity::n_log_ratio, Rat(4, 10000)},
      {Quantity::n_c_minus, Rat(60, 10000)},   {Quantity::rho0, Rat(80, 10000)},
      {Quantity::lambda_const, Rat(5, 100)},
  };
  for (const auto& [q, bound] : frozen) {
    const LimitReport r = limit_report(q, {100, 200, 400}, Rat(3), Variant::rational_base, kPaper1);
    ASSERT_TRUE(r.extrapolated_deviation);
    EXPECT_LE(*r.extrapolated_deviation, bound) << to_string(q);
    EXPECT_EQ(r.samples.size(), 3u);
  }
}

TEST(LimitReport, RenderAndErrors) {
  const LimitReport r = limit_report(Quantity::c_hat, {50, 100}, Rat(3), Variant::rational_base, kPaper1);
  const std::string text = r.render();
  EXPECT_NE(text.find("quantity c_hat"), std::string::npos);
  EXPECT_NE(text.find("target e^3 = 20.085536923187668"), std::string::npos);
  EXPECT_NE(text.find("extrapolated"), std::string::npos);
  EXPECT_THROW(limit_report(Quantity::c_hat, {4, 8}, Rat(3), Variant::rational_base, kPaper1), Error);
  const LimitReport single = limit_report(Quantity::c_hat, {50}, Rat(3), Variant::rational_base, kPaper1);
  EXPECT_FALSE(single.extrapolated);
}

TEST(Csv, Format) {
  const auto s = sweep(Quantity::c_hat, {5, 9}, Rat(3), Variant::rational_base, kPaper1);
  std::istringstream in(to_csv(s));
  std::string header, bad, good;
  std::getline(in, header);
  std::getline(in, bad);
  std::getline(in, good);
  EXPECT_EQ(header, "quantity,dim,value_decimal,value_exact,enclosure_width");
  EXPECT_EQ(bad, "c_hat,5,error,dimension below guard threshold,");
  const std::string prefix = "c_hat,9,22474.060";
  EXPECT_EQ(good.substr(0, prefix.size()), prefix);
  EXPECT_EQ(good.substr(good.rfind(',') + 1), "0.00e0");
  // 15 fractional digits.
  const auto first = good.find(',', 6);
  const auto second = good.find(',', first + 1);
  const std::string dec = good.substr(first + 1, second - first - 1);
  EXPECT_EQ(dec.size() - dec.find('.') - 1, 15u);
}
