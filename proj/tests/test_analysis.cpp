#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "typdeg/analysis.hpp"
#include "typdeg/catalog.hpp"
#include "typdeg/closedform.hpp"
#include "typdeg/error.hpp"

using namespace typdeg;
using namespace typdeg::analysis;
using degrees::Kind;
using degrees::Method;

namespace {

SequencePoint exact_point(int n, const ExactRational& v) {
  SequencePoint p;
  p.n = n;
  p.value = to_double(v);
  p.exact = v;
  p.method = Method::ClosedForm;
  return p;
}

}  // namespace

TEST(NList, Forms) {
  EXPECT_EQ(parse_n_list("3,5,8"), (std::vector<int>{3, 5, 8}));
  EXPECT_EQ(parse_n_list("2:10:4"), (std::vector<int>{2, 6, 10}));
  EXPECT_EQ(parse_n_list("50:500:loggrid"), (std::vector<int>{50, 100, 200, 500}));
  EXPECT_EQ(parse_n_list("1:20:loggrid"), (std::vector<int>{1, 2, 5, 10, 20}));
  for (const char* bad : {"", "5,3", "0,1", "a", "1:5:0", "3:1:1", "1:5:x"}) EXPECT_THROW(parse_n_list(bad), Error) << bad;
}

TEST(Sequence, AutoPrefersEnumerationThenClosedForm) {
  auto f = *catalog::lookup("fneq", Signature::function());
  Budget b;
  auto seq = build_sequence(Signature::function(), f, Kind::Typ, {4, 8, 9, 40}, Convention::Free, MethodPolicy::Auto, b);
  ASSERT_EQ(seq.size(), 4U);
  EXPECT_EQ(*seq[0].method, Method::Enumeration);
  EXPECT_EQ(*seq[1].method, Method::Enumeration);
  EXPECT_EQ(*seq[2].method, Method::ClosedForm);
  EXPECT_EQ(*seq[3].method, Method::ClosedForm);
  EXPECT_EQ(*seq[0].exact, make_rational(189, 256));
  EXPECT_EQ(*seq[3].exact, make_rational(closedform::typ_count_no_fixed_points(40), pow(ExactInteger(40), 40)));
}

TEST(Sequence, FallsBackToMonteCarloAndRecordsFailures) {
  auto iso = *catalog::lookup("iso", Signature::graph());
  Budget b;
  b.sampling.samples = 500;
  auto seq = build_sequence(Signature::graph(), iso, Kind::MuAtLeast, {3, 12}, Convention::Free, MethodPolicy::Auto, b, 1);
  EXPECT_EQ(*seq[0].method, Method::Enumeration);
  EXPECT_EQ(*seq[1].method, Method::MonteCarlo);
  EXPECT_TRUE(seq[1].ci.has_value());
  EXPECT_FALSE(seq[1].exact.has_value());

  auto forced = build_sequence(Signature::graph(), iso, Kind::Typ, {3, 4}, Convention::Free, MethodPolicy::ClosedForm, b);
  for (const auto& p : forced) {
    EXPECT_FALSE(p.method.has_value());
    EXPECT_FALSE(p.error.empty());
  }
  auto ntr = build_sequence(Signature::graph(), iso, Kind::Ntr, {3, 4, 5, 6}, Convention::Free, MethodPolicy::Auto, b);
  ASSERT_EQ(ntr.size(), 2U);
  EXPECT_EQ(ntr[0].n, 4);
}

TEST(Convergence, DecreasingGapToTarget) {
  std::vector<SequencePoint> seq;
  for (int n : {50, 100, 200, 500}) {
    seq.push_back(exact_point(n, make_rational(closedform::typ_count_no_fixed_points(n), pow(ExactInteger(n), n))));
  }
  auto r = convergence_report(seq, 1.0);
  EXPECT_EQ(r.trend, Trend::DecreasingGap);
  EXPECT_EQ(r.window, 3U);
  EXPECT_NEAR(*r.last_gap, 1.0 - seq.back().value, 1e-15);
  ASSERT_TRUE(r.aitken_extrapolation.has_value());
}

TEST(Convergence, AitkenRecoversGeometricLimit) {
  std::vector<SequencePoint> seq;
  for (int i = 0; i < 5; ++i) {
    // 2 - 1/3^i converges geometrically to 2.
    seq.push_back(exact_point(i + 1, 2 - make_rational(ExactInteger(1), pow(ExactInteger(3), i))));
  }
  auto r = convergence_report(seq, std::nullopt);
  EXPECT_EQ(r.trend, Trend::DecreasingGap);
  EXPECT_DOUBLE_EQ(*r.aitken_extrapolation, 2.0);
  EXPECT_FALSE(r.last_gap.has_value() && r.target.has_value());
}

TEST(Convergence, AitkenOnNoFixedPointProbability) {
  std::vector<SequencePoint> seq;
  for (int n : {100, 200, 400}) seq.push_back(exact_point(n, closedform::mu_no_fixed_points(n)));
  auto r = convergence_report(seq, std::exp(-1.0));
  ASSERT_TRUE(r.aitken_extrapolation.has_value());
  EXPECT_NEAR(*r.aitken_extrapolation, std::exp(-1.0), 1e-4);
}

TEST(Sequence, FloatValuesAreRoundedExactValues) {
  auto f = *catalog::lookup("ffix", Signature::function());
  auto seq = build_sequence(Signature::function(), f, Kind::MuAtLeast, {2, 3, 5, 9, 30}, Convention::Free,
                            MethodPolicy::Auto, {}, 2);
  for (const auto& p : seq) {
    ASSERT_TRUE(p.exact.has_value()) << p.n;
    EXPECT_EQ(p.value, to_double(*p.exact));
    EXPECT_FALSE(p.ci.has_value());
  }
}

TEST(Convergence, NonMonotoneAndInconclusive) {
  std::vector<SequencePoint> seq = {exact_point(1, make_rational(1, 2)), exact_point(2, make_rational(3, 4)),
                                    exact_point(3, make_rational(1, 2)), exact_point(4, make_rational(3, 4))};
  EXPECT_EQ(convergence_report(seq, 1.0).trend, Trend::NonMonotone);

  seq.back().exact.reset();
  seq.back().method = Method::MonteCarlo;
  seq.back().ci = std::make_pair(0.7, 0.8);
  EXPECT_EQ(convergence_report(seq, 1.0).trend, Trend::Inconclusive);

  EXPECT_THROW(convergence_report({seq[0], seq[1]}, 1.0), Error);
}

TEST(Limits, Registered) {
  auto lim = [](const char* sig, const char* prop, Kind kind, int m = 0) {
    auto s = Signature::parse(sig);
    return registered_limit(s, Convention::Free, catalog::resolve_property(prop, s), kind, m);
  };
  EXPECT_EQ(lim("function", "fneq", Kind::Typ), 1.0);
  EXPECT_EQ(lim("function", "fneq", Kind::Ntr), 0.0);
  EXPECT_EQ(lim("function", "ffix", Kind::Typ), 0.0);
  EXPECT_NEAR(*lim("function", "nofix", Kind::Mu), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(*lim("function", "ffix", Kind::MuAtLeast, 1), 1 - std::exp(-1.0), 1e-15);
  EXPECT_EQ(lim("unary:1", "u(1)", Kind::Typ), 0.5);
  EXPECT_EQ(lim("unary:2", "basic(1,2;1,1)", Kind::Typ), 0.0);
  EXPECT_EQ(lim("unary:2", "u(1)", Kind::MuAtLeast, 3), 1.0);
  EXPECT_EQ(lim("graph", "iso", Kind::MuAtLeast, 1), 0.0);
  EXPECT_FALSE(lim("function", "F(F(x)) = x", Kind::Typ).has_value());
}

TEST(Csv, HeaderAndRows) {
  std::vector<SequencePoint> seq = {exact_point(2, make_rational(1, 4))};
  SequencePoint failed;
  failed.n = 3;
  failed.error = "cap exceeded";
  seq.push_back(failed);
  std::istringstream in(to_csv(seq, 1.0));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,kind,method,value,exact,ci_low,ci_high,target,gap");
  std::getline(in, line);
  EXPECT_EQ(line, "2,typ,closed-form,0.25,1/4,,,1,0.75");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 11), "3,typ,none,");
}
