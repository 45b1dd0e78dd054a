#include <gtest/gtest.h>

#include <cmath>

#include "typdeg/catalog.hpp"
#include "typdeg/closedform.hpp"
#include "typdeg/combinatorics.hpp"
#include "typdeg/degrees.hpp"
#include "typdeg/error.hpp"

using namespace typdeg;
using namespace typdeg::closedform;
using combinatorics::binomial;
using degrees::Kind;
using structures::Space;

namespace {

ExactRational over_n_to_n(const ExactInteger& count, int n) { return make_rational(count, pow(ExactInteger(n), n)); }

// Functions on n points with exactly j non-fixed points, by inclusion on
// which points move.
ExactInteger functions_moving_exactly(int n, int j) { return binomial(n, j) * pow(ExactInteger(n - 1), j); }

}  // namespace

TEST(ClosedForm, NoFixedPointsMatchesEnumeration) {
  auto nofix = *catalog::lookup("nofix", Signature::function());
  for (int n = 1; n <= 7; ++n) {
    auto r = degrees::truth_probability({Signature::function(), n}, nofix, std::nullopt);
    EXPECT_EQ(r.value, mu_no_fixed_points(n));
  }
  EXPECT_NEAR(to_double(mu_no_fixed_points(10000)), std::exp(-1.0), 1e-3);
}

TEST(ClosedForm, TypicalityCountOfMovedPoints) {
  auto fneq = *catalog::lookup("fneq", Signature::function());
  for (int n = 1; n <= 8; ++n) {
    ExactInteger want = 0;
    for (int j = n / 2 + 1; j <= n; ++j) want += functions_moving_exactly(n, j);
    EXPECT_EQ(typ_count_no_fixed_points(n), want);
    EXPECT_EQ(degrees::typicality_degree({Signature::function(), n}, fneq).favorable, want);
  }
  EXPECT_EQ(typ_count_no_fixed_points(4), 189);
}

TEST(ClosedForm, EulerFactorisation) {
  for (int n = 2; n <= 120; ++n) {
    auto e = euler_factor_terms(n);
    EXPECT_EQ(e.b * e.c, over_n_to_n(typ_count_no_fixed_points(n), n)) << n;
  }
}

TEST(ClosedForm, NeutralityOfMovedPoints) {
  auto fneq = *catalog::lookup("fneq", Signature::function());
  for (int two_n = 2; two_n <= 8; two_n += 2) {
    const int n = two_n / 2;
    EXPECT_EQ(ntr_count_no_fixed_points(two_n), binomial(two_n, n) * pow(ExactInteger(two_n - 1), n));
    EXPECT_EQ(degrees::neutrality_degree({Signature::function(), two_n}, fneq).favorable,
              ntr_count_no_fixed_points(two_n));
  }
  EXPECT_THROW(ntr_count_no_fixed_points(5), Error);
  for (int half = 1; half <= 100; ++half) {
    auto b = no_fixed_points_ntr_bound(half);
    EXPECT_TRUE(b.holds) << half;
    EXPECT_EQ(b.degree, over_n_to_n(ntr_count_no_fixed_points(2 * half), 2 * half));
  }
  EXPECT_LT(to_double(no_fixed_points_ntr_bound(10).degree), 1e-6);
}

TEST(ClosedForm, UnaryAtLeast) {
  auto u = *catalog::lookup("u(1)", Signature::unary(1));
  for (int n = 1; n <= 10; ++n) {
    for (int m = 0; m <= n; ++m) {
      auto r = degrees::truth_probability({Signature::unary(1), n}, u, m);
      EXPECT_EQ(r.value, mu_unary_at_least(n, m)) << n << " " << m;
    }
  }
  EXPECT_EQ(mu_unary_at_least(5, 0), 1);
}

TEST(ClosedForm, SinglePredicateTypicality) {
  for (int n = 1; n <= 201; n += 2) EXPECT_EQ(unary_p1_typ_degree(n), make_rational(1, 2)) << n;
  for (int n = 2; n <= 40; n += 2) EXPECT_LT(unary_p1_typ_degree(n), make_rational(1, 2));
  EXPECT_NEAR(to_double(unary_p1_typ_degree(1000)), 0.5, 0.02);
}

TEST(ClosedForm, FixedPointBracket) {
  auto ffix = *catalog::lookup("ffix", Signature::function());
  for (int n = 1; n <= 7; ++n) {
    for (int m = 1; m <= std::min(n, 3); ++m) {
      auto b = fixed_point_mu_bounds(n, m);
      auto mu = degrees::truth_probability({Signature::function(), n}, ffix, m).value;
      EXPECT_LE(b.lower, mu) << n << " " << m;
      EXPECT_LE(mu, b.upper) << n << " " << m;
    }
  }
  for (int n = 1; n <= 30; ++n) EXPECT_FALSE(fixed_point_mu_bounds(n, 1).vacuous());
}

TEST(ClosedForm, GraphWitnessBounds) {
  EXPECT_EQ(graph_witness_bound(4, GraphWitness::Isolated), make_rational(4, 8));
  EXPECT_EQ(graph_witness_bound(4, GraphWitness::ExactlyK, 2), make_rational(12, 8));
  auto iso = *catalog::lookup("iso", Signature::graph());
  for (int n = 2; n <= 5; ++n) {
    auto mu = degrees::truth_probability({Signature::graph(), n}, iso, 1).value;
    EXPECT_LE(mu, graph_witness_bound(n, GraphWitness::Isolated));
  }
}

TEST(ClosedForm, DiagnosticsAreFlaggedAsSuch) {
  for (int n = 1; n <= 10; ++n) EXPECT_GE(moved_at_least_overcount(n, 0), 1);
  EXPECT_GT(to_double(basic_typ_upper_curve(10, 2)), 0.0);
}

TEST(ClosedForm, RegistryAgreesWithEnumeration) {
  struct Item {
    Signature sig;
    std::string prop;
    Kind kind;
    int m;
  };
  const Item items[] = {
      {Signature::function(), "fneq", Kind::Typ, 0},  {Signature::function(), "fneq", Kind::Ntr, 0},
      {Signature::function(), "fneq", Kind::MuAtLeast, 2}, {Signature::function(), "ffix", Kind::Typ, 0},
      {Signature::function(), "ffix", Kind::MuAtLeast, 1}, {Signature::function(), "nofix", Kind::Mu, 0},
      {Signature::unary(1), "u(1)", Kind::Typ, 0},    {Signature::unary(2), "basic(2;0)", Kind::Typ, 0},
      {Signature::unary(2), "u(1)", Kind::Ntr, 0},    {Signature::unary(2), "u(2)", Kind::MuAtLeast, 3},
  };
  for (const auto& item : items) {
    auto f = *catalog::lookup(item.prop, item.sig);
    for (int n = 2; n <= 6; n += 1) {
      if (item.kind == Kind::Ntr && n % 2 != 0) continue;
      Space space{item.sig, n};
      auto got = lookup(space, f, item.kind, item.m);
      ASSERT_TRUE(got.has_value()) << item.prop << " " << degrees::to_string(item.kind);
      EXPECT_EQ(got->method, degrees::Method::ClosedForm);
      ExactRational want;
      switch (item.kind) {
        case Kind::Typ: want = degrees::typicality_degree(space, f).value; break;
        case Kind::Ntr: want = degrees::neutrality_degree(space, f).value; break;
        case Kind::Mu: want = degrees::truth_probability(space, f, std::nullopt).value; break;
        case Kind::MuAtLeast: want = degrees::truth_probability(space, f, item.m).value; break;
      }
      EXPECT_EQ(got->value, want) << item.prop << " n=" << n;
    }
  }
  // Not registered.
  auto other = catalog::resolve_property("F(F(x)) = x", Signature::function());
  EXPECT_FALSE(lookup({Signature::function(), 4}, other, Kind::Typ).has_value());
  auto iso = *catalog::lookup("iso", Signature::graph());
  EXPECT_FALSE(lookup({Signature::graph(), 4}, iso, Kind::Typ).has_value());
}
