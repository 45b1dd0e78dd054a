#include <gtest/gtest.h>

#include <random>

#include "typdeg/catalog.hpp"
#include "typdeg/error.hpp"
#include "typdeg/serialize.hpp"

using namespace typdeg;
using structures::Space;

TEST(StructureJson, RoundTripsRandomStructures) {
  std::mt19937_64 seed(2);
  for (const Signature& sig : {Signature::unary(3), Signature::function(), Signature::graph()}) {
    for (int i = 0; i < 200; ++i) {
      Rng rng(seed());
      const int n = 1 + static_cast<int>(seed() % 12);
      auto m = structures::sample_structure(Space{sig, n}, rng);
      auto j = io::to_json(m);
      EXPECT_TRUE(io::structure_from_json(io::Json::parse(j.dump())) == m) << j.dump();
    }
  }
}

TEST(StructureJson, Layout) {
  auto f = structures::Structure::function_from_table({1, 0, 0});
  EXPECT_EQ(io::to_json(f).dump(), R"({"family":"function","n":3,"payload":[2,1,1]})");
  auto g = structures::Structure::graph_from_edges(3, {{1, 2}});
  EXPECT_EQ(io::to_json(g).dump(), R"({"family":"graph","n":3,"payload":"4"})");
  auto u = structures::Structure::unary_from_sets(2, {{0}, {1}});
  EXPECT_EQ(io::to_json(u).dump(), R"({"family":"unary","n":2,"k":2,"payload":"9"})");
}

TEST(StructureJson, Malformed) {
  for (const char* text : {R"({"family":"tree","n":2,"payload":"0"})", R"({"family":"graph","payload":"0"})",
                           R"({"family":"graph","n":3,"payload":"zz"})",
                           R"({"family":"function","n":3,"payload":[1,2]})"}) {
    EXPECT_THROW(io::structure_from_json(io::Json::parse(text)), Error) << text;
  }
}

TEST(ReportJson, DegreeReportFields) {
  auto f = *catalog::lookup("fneq", Signature::function());
  auto r = degrees::typicality_degree({Signature::function(), 4}, f);
  auto j = io::to_json(r);
  EXPECT_EQ(j["kind"], "typ");
  EXPECT_EQ(j["favorable"], "189");
  EXPECT_EQ(j["total"], "256");
  EXPECT_EQ(j["value"], "189/256");
  EXPECT_EQ(j["method"], "enumeration");
  EXPECT_DOUBLE_EQ(j["float_value"].get<double>(), 189.0 / 256.0);
}
