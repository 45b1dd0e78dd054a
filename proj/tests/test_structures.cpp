#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <unordered_set>

#include "typdeg/combinatorics.hpp"
#include "typdeg/error.hpp"
#include "typdeg/evaluator.hpp"
#include "typdeg/structure.hpp"

using namespace typdeg;
using structures::Space;
using structures::Structure;

namespace {

std::vector<Space> small_spaces() {
  std::vector<Space> out;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 4; ++n) {
      out.push_back({Signature::unary(k), n, Convention::Free});
      if ((1 << n) - 2 >= k) out.push_back({Signature::unary(k), n, Convention::PaperDistinct});
    }
  }
  for (int n = 1; n <= 5; ++n) out.push_back({Signature::function(), n, Convention::Free});
  for (int n = 1; n <= 5; ++n) out.push_back({Signature::graph(), n, Convention::Free});
  return out;
}

std::string label(const Space& s) {
  return s.sig.to_string() + "/" + to_string(s.effective_convention()) + "/n=" + std::to_string(s.n);
}

}  // namespace

TEST(StructureCount, MatchesFormulas) {
  EXPECT_EQ(structures::structure_count({Signature::unary(3), 4, Convention::Free}), pow2(12));
  EXPECT_EQ(structures::structure_count({Signature::unary(2), 3, Convention::PaperDistinct}), 6 * 5);
  EXPECT_EQ(structures::structure_count({Signature::function(), 5, Convention::Free}), 3125);
  EXPECT_EQ(structures::structure_count({Signature::graph(), 5, Convention::Free}), 1024);
  // Convention is ignored outside the unary family.
  EXPECT_EQ(structures::structure_count({Signature::graph(), 4, Convention::PaperDistinct}), 64);
  try {
    structures::structure_count({Signature::unary(3), 2, Convention::PaperDistinct});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
  }
}

TEST(StructureIndex, EnumerationIsABijection) {
  for (const auto& space : small_spaces()) {
    const std::uint64_t total = structures::enumerable_count(space);
    std::unordered_set<std::size_t> hashes;
    std::set<std::string> seen;
    structures::Enumerator it(space, 0, total);
    std::uint64_t visited = 0;
    while (it.next()) {
      const Structure& m = it.current();
      ASSERT_EQ(it.index(), visited) << label(space);
      ASSERT_EQ(structures::encode_structure(space, m), ExactInteger(visited)) << label(space);
      ASSERT_TRUE(structures::decode_structure(space, ExactInteger(visited)) == m) << label(space);
      // Distinctness via a canonical description.
      std::string key;
      if (space.sig.family() == Family::UnaryPredicates) {
        for (int p = 0; p < space.sig.k(); ++p) {
          for (int a : m.predicate_members(p)) key += std::to_string(a);
          key += '|';
        }
      } else if (space.sig.family() == Family::UnaryFunction) {
        for (auto v : m.table()) key += std::to_string(v) + ",";
      } else {
        for (auto [a, b] : m.edges()) key += std::to_string(a) + "-" + std::to_string(b) + ",";
      }
      ASSERT_TRUE(seen.insert(key).second) << label(space) << " duplicate " << key;
      ++visited;
    }
    EXPECT_EQ(visited, total) << label(space);
  }
}

TEST(StructureIndex, PaperDistinctIsTheFilteredFreeOrder) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 2; n <= 4; ++n) {
      if ((1 << n) - 2 < k) continue;
      Space free{Signature::unary(k), n, Convention::Free};
      Space distinct{Signature::unary(k), n, Convention::PaperDistinct};
      const std::uint64_t full = (1U << n) - 1;
      std::uint64_t next = 0;
      for (std::uint64_t i = 0; i < structures::enumerable_count(free); ++i) {
        std::set<std::uint64_t> sets;
        bool ok = true;
        for (int p = 0; p < k; ++p) {
          std::uint64_t w = (i >> (p * n)) & full;
          if (w == 0 || w == full || !sets.insert(w).second) ok = false;
        }
        if (!ok) continue;
        Structure m = structures::decode_structure(free, ExactInteger(i));
        ASSERT_TRUE(structures::decode_structure(distinct, ExactInteger(next)) == m) << k << " " << n << " " << i;
        ++next;
      }
      EXPECT_EQ(ExactInteger(next), structures::structure_count(distinct));
      EXPECT_EQ(ExactInteger(next), combinatorics::falling_factorial(ExactInteger((1 << n) - 2), k));
    }
  }
}

TEST(StructureIndex, ChunkedEnumerationCoversTheRange) {
  Space space{Signature::function(), 4, Convention::Free};
  std::uint64_t visited = 0;
  for (std::uint64_t b = 0; b < 256; b += 37) {
    structures::Enumerator it(space, b, std::min<std::uint64_t>(b + 37, 256));
    while (it.next()) {
      ASSERT_EQ(it.index(), visited);
      ++visited;
    }
  }
  EXPECT_EQ(visited, 256U);
}

TEST(Graph, SymmetricAndIrreflexive) {
  for (int n = 1; n <= 5; ++n) {
    Space space{Signature::graph(), n, Convention::Free};
    structures::Enumerator it(space, 0, structures::enumerable_count(space));
    while (it.next()) {
      const auto& m = it.current();
      for (int a = 0; a < n; ++a) {
        ASSERT_FALSE(m.adjacent(a, a));
        for (int b = 0; b < n; ++b) ASSERT_EQ(m.adjacent(a, b), m.adjacent(b, a));
      }
    }
  }
}

TEST(Graph, PairRankIsLexicographic) {
  for (int n = 2; n <= 9; ++n) {
    std::size_t r = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) EXPECT_EQ(structures::pair_rank(n, a, b), r++);
    }
    EXPECT_EQ(r, structures::pair_count(n));
  }
}

TEST(Atoms, PartitionTheUniverse) {
  std::mt19937_64 seed(1);
  for (int k = 1; k <= 4; ++k) {
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + static_cast<int>(seed() % 8);
      Rng rng(seed());
      Structure m = structures::sample_structure({Signature::unary(k), n, Convention::Free}, rng);
      auto atoms = structures::predicate_atoms(m);
      ASSERT_EQ(atoms.size(), std::size_t{1} << k);
      std::vector<int> hits(n, 0);
      for (std::size_t e = 0; e < atoms.size(); ++e) {
        for (int p = 0; p < k; ++p) {
          ASSERT_EQ(atoms[e].signs[p], static_cast<int>((e >> (k - 1 - p)) & 1U));
        }
        for (int a : atoms[e].elements) {
          ++hits[a];
          for (int p = 0; p < k; ++p) ASSERT_EQ(m.in_predicate(p, a), atoms[e].signs[p] == 1);
        }
      }
      for (int h : hits) ASSERT_EQ(h, 1);
    }
  }
  EXPECT_THROW(structures::predicate_atoms(Structure::graph_from_edges(3, {})), Error);
}

TEST(Atoms, UnionOfAtomsHasTheSummedExtension) {
  // phi_E: the disjunction of the atom formulas for the sign vectors in E.
  std::mt19937_64 seed(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 1 + static_cast<int>(seed() % 3);
    const int n = 1 + static_cast<int>(seed() % 6);
    Rng rng(seed());
    Structure m = structures::sample_structure({Signature::unary(k), n, Convention::Free}, rng);
    auto atoms = structures::predicate_atoms(m);
    std::optional<logic::Formula> phi;
    std::size_t want = 0;
    for (const auto& atom : atoms) {
      if (seed() % 2 == 0) continue;
      logic::BasicPropertyDescriptor d;
      for (int p = 0; p < k; ++p) {
        d.indices.push_back(p + 1);
        d.signs.push_back(atom.signs[p]);
      }
      auto f = d.to_formula();
      phi = phi ? logic::Formula::disjunction(*phi, f) : f;
      want += atom.elements.size();
    }
    if (!phi) continue;
    ASSERT_EQ(static_cast<std::size_t>(logic::extension_size(*phi, m)), want) << logic::render(*phi);
  }
}

TEST(StructureIndex, PaperDistinctTuplesAreProperAndDistinct) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 2; n <= 4; ++n) {
      Space space{Signature::unary(k), n, Convention::PaperDistinct};
      if ((1 << n) - 2 < k) continue;
      structures::Enumerator it(space, 0, structures::enumerable_count(space));
      while (it.next()) {
        std::set<std::vector<int>> seen;
        for (int p = 0; p < k; ++p) {
          auto members = it.current().predicate_members(p);
          ASSERT_FALSE(members.empty());
          ASSERT_LT(static_cast<int>(members.size()), n);
          ASSERT_TRUE(seen.insert(members).second);
        }
      }
    }
  }
}

TEST(Graph, EdgeAtomIsSymmetricAndIrreflexive) {
  auto e = logic::parse_property("forall y. (E(x, y) <-> E(y, x)) & !E(x, x)", Signature::graph());
  for (int n = 1; n <= 5; ++n) {
    Space space{Signature::graph(), n};
    structures::Enumerator it(space, 0, structures::enumerable_count(space));
    while (it.next()) ASSERT_EQ(logic::extension_size(e, it.current()), n);
  }
}

TEST(Sampling, UniformOverSmallSpaces) {
  // Chi-square against uniform with a loose critical value.
  for (const Space& space : {Space{Signature::function(), 3, Convention::Free},
                             Space{Signature::unary(2), 2, Convention::PaperDistinct},
                             Space{Signature::graph(), 3, Convention::Free}}) {
    const std::uint64_t cells = structures::enumerable_count(space);
    const int draws = 20000;
    std::vector<int> counts(cells, 0);
    Rng rng = Rng::for_stream(42, 0);
    for (int i = 0; i < draws; ++i) {
      auto m = structures::sample_structure(space, rng);
      ++counts[to_u64(structures::encode_structure(space, m))];
    }
    const double expected = static_cast<double>(draws) / static_cast<double>(cells);
    double chi2 = 0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // df <= 26; the 0.999 quantile for df = 26 is about 54.
    EXPECT_LT(chi2, 60.0) << label(space);
  }
}

TEST(Sampling, StreamsAreReproducible) {
  Space space{Signature::graph(), 6, Convention::Free};
  Rng a = Rng::for_stream(9, 3);
  Rng b = Rng::for_stream(9, 3);
  Rng c = Rng::for_stream(9, 4);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    auto x = structures::sample_structure(space, a);
    ASSERT_TRUE(x == structures::sample_structure(space, b));
    differs |= !(x == structures::sample_structure(space, c));
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BelowIsInRangeAndHitsEveryValue) {
  Rng r(123);
  std::map<std::uint64_t, int> seen;
  for (int i = 0; i < 7000; ++i) {
    auto v = r.below(7);
    ASSERT_LT(v, 7U);
    ++seen[v];
  }
  EXPECT_EQ(seen.size(), 7U);
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Structure, Constructors) {
  auto u = Structure::unary_from_sets(4, {{0, 3}, {1}});
  EXPECT_EQ(u.k(), 2);
  EXPECT_EQ(u.predicate_members(0), (std::vector<int>{0, 3}));
  auto f = Structure::function_from_table({1, 2, 0});
  EXPECT_EQ(f.apply(2), 0);
  auto g = Structure::graph_from_edges(4, {{2, 0}, {1, 3}});
  EXPECT_EQ(g.edges(), (std::vector<std::pair<int, int>>{{0, 2}, {1, 3}}));
  EXPECT_THROW(Structure::function_from_table({0, 5}), Error);
  EXPECT_THROW(Structure::graph_from_edges(3, {{1, 1}}), Error);
  EXPECT_THROW(Structure::unary_from_sets(2, {{2}}), Error);
}
