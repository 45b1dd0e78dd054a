#include "typdeg/verify.hpp"

#include <functional>
#include <sstream>
#include <unordered_set>

#include "typdeg/catalog.hpp"
#include "typdeg/closedform.hpp"
#include "typdeg/combinatorics.hpp"
#include "typdeg/error.hpp"
#include "typdeg/evaluator.hpp"
#include "typdeg/montecarlo.hpp"
#include "typdeg/rng.hpp"

namespace typdeg::verify {

std::vector<Case> partition_matrix() {
  return {
      {Signature::unary(1), Convention::Free, "u(1)", 12},
      {Signature::unary(1), Convention::Free, "basic(1;0)", 10},
      {Signature::unary(2), Convention::Free, "u(1)", 6},
      {Signature::unary(2), Convention::Free, "basic(1,2;1,1)", 6},
      {Signature::unary(2), Convention::Free, "basic(1,2;1,0)", 6},
      {Signature::unary(2), Convention::PaperDistinct, "basic(1,2;1,1)", 6, 2},
      {Signature::unary(3), Convention::PaperDistinct, "u(2)", 5, 3},
      {Signature::function(), Convention::Free, "fneq", 6},
      {Signature::function(), Convention::Free, "ffix", 6},
      {Signature::graph(), Convention::Free, "iso", 5},
      {Signature::graph(), Convention::Free, "adjall", 5},
      {Signature::graph(), Convention::Free, "adjk(1)", 5},
  };
}

using combinatorics::binomial;
using logic::Formula;
using structures::Space;

namespace {

class Check {
 public:
  Check(std::string suite, std::string name) {
    result_.suite = std::move(suite);
    result_.name = std::move(name);
  }

  // Records the first failing case; `detail` only runs on failure.
  void expect(bool ok, const std::function<std::string()>& detail) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.detail = detail();
    }
  }
  CheckResult done() const { return result_; }

 private:
  CheckResult result_;
};

std::string str(const ExactInteger& v) { return v.get_str(); }
std::string str(const ExactRational& v) { return to_fraction_string(v); }

std::string describe(const Case& c, int n) {
  return c.sig.to_string() + " " + to_string(c.conv) + " prop=" + c.prop + " n=" + std::to_string(n);
}

std::vector<int> all_thresholds(int n) {
  std::vector<int> t;
  for (int m = 0; m <= n; ++m) t.push_back(m);
  return t;
}

ExactRational ratio(std::uint64_t a, std::uint64_t b) { return make_rational(ExactInteger(a), ExactInteger(b)); }

// ---------------------------------------------------------------------------

std::vector<CheckResult> combinatorics_suite() {
  std::vector<CheckResult> out;
  const std::string s = "combinatorics";
  {
    Check c(s, "pascal");
    for (unsigned long n = 1; n <= 64; ++n) {
      for (unsigned long k = 1; k <= n; ++k) {
        c.expect(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k),
                 [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k); });
      }
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "binomial-row-sum");
    for (unsigned long n = 0; n <= 64; ++n) {
      ExactInteger sum = 0;
      for (unsigned long k = 0; k <= n; ++k) sum += binomial(n, k);
      c.expect(sum == pow2(n), [&] { return "n=" + std::to_string(n) + " sum=" + str(sum); });
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "falling-factorial");
    for (unsigned long n = 0; n <= 30; ++n) {
      for (unsigned long k = 0; k <= n; ++k) {
        c.expect(combinatorics::falling_factorial(n, k) * combinatorics::factorial(n - k) == combinatorics::factorial(n),
                 [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k); });
      }
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "stirling-recurrence");
    std::vector<std::vector<ExactInteger>> table(11, std::vector<ExactInteger>(11, 0));
    table[0][0] = 1;
    for (unsigned long n = 1; n <= 10; ++n) {
      for (unsigned long k = 1; k <= n; ++k) table[n][k] = k * table[n - 1][k] + table[n - 1][k - 1];
    }
    for (unsigned long n = 0; n <= 10; ++n) {
      for (unsigned long k = 0; k <= n; ++k) {
        c.expect(combinatorics::stirling2(n, k) == table[n][k],
                 [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k); });
      }
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "stirling-small-k");
    for (unsigned long n = 3; n <= 40; ++n) {
      c.expect(combinatorics::stirling2(n, 2) == pow2(n - 1) - 1, [&] { return "k=2 n=" + std::to_string(n); });
      ExactInteger three = (3 - 3 * pow2(n) + pow(ExactInteger(3), n)) / 6;
      c.expect(combinatorics::stirling2(n, 3) == three, [&] { return "k=3 n=" + std::to_string(n); });
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "half-binomial-sum");
    for (unsigned long n = 1; n <= 64; ++n) {
      ExactInteger h = combinatorics::half_binomial_sum(n);
      ExactInteger expected = n % 2 == 1 ? pow2(n - 1) : pow2(n - 1) - binomial(n, n / 2) / 2;
      c.expect(h == expected, [&] { return "n=" + std::to_string(n) + " got " + str(h); });
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "disjoint-pairs-decomposition");
    for (int q = 2; q <= 30; ++q) {
      auto q_ul = static_cast<unsigned long>(q);
      ExactInteger expected = 2 * combinatorics::stirling2(q_ul, 2) + 6 * combinatorics::stirling2(q_ul, 3);
      c.expect(closedform::disjoint_pair_count(q) == expected, [&] { return "q=" + std::to_string(q); });
    }
    out.push_back(c.done());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> logic_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const std::string s = "logic";
  {
    Check c(s, "catalog-round-trip");
    for (Signature sig : {Signature::unary(3), Signature::function(), Signature::graph()}) {
      for (const auto& e : catalog::entries(sig)) {
        Formula f = *catalog::lookup(e.name, sig);
        c.expect(logic::parse_property(logic::render(f), sig) == f, [&] { return e.name; });
      }
    }
    out.push_back(c.done());
  }
  {
    Check pointwise(s, "negation-pointwise");
    Check altern(s, "at-least-majority");
    Rng rng(opts.seed ^ 0x6c6f676963ULL);
    for (const Case& cs : partition_matrix()) {
      Formula f = catalog::resolve_property(cs.prop, cs.sig);
      Formula neg = Formula::negation(f);
      for (int n = cs.min_n; n <= std::min(cs.max_n, 6); ++n) {
        Space space{cs.sig, n, cs.conv};
        for (int trial = 0; trial < 40; ++trial) {
          auto m = structures::sample_structure(space, rng);
          int a = logic::extension_size(f, m);
          int b = logic::extension_size(neg, m);
          auto ca = logic::classify(f, m);
          auto cb = logic::classify(neg, m);
          pointwise.expect(a + b == n && (ca == logic::Typicality::Typical) == (cb == logic::Typicality::Atypical) &&
                               (ca == logic::Typicality::Neutral) == (cb == logic::Typicality::Neutral),
                           [&] { return describe(cs, n) + " trial=" + std::to_string(trial); });
          altern.expect(logic::satisfies_at_least(f, m, n / 2 + 1) == (ca == logic::Typicality::Typical),
                        [&] { return describe(cs, n) + " trial=" + std::to_string(trial); });
        }
      }
    }
    out.push_back(pointwise.done());
    out.push_back(altern.done());
  }
  {
    Check c(s, "at-least-sentence");
    for (const Case& cs : partition_matrix()) {
      if (cs.conv != Convention::Free) continue;
      Formula f = catalog::resolve_property(cs.prop, cs.sig);
      for (int n = 1; n <= 3; ++n) {
        Space space{cs.sig, n, cs.conv};
        for (int mcount = 1; mcount <= n; ++mcount) {
          logic::Evaluator sentence(logic::at_least_sentence(f, mcount));
          structures::Enumerator it(space, 0, structures::enumerable_count(space));
          while (it.next()) {
            c.expect(sentence.holds(it.current()) == logic::satisfies_at_least(f, it.current(), mcount), [&] {
              return describe(cs, n) + " m=" + std::to_string(mcount) + " index=" + std::to_string(it.index());
            });
          }
        }
      }
    }
    out.push_back(c.done());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> structures_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const std::string s = "structures";
  {
    Check bijection(s, "index-bijection");
    Check distinct(s, "paper-distinct-tuples");
    Check graph(s, "graph-symmetric-irreflexive");
    std::vector<Space> spaces;
    for (int n = 1; n <= 5; ++n) {
      spaces.push_back({Signature::function(), n, Convention::Free});
      spaces.push_back({Signature::graph(), n, Convention::Free});
    }
    for (int k = 1; k <= 3; ++k) {
      for (int n = 1; k * n <= 12; ++n) {
        spaces.push_back({Signature::unary(k), n, Convention::Free});
        if ((1L << n) - 2 >= k) spaces.push_back({Signature::unary(k), n, Convention::PaperDistinct});
      }
    }
    for (const Space& space : spaces) {
      const std::uint64_t count = structures::enumerable_count(space);
      std::unordered_set<std::size_t> hashes;
      std::uint64_t visited = 0;
      structures::Enumerator it(space, 0, count);
      while (it.next()) {
        const auto& m = it.current();
        hashes.insert(m.hash());
        ++visited;
        bijection.expect(structures::encode_structure(space, m) == ExactInteger(it.index()), [&] {
          return space.sig.to_string() + " " + to_string(space.conv) + " n=" + std::to_string(space.n) +
                 " index=" + std::to_string(it.index());
        });
        if (space.conv == Convention::PaperDistinct && space.sig.family() == Family::UnaryPredicates) {
          bool ok = true;
          for (int p = 0; p < space.sig.k(); ++p) {
            auto mem = m.predicate_members(p);
            if (mem.empty() || static_cast<int>(mem.size()) == space.n) ok = false;
            for (int q = p + 1; q < space.sig.k(); ++q) ok = ok && mem != m.predicate_members(q);
          }
          distinct.expect(ok, [&] { return "n=" + std::to_string(space.n) + " index=" + std::to_string(it.index()); });
        }
        if (space.sig.family() == Family::Graph) {
          bool ok = true;
          for (int a = 0; a < space.n; ++a) {
            ok = ok && !m.adjacent(a, a);
            for (int b = 0; b < space.n; ++b) ok = ok && m.adjacent(a, b) == m.adjacent(b, a);
          }
          graph.expect(ok, [&] { return "n=" + std::to_string(space.n) + " index=" + std::to_string(it.index()); });
        }
      }
      // Hash collisions are possible in principle but not for spaces this small.
      bijection.expect(visited == count && hashes.size() == count, [&] {
        return space.sig.to_string() + " " + to_string(space.conv) + " n=" + std::to_string(space.n) +
               " distinct=" + std::to_string(hashes.size()) + " expected=" + std::to_string(count);
      });
    }
    out.push_back(bijection.done());
    out.push_back(distinct.done());
    out.push_back(graph.done());
  }
  {
    Check c(s, "atom-partition");
    Rng rng(opts.seed ^ 0x61746f6dULL);
    for (int k = 1; k <= 3; ++k) {
      for (int n = 1; n <= 6; ++n) {
        Space space{Signature::unary(k), n, Convention::Free};
        for (int trial = 0; trial < 20; ++trial) {
          auto m = structures::sample_structure(space, rng);
          auto atoms = structures::predicate_atoms(m);
          // Random union of cells versus the matching disjunction of literals.
          std::uint64_t chosen = rng.below((1ULL << atoms.size()) - 1) + 1;
          std::vector<int> seen(static_cast<std::size_t>(n), 0);
          int expected = 0;
          std::optional<Formula> f;
          for (std::size_t a = 0; a < atoms.size(); ++a) {
            for (int e : atoms[a].elements) ++seen[static_cast<std::size_t>(e)];
            if (((chosen >> a) & 1) == 0) continue;
            expected += static_cast<int>(atoms[a].elements.size());
            logic::BasicPropertyDescriptor d;
            for (int i = 1; i <= k; ++i) d.indices.push_back(i);
            d.signs = atoms[a].signs;
            Formula cell = d.to_formula();
            f = f ? Formula::disjunction(*f, cell) : cell;
          }
          bool partition = std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; });
          c.expect(partition && logic::extension_size(*f, m) == expected, [&] {
            return "k=" + std::to_string(k) + " n=" + std::to_string(n) + " cells=" + std::to_string(chosen);
          });
        }
      }
    }
    out.push_back(c.done());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> partition_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const std::string s = "partition";
  Check identity(s, "partition-identity");
  Check ntr_symmetry(s, "neutrality-negation");
  Check altern(s, "majority-witnesses");
  Check monotone(s, "witness-monotonicity");
  for (const Case& cs : partition_matrix()) {
    Formula f = catalog::resolve_property(cs.prop, cs.sig);
    Formula neg = Formula::negation(f);
    for (int n = cs.min_n; n <= cs.max_n; ++n) {
      Space space{cs.sig, n, cs.conv};
      auto thresholds = all_thresholds(n);
      auto direct = degrees::tally(space, f, thresholds, opts.enumeration);
      auto opposite = degrees::tally(space, neg, {}, opts.enumeration);
      ExactRational sum = ratio(direct.typical, direct.total) + ratio(opposite.typical, opposite.total);
      if (n % 2 == 0) sum += ratio(direct.neutral, direct.total);
      identity.expect(sum == 1, [&] { return describe(cs, n) + " sum=" + str(sum); });
      if (n % 2 == 0) {
        ntr_symmetry.expect(direct.neutral == opposite.neutral, [&] { return describe(cs, n); });
      }
      altern.expect(direct.at_least[static_cast<std::size_t>(n / 2 + 1)] == direct.typical,
                    [&] { return describe(cs, n); });
      for (int m = 1; m <= n; ++m) {
        monotone.expect(direct.at_least[static_cast<std::size_t>(m)] <= direct.at_least[static_cast<std::size_t>(m - 1)],
                        [&] { return describe(cs, n) + " m=" + std::to_string(m); });
      }
    }
  }
  out.push_back(identity.done());
  out.push_back(ntr_symmetry.done());
  out.push_back(altern.done());
  out.push_back(monotone.done());

  Check implication(s, "implication-order");
  const Signature k2 = Signature::unary(2);
  Formula both = catalog::resolve_property("U1(x) & U2(x)", k2);
  Formula one = catalog::resolve_property("U1(x)", k2);
  for (int n = 1; n <= 6; ++n) {
    Space space{k2, n, Convention::Free};
    auto a = degrees::typicality_degree(space, both, opts.enumeration);
    auto b = degrees::typicality_degree(space, one, opts.enumeration);
    implication.expect(a.value <= b.value, [&] { return "n=" + std::to_string(n); });
  }
  out.push_back(implication.done());
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> oracles_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const std::string s = "oracles";
  const Signature fn = Signature::function();
  {
    Check typ(s, "no-fixed-points-typ-count");
    Check ntr(s, "no-fixed-points-ntr-count");
    Formula fneq = *catalog::lookup("fneq", fn);
    for (int n = 1; n <= 7; ++n) {
      auto t = degrees::tally({fn, n, Convention::Free}, fneq, {}, opts.enumeration);
      typ.expect(ExactInteger(t.typical) == closedform::typ_count_no_fixed_points(n),
                 [&] { return "n=" + std::to_string(n) + " enumerated=" + std::to_string(t.typical); });
      if (n % 2 == 0) {
        ntr.expect(ExactInteger(t.neutral) == closedform::ntr_count_no_fixed_points(n),
                   [&] { return "2n=" + std::to_string(n) + " enumerated=" + std::to_string(t.neutral); });
      }
    }
    out.push_back(typ.done());
    out.push_back(ntr.done());
  }
  {
    Check c(s, "no-fixed-point-probability");
    Formula nofix = *catalog::lookup("nofix", fn);
    for (int n = 1; n <= 6; ++n) {
      auto r = degrees::truth_probability({fn, n, Convention::Free}, nofix, std::nullopt, opts.enumeration);
      c.expect(r.value == closedform::mu_no_fixed_points(n), [&] { return "n=" + std::to_string(n); });
    }
    out.push_back(c.done());
  }
  {
    Check at_least(s, "unary-at-least");
    Check p1(s, "unary-single-predicate-typ");
    const Signature u1 = Signature::unary(1);
    Formula u = *catalog::lookup("u(1)", u1);
    for (int n = 1; n <= 12; ++n) {
      auto t = degrees::tally({u1, n, Convention::Free}, u, all_thresholds(n), opts.enumeration);
      for (int m = 0; m <= n; ++m) {
        at_least.expect(ratio(t.at_least[static_cast<std::size_t>(m)], t.total) == closedform::mu_unary_at_least(n, m),
                        [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });
      }
      p1.expect(ratio(t.typical, t.total) == closedform::unary_p1_typ_degree(n), [&] { return "n=" + std::to_string(n); });
    }
    for (int n = 1; n <= 201; n += 2) {
      p1.expect(closedform::unary_p1_typ_degree(n) == ExactRational(1, 2), [&] { return "odd n=" + std::to_string(n); });
    }
    out.push_back(at_least.done());
    out.push_back(p1.done());
  }
  {
    Check c(s, "euler-factors");
    for (int n = 2; n <= 200; ++n) {
      auto f = closedform::euler_factor_terms(n);
      ExactRational expected =
          make_rational(closedform::typ_count_no_fixed_points(n), pow(ExactInteger(n), static_cast<unsigned long>(n)));
      c.expect(f.b * f.c == expected, [&] { return "n=" + std::to_string(n); });
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "closed-form-registry");
    struct Item {
      Signature sig;
      std::string prop;
      degrees::Kind kind;
      int m;
      int max_n;
    };
    const std::vector<Item> items = {
        {fn, "fneq", degrees::Kind::Typ, 0, 6},       {fn, "fneq", degrees::Kind::Ntr, 0, 6},
        {fn, "fneq", degrees::Kind::MuAtLeast, 2, 6}, {fn, "ffix", degrees::Kind::Typ, 0, 6},
        {fn, "ffix", degrees::Kind::MuAtLeast, 1, 6}, {fn, "nofix", degrees::Kind::Mu, 0, 6},
        {Signature::unary(2), "u(2)", degrees::Kind::Typ, 0, 6},
        {Signature::unary(2), "basic(1;0)", degrees::Kind::MuAtLeast, 2, 6},
        {Signature::unary(1), "u(1)", degrees::Kind::Ntr, 0, 10},
    };
    for (const auto& item : items) {
      Formula f = catalog::resolve_property(item.prop, item.sig);
      for (int n = 1; n <= item.max_n; ++n) {
        if (item.kind == degrees::Kind::Ntr && n % 2 != 0) continue;
        Space space{item.sig, n, Convention::Free};
        auto closed = closedform::lookup(space, f, item.kind, item.m);
        degrees::DegreeReport enumerated;
        switch (item.kind) {
          case degrees::Kind::Typ: enumerated = degrees::typicality_degree(space, f, opts.enumeration); break;
          case degrees::Kind::Ntr: enumerated = degrees::neutrality_degree(space, f, opts.enumeration); break;
          case degrees::Kind::Mu:
            enumerated = degrees::truth_probability(space, f, std::nullopt, opts.enumeration);
            break;
          case degrees::Kind::MuAtLeast:
            enumerated = degrees::truth_probability(space, f, item.m, opts.enumeration);
            break;
        }
        c.expect(closed && closed->value == enumerated.value && closed->total == enumerated.total, [&] {
          return item.sig.to_string() + " " + item.prop + " " + degrees::to_string(item.kind) + " n=" + std::to_string(n);
        });
      }
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "disjoint-pairs-brute-force");
    for (int q = 0; q <= 10; ++q) {
      // Each element goes to the first set, the second set, or neither.
      std::uint64_t assignments = 1;
      for (int i = 0; i < q; ++i) assignments *= 3;
      std::uint64_t count = 0;
      for (std::uint64_t code = 0; code < assignments; ++code) {
        bool first = false, second = false;
        for (std::uint64_t r = code; r > 0; r /= 3) {
          first = first || r % 3 == 1;
          second = second || r % 3 == 2;
        }
        if (first && second) ++count;
      }
      c.expect(closedform::disjoint_pair_count(q) == ExactInteger(count), [&] { return "q=" + std::to_string(q); });
    }
    out.push_back(c.done());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> bounds_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const std::string s = "bounds";
  {
    Check c(s, "fixed-point-bracket");
    const Signature fn = Signature::function();
    Formula ffix = *catalog::lookup("ffix", fn);
    for (int n = 1; n <= 7; ++n) {
      auto t = degrees::tally({fn, n, Convention::Free}, ffix, {1, 2, 3}, opts.enumeration, false);
      for (int m = 1; m <= std::min(n, 3); ++m) {
        ExactRational mu = ratio(t.at_least[static_cast<std::size_t>(m - 1)], t.total);
        auto b = closedform::fixed_point_mu_bounds(n, m);
        c.expect(b.lower <= mu && mu <= b.upper,
                 [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " mu=" + str(mu); });
      }
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "graph-witness");
    const Signature g = Signature::graph();
    for (int n = 2; n <= 6; ++n) {
      std::vector<std::pair<std::string, ExactRational>> items = {
          {"iso", closedform::graph_witness_bound(n, closedform::GraphWitness::Isolated)},
          {"adjall", closedform::graph_witness_bound(n, closedform::GraphWitness::AllAdjacent)},
      };
      for (int k = 1; k <= std::min(3, n - 1); ++k) {
        items.push_back({"adjk(" + std::to_string(k) + ")",
                         closedform::graph_witness_bound(n, closedform::GraphWitness::ExactlyK, k)});
      }
      for (const auto& [name, bound] : items) {
        auto r = degrees::truth_probability({g, n, Convention::Free}, *catalog::lookup(name, g), 1, opts.enumeration);
        c.expect(r.value <= bound,
                 [&] { return name + " n=" + std::to_string(n) + " mu=" + str(r.value) + " bound=" + str(bound); });
      }
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "neutrality-central-binomial");
    for (int n = 1; n <= 100; ++n) {
      auto b = closedform::no_fixed_points_ntr_bound(n);
      c.expect(b.holds, [&] { return "n=" + std::to_string(n); });
    }
    out.push_back(c.done());
  }
  {
    Check c(s, "central-binomial");
    for (unsigned long n = 1; n <= 1000; ++n) {
      auto r = combinatorics::central_binomial_within_bound(n);
      c.expect(r.holds && r.value == binomial(2 * n, n), [&] { return "n=" + std::to_string(n); });
    }
    out.push_back(c.done());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> montecarlo_suite(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const std::string s = "montecarlo";
  struct Config {
    Signature sig;
    std::string prop;
    degrees::Kind kind;
    int n;
    int m;
  };
  const std::vector<Config> configs = {
      {Signature::function(), "fneq", degrees::Kind::Typ, 3, 0},
      {Signature::unary(1), "u(1)", degrees::Kind::Ntr, 4, 0},
      {Signature::graph(), "iso", degrees::Kind::MuAtLeast, 4, 1},
  };
  Check coverage(s, "wilson-coverage");
  Check determinism(s, "determinism");
  Check streams(s, "stream-splitting");
  for (const auto& cfg : configs) {
    Formula f = *catalog::lookup(cfg.prop, cfg.sig);
    Space space{cfg.sig, cfg.n, Convention::Free};
    ExactRational exact;
    if (cfg.kind == degrees::Kind::MuAtLeast) {
      exact = degrees::truth_probability(space, f, cfg.m, opts.enumeration).value;
    } else if (cfg.kind == degrees::Kind::Ntr) {
      exact = degrees::neutrality_degree(space, f, opts.enumeration).value;
    } else {
      exact = degrees::typicality_degree(space, f, opts.enumeration).value;
    }
    const double target = to_double(exact);
    auto estimate = [&](std::uint64_t seed, std::uint64_t samples, unsigned threads) {
      montecarlo::SamplingOptions so;
      so.samples = samples;
      so.seed = seed;
      so.threads = threads;
      if (cfg.kind == degrees::Kind::MuAtLeast) return montecarlo::estimate_truth_probability(space, f, cfg.m, so);
      return montecarlo::estimate_degree(space, f, cfg.kind, so);
    };
    int covered = 0;
    const int seeds = 200;
    for (int i = 0; i < seeds; ++i) {
      auto e = estimate(opts.seed + static_cast<std::uint64_t>(i), 400, 1);
      if (e.ci_low <= target && target <= e.ci_high) ++covered;
    }
    coverage.expect(covered >= seeds * 9 / 10, [&] {
      return cfg.sig.to_string() + " " + cfg.prop + " n=" + std::to_string(cfg.n) + " covered=" +
             std::to_string(covered) + "/" + std::to_string(seeds);
    });

    auto a = estimate(opts.seed + 99, 1000, 1);
    auto b = estimate(opts.seed + 99, 1000, 3);
    determinism.expect(a.favorable == b.favorable && a.ci_low == b.ci_low && a.ci_high == b.ci_high,
                       [&] { return cfg.prop + " seed=" + std::to_string(opts.seed + 99); });

    std::uint64_t total = 0;
    for (unsigned stream = 0; stream < a.streams; ++stream) {
      std::uint64_t share = a.samples / a.streams + (stream < a.samples % a.streams ? 1 : 0);
      total += montecarlo::run_stream(space, f, cfg.kind, cfg.m, a.seed, stream, share);
    }
    streams.expect(total == a.favorable, [&] { return cfg.prop + " sequential=" + std::to_string(total); });
  }
  out.push_back(coverage.done());
  out.push_back(determinism.done());
  out.push_back(streams.done());
  return out;
}

void append(std::vector<CheckResult>& to, std::vector<CheckResult> from) {
  to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"combinatorics", "logic", "structures", "partition", "oracles", "bounds", "montecarlo", "identities", "all"};
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  const bool identities = suite == "identities" || all;
  bool known = false;
  if (identities || suite == "combinatorics") known = true, append(out, combinatorics_suite());
  if (all || suite == "logic") known = true, append(out, logic_suite(opts));
  if (all || suite == "structures") known = true, append(out, structures_suite(opts));
  if (identities || suite == "partition") known = true, append(out, partition_suite(opts));
  if (identities || suite == "oracles") known = true, append(out, oracles_suite(opts));
  if (identities || suite == "bounds") known = true, append(out, bounds_suite(opts));
  if (all || suite == "montecarlo") known = true, append(out, montecarlo_suite(opts));
  if (!known) {
    std::string names;
    for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
    throw Error(ErrorKind::Usage, "unknown suite '" + suite + "' (expected " + names + ")");
  }
  return out;
}

}  // namespace typdeg::verify
