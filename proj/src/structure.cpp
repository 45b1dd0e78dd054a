#include "typdeg/structure.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "typdeg/combinatorics.hpp"
#include "typdeg/error.hpp"

namespace typdeg::structures {

namespace {

std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

void check_n(int n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "universe size must be >= 1");
}

}  // namespace

// Low-level payload access for the decoders, the enumerator and the sampler.
class StructureBuilder {
 public:
  static Structure blank(const Space& space) {
    check_n(space.n);
    switch (space.sig.family()) {
      case Family::UnaryPredicates:
        return Structure(Family::UnaryPredicates, space.n, space.sig.k());
      case Family::UnaryFunction:
        return Structure(Family::UnaryFunction, space.n, 0);
      case Family::Graph:
        return Structure(Family::Graph, space.n, 0);
    }
    throw Error(ErrorKind::Internal, "unknown family");
  }
  static std::uint64_t* row(Structure& m, int r) { return m.words_.data() + static_cast<std::size_t>(r) * m.row_words_; }
  static std::size_t row_words(const Structure& m) { return m.row_words_; }
  static std::vector<std::uint32_t>& table(Structure& m) { return m.table_; }
  static void clear(Structure& m) { m.clear_payload(); }
  static void set_edge(Structure& m, int a, int b) { m.set_edge(a, b); }
  static void set_member(Structure& m, int p, int e) { m.set_member(p, e); }
};

Structure::Structure(Family family, int n, int k) : family_(family), n_(n), k_(k), row_words_(words_for(n)) {
  switch (family) {
    case Family::UnaryPredicates:
      words_.assign(static_cast<std::size_t>(k) * row_words_, 0);
      break;
    case Family::UnaryFunction:
      table_.assign(static_cast<std::size_t>(n), 0);
      break;
    case Family::Graph:
      words_.assign(static_cast<std::size_t>(n) * row_words_, 0);
      break;
  }
}

void Structure::set_member(int pred, int element) {
  words_[static_cast<std::size_t>(pred) * row_words_ + (element >> 6)] |= std::uint64_t{1} << (element & 63);
}

void Structure::set_edge(int a, int b) {
  words_[static_cast<std::size_t>(a) * row_words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  words_[static_cast<std::size_t>(b) * row_words_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
}

void Structure::clear_payload() {
  std::fill(words_.begin(), words_.end(), 0);
  std::fill(table_.begin(), table_.end(), 0);
}

Structure Structure::unary_from_sets(int n, const std::vector<std::vector<int>>& sets) {
  check_n(n);
  if (sets.empty()) throw Error(ErrorKind::OutOfRange, "unary structure needs k >= 1 predicates");
  Structure m(Family::UnaryPredicates, n, static_cast<int>(sets.size()));
  for (std::size_t p = 0; p < sets.size(); ++p) {
    for (int e : sets[p]) {
      if (e < 0 || e >= n) throw Error(ErrorKind::OutOfRange, "predicate member out of range");
      m.set_member(static_cast<int>(p), e);
    }
  }
  return m;
}

Structure Structure::function_from_table(const std::vector<int>& table) {
  int n = static_cast<int>(table.size());
  check_n(n);
  Structure m(Family::UnaryFunction, n, 0);
  for (int i = 0; i < n; ++i) {
    if (table[i] < 0 || table[i] >= n) throw Error(ErrorKind::OutOfRange, "function value out of range");
    m.table_[i] = static_cast<std::uint32_t>(table[i]);
  }
  return m;
}

Structure Structure::graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  check_n(n);
  Structure m(Family::Graph, n, 0);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::OutOfRange, "edge endpoint out of range");
    if (a == b) throw Error(ErrorKind::OutOfRange, "graph edges must join distinct nodes");
    m.set_edge(a, b);
  }
  return m;
}

std::vector<int> Structure::predicate_members(int pred) const {
  std::vector<int> out;
  for (int e = 0; e < n_; ++e) {
    if (in_predicate(pred, e)) out.push_back(e);
  }
  return out;
}

std::vector<std::pair<int, int>> Structure::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (adjacent(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool Structure::pair_bit(std::size_t pair_index) const {
  int a = 0;
  std::size_t remaining = pair_index;
  while (a < n_ && remaining >= static_cast<std::size_t>(n_ - a - 1)) {
    remaining -= static_cast<std::size_t>(n_ - a - 1);
    ++a;
  }
  if (a >= n_) throw Error(ErrorKind::OutOfRange, "pair index out of range");
  return adjacent(a, a + 1 + static_cast<int>(remaining));
}

bool operator==(const Structure& a, const Structure& b) {
  return a.family_ == b.family_ && a.n_ == b.n_ && a.k_ == b.k_ && a.words_ == b.words_ && a.table_ == b.table_;
}

std::size_t Structure::hash() const {
  std::size_t h = std::hash<int>{}(static_cast<int>(family_)) * 31 + static_cast<std::size_t>(n_);
  h = splitmix64(h ^ static_cast<std::size_t>(k_));
  for (auto w : words_) h = splitmix64(h ^ w);
  for (auto v : table_) h = splitmix64(h ^ v);
  return h;
}

std::size_t pair_count(int n) { return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2; }

std::size_t pair_rank(int n, int a, int b) {
  if (a > b) std::swap(a, b);
  // Pairs starting with 0..a-1 come first: sum_{i<a} (n-1-i).
  std::size_t before = static_cast<std::size_t>(a) * (2 * static_cast<std::size_t>(n) - a - 1) / 2;
  return before + static_cast<std::size_t>(b - a - 1);
}

namespace {

ExactInteger proper_subset_count(int n) { return pow2(static_cast<unsigned long>(n)) - 2; }

void check_paper_distinct_feasible(const Space& space) {
  if (proper_subset_count(space.n) < space.sig.k()) {
    throw Error(ErrorKind::Infeasible, "paper-distinct convention needs 2^n - 2 >= k (n=" + std::to_string(space.n) +
                                           ", k=" + std::to_string(space.sig.k()) + ")");
  }
}

// Sets W_{p+1} from the low n bits of `bits`.
void load_subset(Structure& m, int p, const ExactInteger& bits) {
  std::uint64_t* row = StructureBuilder::row(m, p);
  std::size_t words = StructureBuilder::row_words(m);
  std::fill(row, row + words, 0);
  for (int e = 0; e < m.n(); ++e) {
    if (mpz_tstbit(bits.get_mpz_t(), static_cast<mp_bitcnt_t>(e))) row[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
}

ExactInteger subset_value(const Structure& m, int p) {
  ExactInteger v = 0;
  for (int e = m.n() - 1; e >= 0; --e) {
    v *= 2;
    if (m.in_predicate(p, e)) v += 1;
  }
  return v;
}

}  // namespace

ExactInteger structure_count(const Space& space) {
  check_n(space.n);
  const unsigned long n = static_cast<unsigned long>(space.n);
  switch (space.sig.family()) {
    case Family::UnaryPredicates:
      if (space.conv == Convention::PaperDistinct) {
        check_paper_distinct_feasible(space);
        return combinatorics::falling_factorial(proper_subset_count(space.n), static_cast<unsigned long>(space.sig.k()));
      }
      return pow2(static_cast<unsigned long>(space.sig.k()) * n);
    case Family::UnaryFunction:
      return pow(ExactInteger(n), n);
    case Family::Graph:
      return pow2(pair_count(space.n));
  }
  throw Error(ErrorKind::Internal, "unknown family");
}

Structure decode_structure(const Space& space, const ExactInteger& index) {
  ExactInteger count = structure_count(space);
  if (index < 0 || index >= count) {
    throw Error(ErrorKind::OutOfRange, "structure index " + index.get_str() + " outside [0, " + count.get_str() + ")");
  }
  Structure m = StructureBuilder::blank(space);
  const int n = space.n;
  switch (space.sig.family()) {
    case Family::UnaryPredicates: {
      const int k = space.sig.k();
      if (space.conv == Convention::Free) {
        ExactInteger rest = index;
        ExactInteger mask = pow2(static_cast<unsigned long>(n)) - 1;
        for (int p = 0; p < k; ++p) {
          load_subset(m, p, rest & mask);
          rest >>= n;
        }
        return m;
      }
      // Mixed radix: W_1 is the least significant digit with base N-k+1, W_k the
      // most significant with base N, N = 2^n - 2.
      ExactInteger candidates = proper_subset_count(n);
      std::vector<ExactInteger> digits(static_cast<std::size_t>(k));
      ExactInteger rest = index;
      for (int p = 0; p < k; ++p) {
        ExactInteger base = candidates - (k - 1 - p);
        mpz_fdiv_qr(rest.get_mpz_t(), digits[p].get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
      }
      std::vector<ExactInteger> taken;
      for (int p = k - 1; p >= 0; --p) {
        ExactInteger value = digits[p] + 1;
        std::sort(taken.begin(), taken.end());
        for (const auto& t : taken) {
          if (t <= value) value += 1;
        }
        load_subset(m, p, value);
        taken.push_back(value);
      }
      return m;
    }
    case Family::UnaryFunction: {
      ExactInteger rest = index;
      auto& table = StructureBuilder::table(m);
      for (int i = 0; i < n; ++i) {
        table[i] = static_cast<std::uint32_t>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(n)));
      }
      return m;
    }
    case Family::Graph: {
      std::size_t r = 0;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b, ++r) {
          if (mpz_tstbit(index.get_mpz_t(), r)) StructureBuilder::set_edge(m, a, b);
        }
      }
      return m;
    }
  }
  throw Error(ErrorKind::Internal, "unknown family");
}

ExactInteger encode_structure(const Space& space, const Structure& m) {
  if (m.family() != space.sig.family() || m.n() != space.n ||
      (m.family() == Family::UnaryPredicates && m.k() != space.sig.k())) {
    throw Error(ErrorKind::SignatureMismatch, "structure does not belong to the given space");
  }
  const int n = space.n;
  switch (space.sig.family()) {
    case Family::UnaryPredicates: {
      const int k = space.sig.k();
      if (space.conv == Convention::Free) {
        ExactInteger out = 0;
        for (int p = k - 1; p >= 0; --p) out = (out << n) + subset_value(m, p);
        return out;
      }
      ExactInteger candidates = proper_subset_count(n);
      std::vector<ExactInteger> values(static_cast<std::size_t>(k));
      for (int p = 0; p < k; ++p) values[p] = subset_value(m, p);
      ExactInteger out = 0;
      for (int p = k - 1; p >= 0; --p) {
        if (values[p] == 0 || values[p] == candidates + 1) {
          throw Error(ErrorKind::OutOfRange, "paper-distinct structures have no empty or full predicate");
        }
        ExactInteger digit = values[p] - 1;
        for (int q = p + 1; q < k; ++q) {
          if (values[q] == values[p]) throw Error(ErrorKind::OutOfRange, "paper-distinct predicates must differ");
          if (values[q] < values[p]) digit -= 1;
        }
        ExactInteger base = candidates - (k - 1 - p);
        out = out * base + digit;
      }
      return out;
    }
    case Family::UnaryFunction: {
      ExactInteger out = 0;
      for (int i = n - 1; i >= 0; --i) out = out * n + m.apply(i);
      return out;
    }
    case Family::Graph: {
      ExactInteger out = 0;
      std::size_t r = 0;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b, ++r) {
          if (m.adjacent(a, b)) mpz_setbit(out.get_mpz_t(), r);
        }
      }
      return out;
    }
  }
  throw Error(ErrorKind::Internal, "unknown family");
}

std::uint64_t enumerable_count(const Space& space) {
  ExactInteger count = structure_count(space);
  if (bit_length(count) > 63) {
    throw Error(ErrorKind::CapExceeded, "structure space " + space.sig.to_string() + " at n=" +
                                            std::to_string(space.n) + " is too large to enumerate");
  }
  return to_u64(count);
}

struct Enumerator::Impl {
  Space space;
  std::uint64_t next_index;
  std::uint64_t end;
  bool started = false;
  Structure buffer;
  std::uint64_t current_index = 0;
  // Paper-distinct: position in the free index space.
  std::uint64_t free_index = 0;
  std::uint64_t subset_mask = 0;
  // Function: current base-n digits live in the buffer's table.

  Impl(const Space& s, std::uint64_t b, std::uint64_t e)
      : space(s), next_index(b), end(e), buffer(StructureBuilder::blank(s)) {}

  void load_free_unary(std::uint64_t bits) {
    const int n = space.n;
    for (int p = 0; p < space.sig.k(); ++p) {
      StructureBuilder::row(buffer, p)[0] = (bits >> (p * n)) & subset_mask;
    }
  }

  bool free_index_is_distinct(std::uint64_t bits) const {
    const int n = space.n;
    const int k = space.sig.k();
    for (int p = 0; p < k; ++p) {
      std::uint64_t w = (bits >> (p * n)) & subset_mask;
      if (w == 0 || w == subset_mask) return false;
      for (int q = 0; q < p; ++q) {
        if (((bits >> (q * n)) & subset_mask) == w) return false;
      }
    }
    return true;
  }

  void load_graph(std::uint64_t bits) {
    StructureBuilder::clear(buffer);
    const int n = space.n;
    int r = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b, ++r) {
        if ((bits >> r) & 1U) StructureBuilder::set_edge(buffer, a, b);
      }
    }
  }
};

Enumerator::Enumerator(const Space& space, std::uint64_t begin, std::uint64_t end) {
  std::uint64_t count = enumerable_count(space);
  if (begin > end || end > count) {
    throw Error(ErrorKind::OutOfRange, "enumeration range [" + std::to_string(begin) + ", " + std::to_string(end) +
                                           ") outside [0, " + std::to_string(count) + ")");
  }
  if (space.sig.family() == Family::UnaryPredicates &&
      static_cast<long>(space.sig.k()) * space.n > 64) {
    throw Error(ErrorKind::CapExceeded, "unary enumeration needs k*n <= 64");
  }
  impl_ = std::make_unique<Impl>(space, begin, end);
  if (space.n < 64) impl_->subset_mask = (std::uint64_t{1} << space.n) - 1;
  else impl_->subset_mask = ~std::uint64_t{0};
}

Enumerator::~Enumerator() = default;
Enumerator::Enumerator(Enumerator&&) noexcept = default;
Enumerator& Enumerator::operator=(Enumerator&&) noexcept = default;

bool Enumerator::next() {
  Impl& s = *impl_;
  if (s.next_index >= s.end) return false;
  const std::uint64_t idx = s.next_index++;
  const bool first = !s.started;
  s.started = true;
  s.current_index = idx;
  const int n = s.space.n;
  switch (s.space.sig.family()) {
    case Family::UnaryPredicates:
      if (s.space.conv == Convention::Free) {
        s.load_free_unary(idx);
      } else {
        // Filter the free index space; the first position comes from unranking.
        if (first) {
          Structure start = decode_structure(s.space, ExactInteger(static_cast<unsigned long>(idx)));
          s.free_index = to_u64(encode_structure(Space{s.space.sig, n, Convention::Free}, start));
        } else {
          do {
            ++s.free_index;
          } while (!s.free_index_is_distinct(s.free_index));
        }
        s.load_free_unary(s.free_index);
      }
      return true;
    case Family::UnaryFunction: {
      auto& table = StructureBuilder::table(s.buffer);
      if (first) {
        std::uint64_t rest = idx;
        for (int i = 0; i < n; ++i) {
          table[i] = static_cast<std::uint32_t>(rest % static_cast<std::uint64_t>(n));
          rest /= static_cast<std::uint64_t>(n);
        }
      } else {
        for (int i = 0; i < n; ++i) {
          if (++table[i] < static_cast<std::uint32_t>(n)) break;
          table[i] = 0;
        }
      }
      return true;
    }
    case Family::Graph:
      s.load_graph(idx);
      return true;
  }
  return false;
}

const Structure& Enumerator::current() const { return impl_->buffer; }
std::uint64_t Enumerator::index() const { return impl_->current_index; }

Structure sample_structure(const Space& space, Rng& rng) {
  Structure m = StructureBuilder::blank(space);
  const int n = space.n;
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  const std::uint64_t last_mask = (n % 64 == 0) ? ~std::uint64_t{0} : (std::uint64_t{1} << (n % 64)) - 1;
  auto random_subset = [&](std::uint64_t* row) {
    for (std::size_t w = 0; w < words; ++w) row[w] = rng.next();
    row[words - 1] &= last_mask;
  };
  switch (space.sig.family()) {
    case Family::UnaryPredicates: {
      const int k = space.sig.k();
      if (space.conv == Convention::Free) {
        for (int p = 0; p < k; ++p) random_subset(StructureBuilder::row(m, p));
        return m;
      }
      check_paper_distinct_feasible(space);
      long attempts = 0;
      for (int p = 0; p < k; ++p) {
        std::uint64_t* row = StructureBuilder::row(m, p);
        for (;;) {
          if (++attempts > 1000000) {
            throw Error(ErrorKind::Infeasible, "paper-distinct sampling exceeded 10^6 rejections");
          }
          random_subset(row);
          bool empty = std::all_of(row, row + words, [](std::uint64_t w) { return w == 0; });
          bool full = std::all_of(row, row + words - 1, [](std::uint64_t w) { return w == ~std::uint64_t{0}; }) &&
                      row[words - 1] == last_mask;
          bool duplicate = false;
          for (int q = 0; q < p && !duplicate; ++q) {
            duplicate = std::equal(row, row + words, StructureBuilder::row(m, q));
          }
          if (!empty && !full && !duplicate) break;
        }
      }
      return m;
    }
    case Family::UnaryFunction: {
      auto& table = StructureBuilder::table(m);
      for (int i = 0; i < n; ++i) table[i] = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(n)));
      return m;
    }
    case Family::Graph:
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (rng.next() >> 63) StructureBuilder::set_edge(m, a, b);
        }
      }
      return m;
  }
  throw Error(ErrorKind::Internal, "unknown family");
}

std::vector<Atom> predicate_atoms(const Structure& m) {
  if (m.family() != Family::UnaryPredicates) {
    throw Error(ErrorKind::SignatureMismatch, "predicate atoms exist only for unary-predicate structures");
  }
  const int k = m.k();
  if (k > 20) throw Error(ErrorKind::OutOfRange, "too many predicates to list all 2^k atoms");
  std::vector<Atom> out;
  for (std::uint32_t code = 0; code < (1U << k); ++code) {
    Atom atom;
    for (int i = 0; i < k; ++i) atom.signs.push_back(static_cast<int>((code >> (k - 1 - i)) & 1U));
    for (int e = 0; e < m.n(); ++e) {
      bool inside = true;
      for (int i = 0; i < k && inside; ++i) inside = (m.in_predicate(i, e) ? 1 : 0) == atom.signs[i];
      if (inside) atom.elements.push_back(e);
    }
    out.push_back(std::move(atom));
  }
  return out;
}

}  // namespace typdeg::structures
