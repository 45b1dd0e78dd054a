#include "typdeg/degrees.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "typdeg/error.hpp"
#include "typdeg/evaluator.hpp"

namespace typdeg::degrees {

using structures::Enumerator;
using structures::Space;

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::Typ: return "typ";
    case Kind::Ntr: return "ntr";
    case Kind::Mu: return "mu";
    case Kind::MuAtLeast: return "mu-at-least";
  }
  return "?";
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Enumeration: return "enumeration";
    case Method::ClosedForm: return "closed-form";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

Kind parse_kind(const std::string& text) {
  if (text == "typ") return Kind::Typ;
  if (text == "ntr") return Kind::Ntr;
  if (text == "mu") return Kind::Mu;
  if (text == "mu-at-least") return Kind::MuAtLeast;
  throw Error(ErrorKind::Usage, "unknown kind '" + text + "' (expected typ, ntr, mu or mu-at-least)");
}

bool Caps::allows(const Space& space) const {
  switch (space.sig.family()) {
    case Family::UnaryPredicates: return space.sig.k() * space.n <= unary_bits;
    case Family::UnaryFunction: return space.n <= function_n;
    case Family::Graph: return space.n <= graph_n;
  }
  return false;
}

std::string Caps::to_string() const {
  return "unary=" + std::to_string(unary_bits) + ",function=" + std::to_string(function_n) +
         ",graph=" + std::to_string(graph_n);
}

void Caps::apply_overrides(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Usage, "cap override '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "cap override '" + item + "' needs an integer value");
    }
    if (value < 1) throw Error(ErrorKind::Usage, "cap override '" + item + "' must be positive");
    if (key == "unary") {
      unary_bits = value;
    } else if (key == "function") {
      function_n = value;
    } else if (key == "graph") {
      graph_n = value;
    } else {
      throw Error(ErrorKind::Usage, "unknown cap '" + key + "' (expected unary, function or graph)");
    }
  }
}

DegreeReport make_report(Kind kind, int n, const ExactInteger& favorable, const ExactInteger& total, Method method,
                         Convention conv, const Signature& sig, const std::string& formula_text, int m) {
  DegreeReport r;
  r.kind = kind;
  r.m = m;
  r.n = n;
  r.favorable = favorable;
  r.total = total;
  r.value = make_rational(favorable, total);
  r.float_value = to_double(r.value);
  r.method = method;
  r.convention = conv;
  r.signature = sig.to_string();
  r.formula_text = formula_text;
  return r;
}

Tally& Tally::operator+=(const Tally& other) {
  total += other.total;
  typical += other.typical;
  atypical += other.atypical;
  neutral += other.neutral;
  models += other.models;
  if (at_least.size() < other.at_least.size()) at_least.resize(other.at_least.size(), 0);
  for (std::size_t i = 0; i < other.at_least.size(); ++i) at_least[i] += other.at_least[i];
  return *this;
}

void require_enumerable(const Space& space, const Caps& caps) {
  if (!caps.allows(space)) {
    throw Error(ErrorKind::CapExceeded, space.sig.to_string() + " at n=" + std::to_string(space.n) +
                                            " exceeds the enumeration caps (" + caps.to_string() +
                                            "); use monte-carlo or raise the caps");
  }
}

namespace {

void fold_range(const Space& space, const logic::Evaluator& ev, const std::vector<int>& thresholds, int limit,
                bool classify, std::uint64_t begin, std::uint64_t end, Tally& out) {
  Enumerator it(space, begin, end);
  const int n = space.n;
  const bool property = ev.is_property();
  while (it.next()) {
    const auto& m = it.current();
    ++out.total;
    if (!property) {
      if (ev.holds(m)) ++out.models;
      continue;
    }
    // c is exact below `limit`; reaching it already decides every query.
    const int c = ev.count(m, limit);
    if (classify) {
      if (2 * c > n) {
        ++out.typical;
      } else if (2 * c < n) {
        ++out.atypical;
      } else {
        ++out.neutral;
      }
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (c >= thresholds[i]) ++out.at_least[i];
    }
  }
}

}  // namespace

Tally tally(const Space& space, const logic::Formula& f, const std::vector<int>& thresholds,
            const EnumerationOptions& opts, bool classify) {
  logic::check_signature(f, space.sig);
  require_enumerable(space, opts.caps);
  logic::Evaluator ev(f);
  if (!ev.is_property() && !thresholds.empty()) {
    throw Error(ErrorKind::FreeVariable, "witness thresholds need a property (one free variable)");
  }

  const std::uint64_t count = structures::enumerable_count(space);
  int limit = classify ? space.n / 2 + 1 : 0;
  for (int t : thresholds) limit = std::max(limit, t);

  const std::uint64_t chunk = std::max<std::uint64_t>(opts.chunk, 1);
  const std::uint64_t chunks = count == 0 ? 0 : (count + chunk - 1) / chunk;
  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

  std::atomic<std::uint64_t> next_chunk{0};
  std::vector<Tally> partial(threads);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&](unsigned id) {
    Tally& mine = partial[id];
    mine.at_least.assign(thresholds.size(), 0);
    try {
      for (;;) {
        const std::uint64_t c = next_chunk.fetch_add(1);
        if (c >= chunks) break;
        const std::uint64_t begin = c * chunk;
        const std::uint64_t end = std::min(count, begin + chunk);
        fold_range(space, ev, thresholds, limit, classify, begin, end, mine);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_chunk.store(chunks);
    }
  };

  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Tally result;
  result.at_least.assign(thresholds.size(), 0);
  for (const auto& p : partial) result += p;
  if (result.total != count) {
    throw Error(ErrorKind::Internal, "enumeration visited " + std::to_string(result.total) + " structures, expected " +
                                         std::to_string(count));
  }
  return result;
}

DegreeReport typicality_degree(const Space& space, const logic::Formula& f, const EnumerationOptions& opts) {
  logic::property_variable(f);
  Tally t = tally(space, f, {}, opts);
  return make_report(Kind::Typ, space.n, t.typical, t.total, Method::Enumeration, space.effective_convention(),
                     space.sig, logic::render(f));
}

DegreeReport neutrality_degree(const Space& space, const logic::Formula& f, const EnumerationOptions& opts) {
  if (space.n % 2 != 0) {
    throw Error(ErrorKind::OutOfRange, "neutrality is defined for even n only (got n=" + std::to_string(space.n) + ")");
  }
  logic::property_variable(f);
  Tally t = tally(space, f, {}, opts);
  return make_report(Kind::Ntr, space.n, t.neutral, t.total, Method::Enumeration, space.effective_convention(),
                     space.sig, logic::render(f));
}

DegreeReport truth_probability(const Space& space, const logic::Formula& f, std::optional<int> mcount,
                               const EnumerationOptions& opts) {
  if (mcount) {
    if (*mcount < 0) throw Error(ErrorKind::OutOfRange, "witness count must be non-negative");
    logic::property_variable(f);
    Tally t = tally(space, f, {*mcount}, opts, false);
    return make_report(Kind::MuAtLeast, space.n, t.at_least[0], t.total, Method::Enumeration,
                       space.effective_convention(), space.sig, logic::render(f), *mcount);
  }
  if (!f.is_sentence()) {
    throw Error(ErrorKind::FreeVariable, "truth probability of a formula with free variables needs a witness count");
  }
  Tally t = tally(space, f, {}, opts);
  return make_report(Kind::Mu, space.n, t.models, t.total, Method::Enumeration, space.effective_convention(),
                     space.sig, logic::render(f));
}

PartitionCheck partition_identity_check(const Space& space, const logic::Formula& f, const EnumerationOptions& opts) {
  logic::property_variable(f);
  const logic::Formula negated = logic::Formula::negation(f);
  const Convention conv = space.effective_convention();

  Tally direct = tally(space, f, {}, opts);
  Tally opposite = tally(space, negated, {}, opts);

  PartitionCheck out;
  out.typ = make_report(Kind::Typ, space.n, direct.typical, direct.total, Method::Enumeration, conv, space.sig,
                        logic::render(f));
  out.negated_typ = make_report(Kind::Typ, space.n, opposite.typical, opposite.total, Method::Enumeration, conv,
                                space.sig, logic::render(negated));
  out.sum = out.typ.value + out.negated_typ.value;
  if (space.n % 2 == 0) {
    out.ntr = make_report(Kind::Ntr, space.n, direct.neutral, direct.total, Method::Enumeration, conv, space.sig,
                          logic::render(f));
    out.sum += out.ntr->value;
  }
  out.sum.canonicalize();
  out.holds = out.sum == 1;
  return out;
}

}  // namespace typdeg::degrees
