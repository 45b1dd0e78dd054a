#include "typdeg/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "typdeg/error.hpp"
#include "typdeg/evaluator.hpp"

namespace typdeg::montecarlo {

using degrees::Kind;

Interval wilson_interval(std::uint64_t favorable, std::uint64_t samples, double z) {
  if (samples == 0) throw Error(ErrorKind::OutOfRange, "Wilson interval needs at least one sample");
  const double N = static_cast<double>(samples);
  const double p = static_cast<double>(favorable) / N;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / N;
  const double center = (p + z2 / (2.0 * N)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / N + z2 / (4.0 * N * N)) / denom;
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  out.low = std::min(out.low, p);
  out.high = std::max(out.high, p);
  return out;
}

namespace {

std::uint64_t count_stream(const structures::Space& space, const logic::Evaluator& ev, Kind kind, int m,
                           std::uint64_t seed, std::uint64_t stream, std::uint64_t samples) {
  Rng rng = Rng::for_stream(seed, stream);
  const int n = space.n;
  const int limit = kind == Kind::MuAtLeast ? m : n / 2 + 1;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    structures::Structure s = structures::sample_structure(space, rng);
    bool hit = false;
    switch (kind) {
      case Kind::Mu:
        hit = ev.holds(s);
        break;
      case Kind::MuAtLeast:
        hit = ev.count(s, limit) >= m;
        break;
      case Kind::Typ:
        hit = 2 * ev.count(s, limit) > n;
        break;
      case Kind::Ntr:
        hit = 2 * ev.count(s, limit) == n;
        break;
    }
    if (hit) ++hits;
  }
  return hits;
}

void validate(const structures::Space& space, const logic::Evaluator& ev, Kind kind, int m,
              const SamplingOptions& opts) {
  if (opts.samples < 100) throw Error(ErrorKind::OutOfRange, "Monte Carlo needs at least 100 samples");
  if (opts.streams == 0) throw Error(ErrorKind::OutOfRange, "Monte Carlo needs at least one stream");
  if (kind == Kind::Ntr && space.n % 2 != 0) {
    throw Error(ErrorKind::OutOfRange, "neutrality is defined for even n only (got n=" + std::to_string(space.n) + ")");
  }
  if (kind == Kind::Mu && ev.is_property()) {
    throw Error(ErrorKind::FreeVariable, "truth probability of a formula with free variables needs a witness count");
  }
  if (kind != Kind::Mu && !ev.is_property()) {
    throw Error(ErrorKind::FreeVariable, "degrees and witness counts need a property (one free variable)");
  }
  if (m < 0) throw Error(ErrorKind::OutOfRange, "witness count must be non-negative");
  structures::structure_count(space);  // rejects infeasible paper-distinct configurations
}

Estimate run(const structures::Space& space, const logic::Formula& f, Kind kind, int m, const SamplingOptions& opts) {
  logic::check_signature(f, space.sig);
  logic::Evaluator ev(f);
  validate(space, ev, kind, m, opts);

  const unsigned streams = opts.streams;
  std::vector<std::uint64_t> hits(streams, 0);
  auto share = [&](unsigned s) {
    return opts.samples / streams + (s < opts.samples % streams ? 1 : 0);
  };

  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, streams);
  std::atomic<unsigned> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (unsigned s; (s = next.fetch_add(1)) < streams;) {
        hits[s] = count_stream(space, ev, kind, m, opts.seed, s, share(s));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(streams);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Estimate e;
  e.kind = kind;
  e.m = m;
  e.n = space.n;
  e.samples = opts.samples;
  for (auto h : hits) e.favorable += h;
  e.point = static_cast<double>(e.favorable) / static_cast<double>(e.samples);
  Interval ci = wilson_interval(e.favorable, e.samples);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  e.seed = opts.seed;
  e.streams = streams;
  e.convention = space.effective_convention();
  e.signature = space.sig.to_string();
  e.formula_text = logic::render(f);
  return e;
}

}  // namespace

Estimate estimate_degree(const structures::Space& space, const logic::Formula& f, Kind kind,
                         const SamplingOptions& opts) {
  if (kind != Kind::Typ && kind != Kind::Ntr) throw Error(ErrorKind::Usage, "estimate_degree takes typ or ntr");
  return run(space, f, kind, 0, opts);
}

Estimate estimate_truth_probability(const structures::Space& space, const logic::Formula& f,
                                    std::optional<int> mcount, const SamplingOptions& opts) {
  if (mcount) return run(space, f, Kind::MuAtLeast, *mcount, opts);
  return run(space, f, Kind::Mu, 0, opts);
}

std::uint64_t run_stream(const structures::Space& space, const logic::Formula& f, Kind kind, int m,
                         std::uint64_t seed, std::uint64_t stream, std::uint64_t samples) {
  logic::check_signature(f, space.sig);
  logic::Evaluator ev(f);
  return count_stream(space, ev, kind, m, seed, stream, samples);
}

}  // namespace typdeg::montecarlo
