#include "typdeg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "typdeg/catalog.hpp"
#include "typdeg/closedform.hpp"
#include "typdeg/error.hpp"

namespace typdeg::analysis {

using degrees::Kind;
using degrees::Method;

MethodPolicy parse_policy(const std::string& text) {
  if (text == "auto") return MethodPolicy::Auto;
  if (text == "enumeration") return MethodPolicy::Enumeration;
  if (text == "closed-form") return MethodPolicy::ClosedForm;
  if (text == "monte-carlo") return MethodPolicy::MonteCarlo;
  throw Error(ErrorKind::Usage, "unknown method '" + text + "' (expected auto, enumeration, closed-form or monte-carlo)");
}

namespace {

SequencePoint from_report(const degrees::DegreeReport& r) {
  SequencePoint p;
  p.n = r.n;
  p.kind = r.kind;
  p.m = r.m;
  p.value = r.float_value;
  p.exact = r.value;
  p.method = r.method;
  return p;
}

degrees::DegreeReport enumerate_point(const structures::Space& space, const logic::Formula& f, Kind kind, int m,
                                      const degrees::EnumerationOptions& opts) {
  switch (kind) {
    case Kind::Typ: return degrees::typicality_degree(space, f, opts);
    case Kind::Ntr: return degrees::neutrality_degree(space, f, opts);
    case Kind::Mu: return degrees::truth_probability(space, f, std::nullopt, opts);
    case Kind::MuAtLeast: return degrees::truth_probability(space, f, m, opts);
  }
  throw Error(ErrorKind::Internal, "unhandled kind");
}

SequencePoint sample_point(const structures::Space& space, const logic::Formula& f, Kind kind, int m,
                           const montecarlo::SamplingOptions& opts) {
  montecarlo::Estimate e;
  if (kind == Kind::Typ || kind == Kind::Ntr) {
    e = montecarlo::estimate_degree(space, f, kind, opts);
  } else {
    e = montecarlo::estimate_truth_probability(space, f, kind == Kind::MuAtLeast ? std::optional<int>(m) : std::nullopt,
                                               opts);
  }
  SequencePoint p;
  p.n = space.n;
  p.kind = kind;
  p.m = m;
  p.value = e.point;
  p.method = Method::MonteCarlo;
  p.ci = std::make_pair(e.ci_low, e.ci_high);
  return p;
}

SequencePoint closed_form_point(const structures::Space& space, const logic::Formula& f, Kind kind, int m) {
  auto r = closedform::lookup(space, f, kind, m);
  if (!r) throw Error(ErrorKind::Usage, "no registered closed form for this property and kind");
  return from_report(*r);
}

SequencePoint compute_point(const structures::Space& space, const logic::Formula& f, Kind kind, int m,
                            MethodPolicy policy, const Budget& budget) {
  switch (policy) {
    case MethodPolicy::Enumeration:
      return from_report(enumerate_point(space, f, kind, m, budget.enumeration));
    case MethodPolicy::ClosedForm:
      return closed_form_point(space, f, kind, m);
    case MethodPolicy::MonteCarlo:
      return sample_point(space, f, kind, m, budget.sampling);
    case MethodPolicy::Auto:
      break;
  }
  if (budget.enumeration.caps.allows(space)) return from_report(enumerate_point(space, f, kind, m, budget.enumeration));
  if (auto r = closedform::lookup(space, f, kind, m)) return from_report(*r);
  return sample_point(space, f, kind, m, budget.sampling);
}

ExactRational abs_diff(const ExactRational& a, const ExactRational& b) {
  ExactRational d = a - b;
  return d < 0 ? ExactRational(-d) : d;
}

// Non-increasing check, exact when every value in the window is exact.
bool non_increasing(const std::vector<const SequencePoint*>& window, std::optional<double> target) {
  const bool all_exact =
      std::all_of(window.begin(), window.end(), [](const SequencePoint* p) { return p->exact.has_value(); });
  std::vector<ExactRational> gaps;
  if (all_exact) {
    if (target) {
      const ExactRational t(*target);
      for (auto* p : window) gaps.push_back(abs_diff(*p->exact, t));
    } else {
      for (std::size_t i = 1; i < window.size(); ++i) gaps.push_back(abs_diff(*window[i]->exact, *window[i - 1]->exact));
    }
  } else {
    if (target) {
      for (auto* p : window) gaps.push_back(ExactRational(std::fabs(p->value - *target)));
    } else {
      for (std::size_t i = 1; i < window.size(); ++i) {
        gaps.push_back(ExactRational(std::fabs(window[i]->value - window[i - 1]->value)));
      }
    }
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] > gaps[i - 1]) return false;
  }
  return true;
}

}  // namespace

std::optional<double> point_gap(const SequencePoint& p, std::optional<double> target) {
  if (!target || !p.method) return std::nullopt;
  if (p.exact) return to_double(abs_diff(*p.exact, ExactRational(*target)));
  return std::fabs(p.value - *target);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<SequencePoint> build_sequence(const Signature& sig, const logic::Formula& f, Kind kind,
                                          const std::vector<int>& ns, Convention conv, MethodPolicy policy,
                                          const Budget& budget, int m) {
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw Error(ErrorKind::Usage, "sizes must be positive");
    if (i > 0 && ns[i] <= ns[i - 1]) throw Error(ErrorKind::Usage, "sizes must be strictly increasing");
  }
  logic::check_signature(f, sig);

  std::vector<SequencePoint> out;
  for (int n : ns) {
    if (kind == Kind::Ntr && n % 2 != 0) continue;
    structures::Space space{sig, n, conv};
    try {
      out.push_back(compute_point(space, f, kind, m, policy, budget));
    } catch (const Error& e) {
      SequencePoint p;
      p.n = n;
      p.kind = kind;
      p.m = m;
      p.error = e.what();
      out.push_back(p);
    }
  }
  return out;
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::DecreasingGap: return "decreasing-gap";
    case Trend::NonMonotone: return "non-monotone";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "?";
}

ConvergenceReport convergence_report(const std::vector<SequencePoint>& seq, std::optional<double> target) {
  if (seq.size() < 3) throw Error(ErrorKind::OutOfRange, "convergence report needs at least 3 points");
  ConvergenceReport r;
  r.target = target;

  std::vector<const SequencePoint*> usable;
  for (const auto& p : seq) {
    if (p.method) usable.push_back(&p);
  }
  if (usable.empty()) return r;
  r.last_value = usable.back()->value;
  r.last_gap = point_gap(*usable.back(), target);

  if (usable.size() >= 3) {
    const std::size_t w = std::max<std::size_t>(3, (usable.size() + 1) / 2);
    std::vector<const SequencePoint*> window(usable.end() - static_cast<std::ptrdiff_t>(w), usable.end());
    r.window = w;
    const bool sampled = std::any_of(window.begin(), window.end(),
                                     [](const SequencePoint* p) { return *p->method == Method::MonteCarlo; });
    if (sampled) {
      r.trend = Trend::Inconclusive;
    } else {
      r.trend = non_increasing(window, target) ? Trend::DecreasingGap : Trend::NonMonotone;
    }
  }

  for (std::size_t end = usable.size(); end >= 3; --end) {
    const SequencePoint* a = usable[end - 3];
    const SequencePoint* b = usable[end - 2];
    const SequencePoint* c = usable[end - 1];
    if (!a->exact || !b->exact || !c->exact) continue;
    const ExactRational d1 = *b->exact - *a->exact;
    const ExactRational d2 = *c->exact - *b->exact;
    const ExactRational curvature = d2 - d1;
    if (curvature == 0) {
      if (d2 == 0) r.aitken_extrapolation = to_double(*c->exact);
    } else {
      r.aitken_extrapolation = to_double(ExactRational(*c->exact - d2 * d2 / curvature));
    }
    break;
  }
  return r;
}

std::optional<double> registered_limit(const Signature& sig, Convention conv, const logic::Formula& f, Kind kind,
                                       int m) {
  (void)conv;
  auto hit = catalog::recognize(f, sig);
  if (!hit) return std::nullopt;
  const double e_inv = std::exp(-1.0);
  if (kind == Kind::MuAtLeast && m == 0) return 1.0;
  switch (hit->which) {
    case catalog::Builtin::Basic:
      if (kind == Kind::Typ) return hit->basic.indices.size() == 1 ? 0.5 : 0.0;
      if (kind == Kind::Ntr) return 0.0;
      if (kind == Kind::MuAtLeast) return 1.0;
      return std::nullopt;
    case catalog::Builtin::NotFixed:
      if (kind == Kind::Typ || kind == Kind::MuAtLeast) return 1.0;
      if (kind == Kind::Ntr) return 0.0;
      return std::nullopt;
    case catalog::Builtin::Fixed:
      if (kind == Kind::Typ || kind == Kind::Ntr) return 0.0;
      if (kind == Kind::MuAtLeast && m == 1) return 1.0 - e_inv;
      return std::nullopt;
    case catalog::Builtin::NoFixedPoint:
      if (kind == Kind::Mu) return e_inv;
      return std::nullopt;
    case catalog::Builtin::Isolated:
    case catalog::Builtin::AdjacentAll:
    case catalog::Builtin::AdjacentK:
      if (kind == Kind::Mu) return std::nullopt;
      return 0.0;
  }
  return std::nullopt;
}

std::vector<int> parse_n_list(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "bad size list '" + text + "'");
    }
  };
  std::vector<std::string> parts;
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw Error(ErrorKind::Usage, "range must be start:end:step or start:end:loggrid");
    const int a = to_int(parts[0]);
    const int b = to_int(parts[1]);
    if (a < 1 || b < a) throw Error(ErrorKind::Usage, "range needs 1 <= start <= end");
    if (parts[2] == "loggrid") {
      out.push_back(a);
      for (long decade = 1; decade <= b; decade *= 10) {
        for (long step : {1L, 2L, 5L}) {
          const long v = step * decade;
          if (v > a && v < b) out.push_back(static_cast<int>(v));
        }
      }
      if (b != a) out.push_back(b);
    } else {
      const int step = to_int(parts[2]);
      if (step < 1) throw Error(ErrorKind::Usage, "range step must be positive");
      for (int v = a; v <= b; v += step) out.push_back(v);
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(to_int(item));
    }
  }
  if (out.empty()) throw Error(ErrorKind::Usage, "empty size list");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1) throw Error(ErrorKind::Usage, "sizes must be positive");
    if (i > 0 && out[i] <= out[i - 1]) throw Error(ErrorKind::Usage, "sizes must be strictly increasing");
  }
  return out;
}

std::string to_csv(const std::vector<SequencePoint>& seq, std::optional<double> target) {
  std::string out = "n,kind,method,value,exact,ci_low,ci_high,target,gap\n";
  for (const auto& p : seq) {
    std::string kind = degrees::to_string(p.kind);
    if (p.kind == Kind::MuAtLeast) kind += "(" + std::to_string(p.m) + ")";
    out += std::to_string(p.n) + "," + kind + "," + (p.method ? degrees::to_string(*p.method) : "none") + ",";
    out += p.method ? format_double(p.value) : "";
    out += ",";
    out += p.exact ? to_fraction_string(*p.exact) : "";
    out += ",";
    out += p.ci ? format_double(p.ci->first) : "";
    out += ",";
    out += p.ci ? format_double(p.ci->second) : "";
    out += ",";
    out += target ? format_double(*target) : "";
    out += ",";
    const auto gap = point_gap(p, target);
    out += gap ? format_double(*gap) : "";
    out += "\n";
  }
  return out;
}

}  // namespace typdeg::analysis
