#include "typdeg/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "typdeg/analysis.hpp"
#include "typdeg/catalog.hpp"
#include "typdeg/closedform.hpp"
#include "typdeg/error.hpp"
#include "typdeg/evaluator.hpp"
#include "typdeg/montecarlo.hpp"
#include "typdeg/rng.hpp"
#include "typdeg/serialize.hpp"
#include "typdeg/verify.hpp"

extern char** environ;

namespace typdeg::cli {

using degrees::Kind;
using degrees::Method;
using io::Json;

namespace {

constexpr const char* kEnvPrefix = "TYPDEG_";

struct Flags {
  std::string sig;
  std::string conv = "free";
  std::optional<int> n;
  std::string ns;
  std::string prop;
  std::optional<int> m;
  std::string kind;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<unsigned> streams;
  std::string out;
  std::string format;
  std::string caps_override;
  std::string config;
  std::string method = "auto";
  std::string target = "auto";
  std::string suite = "all";
  int count = 1;
};

/// Effective settings after file < flags < environment.
struct Settings {
  degrees::Caps caps;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  unsigned threads = 0;
  unsigned streams = 16;
  std::string out_dir;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size() || value.front() == '-') throw std::invalid_argument("bad");
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Usage, "setting '" + key + "' needs a non-negative integer, got '" + value + "'");
  }
}

void apply_setting(Settings& s, const std::string& key, const std::string& value) {
  if (key == "caps") {
    s.caps.apply_overrides(value);
  } else if (key == "seed") {
    s.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "samples") {
    s.samples = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    s.threads = parse_number<unsigned>(key, value);
  } else if (key == "streams") {
    s.streams = parse_number<unsigned>(key, value);
  } else if (key == "out_dir") {
    s.out_dir = value;
  } else {
    throw Error(ErrorKind::Usage, "unknown setting '" + key + "'");
  }
}

void load_config(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Usage, path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

Settings resolve_settings(const Flags& f, const Environment& env) {
  Settings s;
  auto env_value = [&](const std::string& name) -> std::optional<std::string> {
    auto it = env.find(kEnvPrefix + name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };

  std::string config = f.config;
  if (auto v = env_value("CONFIG")) config = *v;
  if (!config.empty()) load_config(s, config);

  if (!f.caps_override.empty()) s.caps.apply_overrides(f.caps_override);
  if (f.seed) s.seed = *f.seed;
  if (f.samples) s.samples = *f.samples;
  if (f.threads) s.threads = *f.threads;
  if (f.streams) s.streams = *f.streams;

  for (const char* key : {"CAPS", "SEED", "SAMPLES", "THREADS", "STREAMS", "OUT_DIR"}) {
    if (auto v = env_value(key)) {
      std::string name = key;
      for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      apply_setting(s, name, *v);
    }
  }
  return s;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string command_line(const std::vector<std::string>& args) {
  std::string out = "typdeg";
  for (const auto& a : args) {
    out += ' ';
    if (a.find_first_of(" \t\"'") == std::string::npos && !a.empty()) {
      out += a;
    } else {
      out += '"';
      for (char c : a) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    }
  }
  return out;
}

std::string short_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Machine output for one run: records plus, for jsonl, a manifest line.
class Sink {
 public:
  Sink(const Flags& f, const Settings& s, std::string default_format, const std::vector<std::string>& args)
      : settings_(s), args_(args) {
    format_ = f.format.empty() ? std::move(default_format) : f.format;
    if (format_ != "json" && format_ != "csv" && format_ != "jsonl") {
      throw Error(ErrorKind::Usage, "unknown format '" + format_ + "' (expected json, csv or jsonl)");
    }
    if (!f.out.empty()) {
      std::filesystem::path p(f.out);
      if (p.is_relative() && !s.out_dir.empty()) p = std::filesystem::path(s.out_dir) / p;
      path_ = p.string();
    }
    signature_ = f.sig;
    convention_ = f.conv;
  }

  const std::string& format() const { return format_; }
  bool to_file() const { return !path_.empty(); }

  /// Writes `json_doc` (json), `csv_doc` (csv) or `records` (jsonl) to --out,
  /// or to `stdout_fallback` when no --out was given and the caller asks for it.
  void emit(const Json& json_doc, const std::string& csv_doc, const std::vector<Json>& records) const {
    if (path_.empty()) return;
    if (format_ == "jsonl") {
      std::ofstream file(path_, std::ios::app);
      if (!file) throw Error(ErrorKind::Io, "cannot open '" + path_ + "' for appending");
      for (const auto& r : records) file << r.dump() << '\n';
      file << manifest().dump() << '\n';
      if (!file) throw Error(ErrorKind::Io, "write to '" + path_ + "' failed");
      return;
    }
    std::ofstream file(path_, std::ios::trunc);
    if (!file) throw Error(ErrorKind::Io, "cannot open '" + path_ + "' for writing");
    if (format_ == "json") {
      file << json_doc.dump(2) << '\n';
    } else {
      if (csv_doc.empty()) throw Error(ErrorKind::Usage, "this command has no CSV output");
      file << csv_doc;
    }
    if (!file) throw Error(ErrorKind::Io, "write to '" + path_ + "' failed");
  }

  Json manifest() const {
    Json m;
    m["record"] = "manifest";
    m["tool_version"] = kToolVersion;
    m["command_line"] = command_line(args_);
    m["signature"] = signature_;
    m["convention"] = convention_;
    m["seed"] = settings_.seed;
    m["generator"] = kGeneratorId;
    m["caps"] = settings_.caps.to_string();
    m["timestamp"] = timestamp();
    return m;
  }

 private:
  const Settings& settings_;
  const std::vector<std::string>& args_;
  std::string format_;
  std::string path_;
  std::string signature_;
  std::string convention_;
};

Json tagged(Json j, const char* record) {
  Json out;
  out["record"] = record;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value();
  return out;
}

Signature require_sig(const Flags& f) {
  if (f.sig.empty()) throw Error(ErrorKind::Usage, "--sig is required (unary:k, function or graph)");
  return Signature::parse(f.sig);
}

int require_n(const Flags& f) {
  if (!f.n) throw Error(ErrorKind::Usage, "--n is required");
  if (*f.n < 1) throw Error(ErrorKind::Usage, "--n must be positive");
  return *f.n;
}

logic::Formula require_prop(const Flags& f, const Signature& sig) {
  if (f.prop.empty()) throw Error(ErrorKind::Usage, "--prop is required (formula text or catalog name)");
  return catalog::resolve_property(f.prop, sig);
}

degrees::EnumerationOptions enumeration_options(const Settings& s) {
  degrees::EnumerationOptions o;
  o.caps = s.caps;
  o.threads = s.threads;
  return o;
}

montecarlo::SamplingOptions sampling_options(const Settings& s) {
  montecarlo::SamplingOptions o;
  o.samples = s.samples;
  o.seed = s.seed;
  o.threads = s.threads;
  o.streams = s.streams;
  return o;
}

std::string label(Kind kind, int n, const std::string& formula, int m) {
  switch (kind) {
    case Kind::Typ: return "d_" + std::to_string(n) + "(" + formula + " : typ)";
    case Kind::Ntr: return "d_" + std::to_string(n) + "(" + formula + " : ntr)";
    case Kind::Mu: return "mu_" + std::to_string(n) + "(" + formula + ")";
    case Kind::MuAtLeast: return "mu_" + std::to_string(n) + "((" + formula + ")^(" + std::to_string(m) + "))";
  }
  return "?";
}

// One measurement by the chosen policy; exactly one of the results is set.
struct Measurement {
  std::optional<degrees::DegreeReport> report;
  std::optional<montecarlo::Estimate> estimate;
};

Measurement measure(const structures::Space& space, const logic::Formula& f, Kind kind, int m,
                    analysis::MethodPolicy policy, const Settings& s) {
  auto enumerate = [&]() {
    const auto opts = enumeration_options(s);
    switch (kind) {
      case Kind::Typ: return degrees::typicality_degree(space, f, opts);
      case Kind::Ntr: return degrees::neutrality_degree(space, f, opts);
      case Kind::Mu: return degrees::truth_probability(space, f, std::nullopt, opts);
      case Kind::MuAtLeast: return degrees::truth_probability(space, f, m, opts);
    }
    throw Error(ErrorKind::Internal, "unhandled kind");
  };
  auto sample = [&]() {
    const auto opts = sampling_options(s);
    if (kind == Kind::Typ || kind == Kind::Ntr) return montecarlo::estimate_degree(space, f, kind, opts);
    return montecarlo::estimate_truth_probability(space, f, kind == Kind::MuAtLeast ? std::optional<int>(m) : std::nullopt,
                                                  opts);
  };
  auto closed = [&]() { return closedform::lookup(space, f, kind, m); };

  Measurement out;
  switch (policy) {
    case analysis::MethodPolicy::Enumeration:
      out.report = enumerate();
      break;
    case analysis::MethodPolicy::ClosedForm:
      out.report = closed();
      if (!out.report) throw Error(ErrorKind::Usage, "no registered closed form for this property and kind");
      break;
    case analysis::MethodPolicy::MonteCarlo:
      out.estimate = sample();
      break;
    case analysis::MethodPolicy::Auto:
      if (s.caps.allows(space)) {
        out.report = enumerate();
      } else if (auto r = closed()) {
        out.report = r;
      } else {
        out.estimate = sample();
      }
      break;
  }
  return out;
}

void print_measurement(std::ostream& out, const Measurement& r) {
  if (r.report) {
    const auto& d = *r.report;
    out << label(d.kind, d.n, d.formula_text, d.m) << " = " << to_fraction_string(d.value) << " ("
        << short_double(d.float_value) << ") via " << degrees::to_string(d.method) << "\n";
    out << "  favorable " << d.favorable.get_str() << " of " << d.total.get_str() << "\n";
  } else {
    const auto& e = *r.estimate;
    out << label(e.kind, e.n, e.formula_text, e.m) << " ~ " << short_double(e.point) << " [" << short_double(e.ci_low)
        << ", " << short_double(e.ci_high) << "] via monte-carlo\n";
    out << "  favorable " << e.favorable << " of " << e.samples << " samples, seed " << e.seed << "\n";
  }
}

std::string measurement_csv(const Measurement& r) {
  analysis::SequencePoint p;
  if (r.report) {
    p.n = r.report->n;
    p.kind = r.report->kind;
    p.m = r.report->m;
    p.value = r.report->float_value;
    p.exact = r.report->value;
    p.method = r.report->method;
  } else {
    p.n = r.estimate->n;
    p.kind = r.estimate->kind;
    p.m = r.estimate->m;
    p.value = r.estimate->point;
    p.method = Method::MonteCarlo;
    p.ci = std::make_pair(r.estimate->ci_low, r.estimate->ci_high);
  }
  return analysis::to_csv({p}, std::nullopt);
}

Json measurement_json(const Measurement& r) { return r.report ? io::to_json(*r.report) : io::to_json(*r.estimate); }

// ---------------------------------------------------------------------------

int cmd_degree(const Flags& f, const Settings& s, const std::vector<std::string>& args, std::ostream& out) {
  const Signature sig = require_sig(f);
  const int n = require_n(f);
  const logic::Formula phi = require_prop(f, sig);
  logic::property_variable(phi);
  const Kind kind = degrees::parse_kind(f.kind.empty() ? "typ" : f.kind);
  if (kind != Kind::Typ && kind != Kind::Ntr) throw Error(ErrorKind::Usage, "degree takes --kind typ or ntr");
  Sink sink(f, s, "json", args);

  if (kind == Kind::Ntr && n % 2 != 0) {
    out << label(kind, n, logic::render(phi), 0) << " absent: neutrality needs even n\n";
    Json j;
    j["kind"] = "ntr";
    j["n"] = n;
    j["signature"] = sig.to_string();
    j["convention"] = f.conv;
    j["formula"] = logic::render(phi);
    j["value"] = nullptr;
    sink.emit(j, "", {tagged(j, "degree")});
    return 0;
  }

  structures::Space space{sig, n, parse_convention(f.conv)};
  Measurement r = measure(space, phi, kind, 0, analysis::parse_policy(f.method), s);
  print_measurement(out, r);
  sink.emit(measurement_json(r), measurement_csv(r), {tagged(measurement_json(r), "degree")});
  return 0;
}

int cmd_mu(const Flags& f, const Settings& s, const std::vector<std::string>& args, std::ostream& out) {
  const Signature sig = require_sig(f);
  const int n = require_n(f);
  const logic::Formula phi = require_prop(f, sig);
  Sink sink(f, s, "json", args);
  const Kind kind = f.m ? Kind::MuAtLeast : Kind::Mu;
  structures::Space space{sig, n, parse_convention(f.conv)};
  Measurement r = measure(space, phi, kind, f.m.value_or(0), analysis::parse_policy(f.method), s);
  print_measurement(out, r);
  sink.emit(measurement_json(r), measurement_csv(r), {tagged(measurement_json(r), "mu")});
  return 0;
}

int cmd_sequence(const Flags& f, const Settings& s, const std::vector<std::string>& args, std::ostream& out) {
  const Signature sig = require_sig(f);
  const logic::Formula phi = require_prop(f, sig);
  if (f.ns.empty()) throw Error(ErrorKind::Usage, "--ns is required (list, a:b:step or a:b:loggrid)");
  const std::vector<int> ns = analysis::parse_n_list(f.ns);
  Kind kind;
  if (f.m) {
    kind = Kind::MuAtLeast;
  } else if (f.kind.empty()) {
    kind = phi.is_sentence() ? Kind::Mu : Kind::Typ;
  } else {
    kind = degrees::parse_kind(f.kind);
  }
  const Convention conv = parse_convention(f.conv);

  std::optional<double> target;
  if (f.target == "auto") {
    target = analysis::registered_limit(sig, conv, phi, kind, f.m.value_or(0));
  } else if (f.target != "none") {
    try {
      std::size_t used = 0;
      target = std::stod(f.target, &used);
      if (used != f.target.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "--target needs a number, auto or none");
    }
  }

  analysis::Budget budget;
  budget.enumeration = enumeration_options(s);
  budget.sampling = sampling_options(s);
  auto seq = analysis::build_sequence(sig, phi, kind, ns, conv, analysis::parse_policy(f.method), budget,
                                      f.m.value_or(0));
  const std::string csv = analysis::to_csv(seq, target);

  Sink sink(f, s, "csv", args);
  const bool csv_to_stdout = f.format == "csv" && !sink.to_file();
  if (csv_to_stdout) {
    out << csv;
  } else {
    out << std::left << std::setw(8) << "n" << std::setw(13) << "method" << std::setw(22) << "value"
        << "gap\n";
    for (const auto& p : seq) {
      out << std::setw(8) << p.n << std::setw(13) << (p.method ? degrees::to_string(*p.method) : "none");
      if (!p.method) {
        out << p.error << "\n";
        continue;
      }
      out << std::setw(22) << short_double(p.value);
      const auto gap = analysis::point_gap(p, target);
      out << (gap ? short_double(*gap) : "-") << "\n";
    }
  }

  Json doc;
  doc["signature"] = sig.to_string();
  doc["convention"] = to_string(conv);
  doc["formula"] = logic::render(phi);
  doc["points"] = Json::array();
  std::vector<Json> records;
  for (const auto& p : seq) {
    doc["points"].push_back(io::to_json(p));
    records.push_back(tagged(io::to_json(p), "point"));
  }
  std::optional<analysis::ConvergenceReport> report;
  if (seq.size() >= 3) {
    report = analysis::convergence_report(seq, target);
    doc["convergence"] = io::to_json(*report);
    records.push_back(tagged(io::to_json(*report), "convergence"));
  }
  sink.emit(doc, csv, records);

  if (report && !csv_to_stdout) {
    out << "trend " << analysis::to_string(report->trend);
    if (report->last_gap) out << ", last gap " << short_double(*report->last_gap);
    if (report->aitken_extrapolation) out << ", aitken " << short_double(*report->aitken_extrapolation);
    out << "\n";
  }
  return 0;
}

int cmd_sample(const Flags& f, const Settings& s, const std::vector<std::string>& args, std::ostream& out) {
  const Signature sig = require_sig(f);
  const int n = require_n(f);
  if (f.count < 1) throw Error(ErrorKind::Usage, "--count must be positive");
  std::optional<logic::Formula> phi;
  if (!f.prop.empty()) phi = require_prop(f, sig);
  Sink sink(f, s, "json", args);
  structures::Space space{sig, n, parse_convention(f.conv)};
  Rng rng = Rng::for_stream(s.seed, 0);
  Json all = Json::array();
  std::vector<Json> records;
  for (int i = 0; i < f.count; ++i) {
    auto m = structures::sample_structure(space, rng);
    Json j = io::to_json(m);
    if (phi) {
      logic::Evaluator ev(*phi);
      if (ev.is_property()) {
        j["extension"] = logic::extension_size(*phi, m);
        j["class"] = logic::to_string(logic::classify(*phi, m));
      } else {
        j["holds"] = ev.holds(m);
      }
    }
    out << j.dump() << "\n";
    all.push_back(j);
    records.push_back(tagged(j, "structure"));
  }
  sink.emit(all, "", records);
  return 0;
}

int cmd_verify(const Flags& f, const Settings& s, const std::vector<std::string>& args, std::ostream& out) {
  Sink sink(f, s, "json", args);
  verify::VerifyOptions opts;
  opts.enumeration = enumeration_options(s);
  opts.seed = s.seed;
  auto results = verify::run_suite(f.suite, opts);
  int failed = 0;
  Json all = Json::array();
  std::vector<Json> records;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.name << " (" << r.cases << " cases)";
    if (!r.passed) out << ": " << r.detail;
    out << "\n";
    if (!r.passed) ++failed;
    Json j;
    j["suite"] = r.suite;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["cases"] = r.cases;
    j["detail"] = r.detail;
    all.push_back(j);
    records.push_back(tagged(j, "check"));
  }
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                      : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
      << "\n";
  sink.emit(all, "", records);
  return failed == 0 ? 0 : 1;
}

int cmd_formulas(const Flags& f, const Settings& s, const std::vector<std::string>& args, std::ostream& out) {
  Sink sink(f, s, "json", args);
  if (!f.prop.empty()) {
    const Signature sig = require_sig(f);
    const logic::Formula phi = require_prop(f, sig);
    auto free = phi.free_variables();
    out << logic::render(phi) << "\n";
    out << (free.empty() ? "sentence" : "property in " + *free.begin()) << "\n";
    Json j;
    j["input"] = f.prop;
    j["formula"] = logic::render(phi);
    j["sentence"] = free.empty();
    sink.emit(j, "", {tagged(j, "formula")});
    return 0;
  }
  std::vector<Signature> sigs;
  if (f.sig.empty()) {
    sigs = {Signature::unary(2), Signature::function(), Signature::graph()};
  } else {
    sigs = {Signature::parse(f.sig)};
  }
  Json all = Json::array();
  std::vector<Json> records;
  for (const auto& sig : sigs) {
    for (const auto& e : catalog::entries(sig)) {
      out << std::left << std::setw(16) << e.name << std::setw(10) << e.family << e.text << "\n";
      Json j;
      j["name"] = e.name;
      j["family"] = e.family;
      j["formula"] = e.text;
      j["description"] = e.description;
      all.push_back(j);
      records.push_back(tagged(j, "catalog"));
    }
  }
  sink.emit(all, "", records);
  return 0;
}

void add_common(CLI::App* c, Flags& f) {
  c->add_option("--out", f.out, "Machine output file (relative to out_dir when configured)");
  c->add_option("--format", f.format, "json, csv or jsonl (jsonl appends records and a manifest)");
  c->add_option("--caps-override", f.caps_override, "Enumeration caps, e.g. unary=24,function=8,graph=7");
  c->add_option("--threads", f.threads, "Worker threads (default: machine parallelism)");
  c->add_option("--config", f.config, "key=value settings file");
  c->add_option("--seed", f.seed, "Random seed");
}

void add_space(CLI::App* c, Flags& f) {
  c->add_option("--sig", f.sig, "unary:k, function or graph");
  c->add_option("--conv", f.conv, "free or paper-distinct (unary only)")->check(CLI::IsMember({"free", "paper-distinct"}));
  c->add_option("--prop", f.prop, "Formula text or catalog name");
}

void add_measure(CLI::App* c, Flags& f) {
  c->add_option("--samples", f.samples, "Monte Carlo samples");
  c->add_option("--streams", f.streams, "Monte Carlo generator streams");
  c->add_option("--method", f.method, "auto, enumeration, closed-form or monte-carlo");
}

}  // namespace

Environment process_environment() {
  Environment env;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string entry = *e;
    if (entry.rfind(kEnvPrefix, 0) != 0) continue;
    auto eq = entry.find('=');
    if (eq == std::string::npos) continue;
    env[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  return env;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  Flags f;
  CLI::App app{"Typicality degrees and truth probabilities over finite structures", "typdeg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* degree = app.add_subcommand("degree", "Exact or estimated d_n(phi:typ) / d_n(phi:ntr)");
  add_space(degree, f);
  add_measure(degree, f);
  add_common(degree, f);
  degree->add_option("--n", f.n, "Universe size");
  degree->add_option("--kind", f.kind, "typ or ntr");

  auto* mu = app.add_subcommand("mu", "Truth probability of a sentence, or of phi^(m) with --m");
  add_space(mu, f);
  add_measure(mu, f);
  add_common(mu, f);
  mu->add_option("--n", f.n, "Universe size");
  mu->add_option("--m", f.m, "Witness count for phi^(m)");

  auto* sequence = app.add_subcommand("sequence", "Values over a range of sizes with a convergence summary");
  add_space(sequence, f);
  add_measure(sequence, f);
  add_common(sequence, f);
  sequence->add_option("--ns", f.ns, "Sizes: a,b,c or a:b:step or a:b:loggrid");
  sequence->add_option("--kind", f.kind, "typ, ntr or mu");
  sequence->add_option("--m", f.m, "Witness count for phi^(m)");
  sequence->add_option("--target", f.target, "Limit to measure gaps against: number, auto or none");

  auto* sample = app.add_subcommand("sample", "Draw uniform random structures");
  add_space(sample, f);
  add_common(sample, f);
  sample->add_option("--n", f.n, "Universe size");
  sample->add_option("--count", f.count, "Number of structures");

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  add_common(verify, f);
  verify->add_option("--suite", f.suite, "Suite name");

  auto* formulas = app.add_subcommand("formulas", "List the property catalog or canonicalize --prop");
  add_space(formulas, f);
  add_common(formulas, f);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Settings settings = resolve_settings(f, env);
    if (degree->parsed()) return cmd_degree(f, settings, args, out);
    if (mu->parsed()) return cmd_mu(f, settings, args, out);
    if (sequence->parsed()) return cmd_sequence(f, settings, args, out);
    if (sample->parsed()) return cmd_sample(f, settings, args, out);
    if (verify->parsed()) return cmd_verify(f, settings, args, out);
    if (formulas->parsed()) return cmd_formulas(f, settings, args, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace typdeg::cli
