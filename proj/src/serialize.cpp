#include "typdeg/serialize.hpp"

#include "typdeg/error.hpp"
#include "typdeg/rng.hpp"

namespace typdeg::io {

using structures::Space;
using structures::Structure;

namespace {

Signature signature_of(const Structure& m) {
  switch (m.family()) {
    case Family::UnaryPredicates: return Signature::unary(m.k());
    case Family::UnaryFunction: return Signature::function();
    case Family::Graph: return Signature::graph();
  }
  throw Error(ErrorKind::Internal, "unhandled family");
}

void put_kind(Json& j, degrees::Kind kind, int m) {
  j["kind"] = degrees::to_string(kind);
  if (kind == degrees::Kind::MuAtLeast) j["m"] = m;
}

}  // namespace

Json to_json(const Structure& m) {
  Json j;
  const Signature sig = signature_of(m);
  j["family"] = sig.family_name();
  j["n"] = m.n();
  if (m.family() == Family::UnaryPredicates) j["k"] = m.k();
  if (m.family() == Family::UnaryFunction) {
    Json table = Json::array();
    for (auto v : m.table()) table.push_back(v + 1);
    j["payload"] = table;
  } else {
    j["payload"] = structures::encode_structure(Space{sig, m.n(), Convention::Free}, m).get_str(16);
  }
  return j;
}

Structure structure_from_json(const Json& j) {
  try {
    const std::string family = j.at("family").get<std::string>();
    const int n = j.at("n").get<int>();
    if (family == "function") {
      std::vector<int> table;
      for (const auto& v : j.at("payload")) table.push_back(v.get<int>() - 1);
      if (static_cast<int>(table.size()) != n) throw Error(ErrorKind::Usage, "function table length differs from n");
      return Structure::function_from_table(table);
    }
    if (family != "graph" && family != "unary") throw Error(ErrorKind::Usage, "unknown family '" + family + "'");
    Signature sig = family == "graph" ? Signature::graph() : Signature::unary(j.at("k").get<int>());
    ExactInteger index;
    if (index.set_str(j.at("payload").get<std::string>(), 16) != 0) {
      throw Error(ErrorKind::Usage, "structure payload is not a hex string");
    }
    return structures::decode_structure(Space{sig, n, Convention::Free}, index);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("malformed structure JSON: ") + e.what());
  }
}

Json to_json(const degrees::DegreeReport& r) {
  Json j;
  put_kind(j, r.kind, r.m);
  j["n"] = r.n;
  j["signature"] = r.signature;
  j["convention"] = to_string(r.convention);
  j["formula"] = r.formula_text;
  j["favorable"] = r.favorable.get_str();
  j["total"] = r.total.get_str();
  j["value"] = to_fraction_string(r.value);
  j["float_value"] = r.float_value;
  j["method"] = degrees::to_string(r.method);
  return j;
}

Json to_json(const montecarlo::Estimate& e) {
  Json j;
  put_kind(j, e.kind, e.m);
  j["n"] = e.n;
  j["signature"] = e.signature;
  j["convention"] = to_string(e.convention);
  j["formula"] = e.formula_text;
  j["point"] = e.point;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  j["samples"] = e.samples;
  j["favorable"] = e.favorable;
  j["seed"] = e.seed;
  j["streams"] = e.streams;
  j["generator"] = kGeneratorId;
  j["method"] = "monte-carlo";
  return j;
}

Json to_json(const closedform::BoundPair& b) {
  Json j;
  j["lower"] = to_fraction_string(b.lower);
  j["upper"] = to_fraction_string(b.upper);
  j["lower_float"] = to_double(b.lower);
  j["upper_float"] = to_double(b.upper);
  j["vacuous"] = b.vacuous();
  return j;
}

Json to_json(const degrees::PartitionCheck& p) {
  Json j;
  j["typ"] = to_json(p.typ);
  j["negated_typ"] = to_json(p.negated_typ);
  j["ntr"] = p.ntr ? to_json(*p.ntr) : Json(nullptr);
  j["sum"] = to_fraction_string(p.sum);
  j["holds"] = p.holds;
  return j;
}

Json to_json(const analysis::SequencePoint& p) {
  Json j;
  j["n"] = p.n;
  put_kind(j, p.kind, p.m);
  j["method"] = p.method ? degrees::to_string(*p.method) : "none";
  j["value"] = p.method ? Json(p.value) : Json(nullptr);
  j["exact"] = p.exact ? Json(to_fraction_string(*p.exact)) : Json(nullptr);
  j["ci_low"] = p.ci ? Json(p.ci->first) : Json(nullptr);
  j["ci_high"] = p.ci ? Json(p.ci->second) : Json(nullptr);
  if (!p.error.empty()) j["error"] = p.error;
  return j;
}

Json to_json(const analysis::ConvergenceReport& r) {
  Json j;
  j["target"] = r.target ? Json(*r.target) : Json(nullptr);
  j["last_value"] = r.last_value;
  j["last_gap"] = r.last_gap ? Json(*r.last_gap) : Json(nullptr);
  j["trend"] = analysis::to_string(r.trend);
  j["window"] = r.window;
  j["aitken_extrapolation"] = r.aitken_extrapolation ? Json(*r.aitken_extrapolation) : Json(nullptr);
  return j;
}

}  // namespace typdeg::io
