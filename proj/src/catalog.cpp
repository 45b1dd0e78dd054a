#include "typdeg/catalog.hpp"

#include <regex>
#include <sstream>

#include "typdeg/error.hpp"

namespace typdeg::catalog {

using logic::Formula;
using logic::Op;

namespace {

constexpr int kMaxRecognizedK = 16;

constexpr const char* kNotFixed = "F(x) != x";
constexpr const char* kFixed = "F(x) = x";
constexpr const char* kNoFixedPoint = "forall y. F(y) != y";
constexpr const char* kIsolated = "forall y. !E(x, y)";
// E is irreflexive, so "adjacent to every node" has to exempt x itself.
constexpr const char* kAdjacentAll = "forall y. (x = y | E(x, y))";

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void require_family(const Signature& sig, Family family, const std::string& name) {
  if (sig.family() != family) {
    throw Error(ErrorKind::Usage, "catalog property '" + name + "' does not belong to signature " + sig.to_string());
  }
}

// Flattens a left-leaning conjunction of signed unary literals over `var`.
bool collect_literals(const Formula& f, const std::string& var, logic::BasicPropertyDescriptor& out) {
  if (f.op() == Op::And) {
    return collect_literals(f.left(), var, out) && collect_literals(f.right(), var, out);
  }
  int sign = 1;
  const Formula* atom = &f;
  if (f.op() == Op::Not) {
    sign = 0;
    atom = &f.left();
  }
  if (atom->op() != Op::Predicate) return false;
  if (atom->first_term().variable != var || atom->first_term().depth != 0) return false;
  out.indices.push_back(atom->predicate_index());
  out.signs.push_back(sign);
  return true;
}

}  // namespace

std::string adjacent_exactly_text(int k) {
  if (k < 1) throw Error(ErrorKind::Usage, "adjk needs k >= 1");
  if (k == 1) return "exists! y. E(x, y)";
  std::string out;
  for (int i = 1; i <= k; ++i) out += "exists y" + std::to_string(i) + ". ";
  out += "(";
  for (int i = 1; i <= k; ++i) out += "E(x, y" + std::to_string(i) + ") & ";
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) out += "y" + std::to_string(i) + " != y" + std::to_string(j) + " & ";
  }
  out += "forall z. (E(x, z) -> ";
  for (int i = 1; i <= k; ++i) {
    if (i > 1) out += " | ";
    out += "z = y" + std::to_string(i);
  }
  out += "))";
  return out;
}

std::optional<Formula> lookup(const std::string& name, const Signature& sig) {
  static const std::regex u_re(R"(\s*u\((\d+)\)\s*)");
  static const std::regex basic_re(R"(\s*basic\((\d+(?:,\d+)*);([01](?:,[01])*)\)\s*)");
  static const std::regex adjk_re(R"(\s*adjk\((\d+)\)\s*)");
  std::smatch match;
  std::string trimmed = name;
  trimmed.erase(0, trimmed.find_first_not_of(" \t"));
  trimmed.erase(trimmed.find_last_not_of(" \t") + 1);

  if (std::regex_match(name, match, u_re)) {
    require_family(sig, Family::UnaryPredicates, trimmed);
    logic::BasicPropertyDescriptor d{{std::stoi(match[1])}, {1}};
    d.validate(sig.k());
    return d.to_formula();
  }
  if (std::regex_match(name, match, basic_re)) {
    require_family(sig, Family::UnaryPredicates, trimmed);
    logic::BasicPropertyDescriptor d{parse_int_list(match[1]), parse_int_list(match[2])};
    d.validate(sig.k());
    return d.to_formula();
  }
  if (std::regex_match(name, match, adjk_re)) {
    require_family(sig, Family::Graph, trimmed);
    return logic::parse_property(adjacent_exactly_text(std::stoi(match[1])), sig);
  }
  if (trimmed == "fneq" || trimmed == "ffix" || trimmed == "nofix") {
    require_family(sig, Family::UnaryFunction, trimmed);
    const char* text = trimmed == "fneq" ? kNotFixed : trimmed == "ffix" ? kFixed : kNoFixedPoint;
    return logic::parse_property(text, sig);
  }
  if (trimmed == "iso" || trimmed == "adjall") {
    require_family(sig, Family::Graph, trimmed);
    return logic::parse_property(trimmed == "iso" ? kIsolated : kAdjacentAll, sig);
  }
  return std::nullopt;
}

Formula resolve_property(const std::string& text, const Signature& sig) {
  if (auto f = lookup(text, sig)) return *f;
  return logic::parse_property(text, sig);
}

std::optional<Recognized> recognize(const Formula& f, const Signature& sig) {
  auto free = f.free_variables();
  if (free.empty()) {
    if (sig.family() == Family::UnaryFunction && f.op() == Op::Forall) {
      const Formula& body = f.left();
      const std::string& v = f.bound_variable();
      if (body == Formula::negation(Formula::equal({v, 1}, {v, 0}))) return Recognized{Builtin::NoFixedPoint, {}, 0};
    }
    return std::nullopt;
  }
  if (free.size() != 1) return std::nullopt;

  Formula g = f;
  const std::string var = *free.begin();
  if (var != "x") {
    try {
      g = logic::substitute_free(f, var, "x");
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  switch (sig.family()) {
    case Family::UnaryPredicates: {
      logic::BasicPropertyDescriptor d;
      if (!collect_literals(g, "x", d)) return std::nullopt;
      try {
        d.validate(sig.k());
      } catch (const Error&) {
        return std::nullopt;
      }
      return Recognized{Builtin::Basic, d, 0};
    }
    case Family::UnaryFunction:
      if (g == logic::parse_property(kNotFixed, sig)) return Recognized{Builtin::NotFixed, {}, 0};
      if (g == logic::parse_property(kFixed, sig)) return Recognized{Builtin::Fixed, {}, 0};
      return std::nullopt;
    case Family::Graph:
      if (g == logic::parse_property(kIsolated, sig)) return Recognized{Builtin::Isolated, {}, 0};
      if (g == logic::parse_property(kAdjacentAll, sig)) return Recognized{Builtin::AdjacentAll, {}, 0};
      for (int k = 1; k <= kMaxRecognizedK; ++k) {
        if (g == logic::parse_property(adjacent_exactly_text(k), sig)) return Recognized{Builtin::AdjacentK, {}, k};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Entry> entries(const Signature& sig) {
  std::vector<Entry> out;
  auto add = [&](const std::string& name, const std::string& description) {
    out.push_back({name, sig.family_name(), logic::render(*lookup(name, sig)), description});
  };
  switch (sig.family()) {
    case Family::UnaryPredicates:
      for (int i = 1; i <= sig.k(); ++i) add("u(" + std::to_string(i) + ")", "x belongs to W" + std::to_string(i));
      if (sig.k() >= 2) add("basic(1,2;1,0)", "signed conjunction of predicates (indices;signs)");
      break;
    case Family::UnaryFunction:
      add("fneq", "x is moved by F");
      add("ffix", "x is a fixed point of F");
      add("nofix", "F has no fixed point (sentence)");
      break;
    case Family::Graph:
      add("iso", "x is an isolated node");
      add("adjall", "x is adjacent to every other node");
      for (int k = 1; k <= 3; ++k) add("adjk(" + std::to_string(k) + ")", "x has exactly " + std::to_string(k) + " neighbours");
      break;
  }
  return out;
}

}  // namespace typdeg::catalog
