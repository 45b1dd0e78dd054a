#pragma once

#include <optional>
#include <string>
#include <vector>

#include "typdeg/formula.hpp"

namespace typdeg::catalog {

enum class Builtin {
  Basic,       // u(i), basic(i1,..,ip;e1,..,ep)
  NotFixed,    // fneq: F(x) != x
  Fixed,       // ffix: F(x) = x
  NoFixedPoint,  // nofix: forall y. F(y) != y (sentence)
  Isolated,    // iso
  AdjacentAll, // adjall
  AdjacentK,   // adjk(k)
};

struct Recognized {
  Builtin which;
  logic::BasicPropertyDescriptor basic;  // Basic only
  int k = 0;                             // AdjacentK only
};

struct Entry {
  std::string name;
  std::string family;  // "unary", "function" or "graph"
  std::string text;
  std::string description;
};

/// Formula for a catalog name such as "u(2)", "basic(1,3;1,0)", "fneq",
/// "adjk(2)". Empty when `name` is not catalog syntax; throws Error(Usage) for
/// a catalog name that does not fit `sig`.
std::optional<logic::Formula> lookup(const std::string& name, const Signature& sig);

/// Catalog name or formula text.
logic::Formula resolve_property(const std::string& text, const Signature& sig);

/// Identifies a catalog property regardless of the free variable's name.
std::optional<Recognized> recognize(const logic::Formula& f, const Signature& sig);

/// Concrete syntax of adjk(k): x has exactly k neighbours.
std::string adjacent_exactly_text(int k);

std::vector<Entry> entries(const Signature& sig);

}  // namespace typdeg::catalog
