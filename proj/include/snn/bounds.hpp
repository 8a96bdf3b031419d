#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snn/engine.hpp"
#include "snn/rational.hpp"

namespace snn {

enum class Resource { time, space, energy };

std::string_view to_string(Resource r);

// Named size parameters of an instance, e.g. {n: array length, V: value bound}.
using SizeMeasure = std::map<std::string, std::int64_t>;

// A declared resource bound as a function of instance size.
//
// constant:   b
// linear:     b + sum_k c_k * x_k          (one power-1 term per variable)
// polynomial: b + sum_k c_k * x_k ^ p_k
// table:      table[min(x, size - 1)] for a single variable x
//
// Coefficients and the table must make the bound nondecreasing in every
// variable.
struct ResourceBound {
  enum class Kind { constant, linear, polynomial, table };
  struct Term {
    Rational coefficient;
    std::string variable;
    int power = 1;
  };

  Kind kind = Kind::constant;
  Resource applies_to = Resource::time;
  Rational offset;
  std::vector<Term> terms;
  std::string table_variable;
  std::vector<std::int64_t> table;

  static ResourceBound constant(Resource r, Rational value);
  static ResourceBound linear(Resource r, std::vector<std::pair<std::string, Rational>> coefficients,
                              Rational offset);
  static ResourceBound polynomial(Resource r, std::vector<Term> terms, Rational offset);
  static ResourceBound lookup(Resource r, std::string variable, std::vector<std::int64_t> table);

  // Empty when well formed.
  std::optional<std::string> check() const;

  // Throws SnnError when a referenced variable is missing from `size`.
  Rational evaluate(const SizeMeasure& size) const;
  // Largest integer not above the bound value.
  std::int64_t cap(const SizeMeasure& size) const;
};

struct ResourceBounds {
  ResourceBound time;
  ResourceBound space;
  ResourceBound energy;
};

struct BoundCheck {
  Resource resource = Resource::time;
  std::int64_t measured = 0;
  Rational declared;
  // Only strict excess counts.
  bool violated = false;
};

BoundCheck check_bound(const ResourceBound& bound, const SizeMeasure& size, std::int64_t measured);

// Concrete caps for the oracle.
struct ConcreteBounds {
  std::int64_t time = 0;
  std::int64_t space = 0;
  std::int64_t energy = 0;
};

}  // namespace snn
