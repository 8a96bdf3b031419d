#include "snn/bounds.hpp"

#include <algorithm>

#include "snn/error.hpp"

namespace snn {

std::string_view to_string(Resource r) {
  switch (r) {
    case Resource::time:
      return "time";
    case Resource::space:
      return "space";
    case Resource::energy:
      return "energy";
  }
  return "?";
}

ResourceBound ResourceBound::constant(Resource r, Rational value) {
  ResourceBound b;
  b.kind = Kind::constant;
  b.applies_to = r;
  b.offset = std::move(value);
  return b;
}

ResourceBound ResourceBound::linear(Resource r, std::vector<std::pair<std::string, Rational>> coefficients,
                                    Rational offset) {
  ResourceBound b;
  b.kind = Kind::linear;
  b.applies_to = r;
  b.offset = std::move(offset);
  for (auto& [var, c] : coefficients) b.terms.push_back({std::move(c), std::move(var), 1});
  return b;
}

ResourceBound ResourceBound::polynomial(Resource r, std::vector<Term> terms, Rational offset) {
  ResourceBound b;
  b.kind = Kind::polynomial;
  b.applies_to = r;
  b.offset = std::move(offset);
  b.terms = std::move(terms);
  return b;
}

ResourceBound ResourceBound::lookup(Resource r, std::string variable, std::vector<std::int64_t> table) {
  ResourceBound b;
  b.kind = Kind::table;
  b.applies_to = r;
  b.table_variable = std::move(variable);
  b.table = std::move(table);
  return b;
}

std::optional<std::string> ResourceBound::check() const {
  switch (kind) {
    case Kind::constant:
      if (!terms.empty()) return "constant bound has terms";
      break;
    case Kind::linear:
    case Kind::polynomial:
      for (const auto& t : terms) {
        if (t.coefficient.is_negative()) return "negative coefficient makes the bound decreasing";
        if (t.power < 0) return "negative power";
        if (kind == Kind::linear && t.power != 1) return "linear bound with non-unit power";
      }
      break;
    case Kind::table:
      if (table.empty()) return "empty table";
      if (!std::is_sorted(table.begin(), table.end())) return "table is not nondecreasing";
      break;
  }
  return std::nullopt;
}

Rational ResourceBound::evaluate(const SizeMeasure& size) const {
  auto lookup_var = [&](const std::string& var) {
    auto it = size.find(var);
    if (it == size.end()) throw SnnError("bound refers to unknown size variable '" + var + "'");
    return it->second;
  };
  if (kind == Kind::table) {
    auto x = std::max<std::int64_t>(0, lookup_var(table_variable));
    auto idx = std::min<std::size_t>(static_cast<std::size_t>(x), table.size() - 1);
    return Rational(table[idx]);
  }
  Rational value = offset;
  for (const auto& t : terms) {
    Rational x(lookup_var(t.variable));
    Rational p(1);
    for (int k = 0; k < t.power; ++k) p *= x;
    value += t.coefficient * p;
  }
  return value;
}

std::int64_t ResourceBound::cap(const SizeMeasure& size) const { return evaluate(size).floor(); }

BoundCheck check_bound(const ResourceBound& bound, const SizeMeasure& size, std::int64_t measured) {
  BoundCheck c;
  c.resource = bound.applies_to;
  c.measured = measured;
  c.declared = bound.evaluate(size);
  c.violated = Rational(measured) > c.declared;
  return c;
}

}  // namespace snn
