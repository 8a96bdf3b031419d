#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace snn {

using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact signed fraction in lowest terms with a positive denominator.
//
// Values that fit in int64 numerator/denominator stay on a fast path; any
// operation whose intermediate overflows is redone in arbitrary precision and
// the result is demoted again when it fits. Callers never observe which
// representation is active.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const BigRational& big);

  Rational(const Rational& other);
  Rational& operator=(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  // Accepts `[-]digits[/digits]` with a nonzero denominator.
  static std::optional<Rational> parse(std::string_view text);

  std::string to_string() const;
  BigRational to_big() const;

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_negative() const;
  int sign() const;

  // Integer floor; throws std::overflow_error if it does not fit in int64.
  std::int64_t floor() const;

  Rational abs() const;
  Rational operator-() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void assign_big(BigRational value);
  void normalize_small();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<BigRational> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace snn
