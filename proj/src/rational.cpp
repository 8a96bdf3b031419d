#include "snn/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace snn {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
// Symmetric range: INT64_MIN never lives on the fast path.
constexpr i128 kMin = -kMax;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t value) : num_(value) {
  if (value == std::numeric_limits<std::int64_t>::min()) assign_big(BigRational(BigInt(value)));
}

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (num == std::numeric_limits<std::int64_t>::min() ||
      den == std::numeric_limits<std::int64_t>::min()) {
    assign_big(BigRational(BigInt(num), BigInt(den)));
    return;
  }
  normalize_small();
}

Rational::Rational(const BigRational& big) { assign_big(big); }

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_ = std::make_unique<BigRational>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    big_ = std::make_unique<BigRational>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::normalize_small() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (den_ == 1) return;
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  std::int64_t g = std::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

void Rational::assign_big(BigRational value) {
  const BigInt& n = boost::multiprecision::numerator(value);
  const BigInt& d = boost::multiprecision::denominator(value);
  if (n >= BigInt(static_cast<std::int64_t>(kMin)) && n <= BigInt(static_cast<std::int64_t>(kMax)) &&
      d <= BigInt(static_cast<std::int64_t>(kMax))) {
    num_ = n.convert_to<std::int64_t>();
    den_ = d.convert_to<std::int64_t>();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<BigRational>(std::move(value));
}

namespace {

// Reduces num/den (den != 0) and stores it if it fits the fast path.
bool store_small(i128 num, i128 den, std::int64_t& out_num, std::int64_t& out_den) {
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (num == 0) {
    out_num = 0;
    out_den = 1;
    return true;
  }
  if (den != 1) {
    u128 g = gcd128(uabs(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (num < kMin || num > kMax || den > kMax) return false;
  out_num = static_cast<std::int64_t>(num);
  out_den = static_cast<std::int64_t>(den);
  return true;
}

}  // namespace

BigRational Rational::to_big() const {
  if (big_) return *big_;
  return BigRational(BigInt(num_), BigInt(den_));
}

bool Rational::is_negative() const { return sign() < 0; }

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

std::int64_t Rational::floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  BigInt n = boost::multiprecision::numerator(*big_);
  BigInt d = boost::multiprecision::denominator(*big_);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) --q;
  if (q > BigInt(std::numeric_limits<std::int64_t>::max()) ||
      q < BigInt(std::numeric_limits<std::int64_t>::min())) {
    throw std::overflow_error("rational floor does not fit in int64");
  }
  return q.convert_to<std::int64_t>();
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(BigRational(-*big_));
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (rhs.num_ == 0) return *this;
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t sum;
      if (!__builtin_add_overflow(num_, rhs.num_, &sum) && sum != std::numeric_limits<std::int64_t>::min()) {
        num_ = sum;
        return *this;
      }
    }
    i128 num, den;
    if (den_ == rhs.den_) {
      num = static_cast<i128>(num_) + rhs.num_;
      den = den_;
    } else {
      std::int64_t g = std::gcd(den_, rhs.den_);
      i128 lhs_scale = rhs.den_ / g;
      i128 rhs_scale = den_ / g;
      num = num_ * lhs_scale + rhs.num_ * rhs_scale;
      den = den_ * lhs_scale;
    }
    if (store_small(num, den, num_, den_)) return *this;
  }
  assign_big(to_big() + rhs.to_big());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (rhs.den_ == 1 && rhs.num_ == 1) return *this;
    if (num_ == 0) return *this;
    if (rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (store_small(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_, num_, den_)) {
      return *this;
    }
  }
  assign_big(to_big() * rhs.to_big());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("rational division by zero");
  if (!big_ && !rhs.big_) {
    if (store_small(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_, num_, den_)) {
      return *this;
    }
  }
  assign_big(to_big() / rhs.to_big());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  // Both sides are canonical, so a big value never equals a small one.
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  BigRational lhs = a.to_big();
  BigRational rhs = b.to_big();
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::string_view num_text = text;
  std::string_view den_text = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num_text = text.substr(0, slash);
    den_text = text.substr(slash + 1);
  }
  if (!all_digits(num_text) || !all_digits(den_text)) return std::nullopt;

  BigInt num{std::string(num_text)};
  BigInt den{std::string(den_text)};
  if (den == 0) return std::nullopt;
  if (negative) num = -num;
  return Rational(BigRational(num, den));
}

std::string Rational::to_string() const {
  if (!big_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  const BigInt& d = boost::multiprecision::denominator(*big_);
  std::string s = boost::multiprecision::numerator(*big_).str();
  if (d != 1) s += "/" + d.str();
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace snn
