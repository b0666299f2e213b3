#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mixmds {

/// Exact rational with 64-bit numerator and positive denominator, always
/// kept in lowest terms. Intermediate products use 128-bit arithmetic and
/// throw Errc::Overflow if the reduced result does not fit.
class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  Rational(int_type num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(int_type num, int_type den);

  /// Accepts "7", "-3/4", "0.75", "1.5e-2".
  static Rational parse(std::string_view text);

  int_type num() const noexcept { return num_; }
  int_type den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  int_type floor() const noexcept;
  int_type ceil() const noexcept;
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  long double to_long_double() const noexcept {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }
  /// "3/4", or "3" for integers.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  static Rational from_wide(__int128 num, __int128 den);

  int_type num_ = 0;
  int_type den_ = 1;
};

Rational abs(const Rational& x);
std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace mixmds
