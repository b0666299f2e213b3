#include "mixmds/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include "mixmds/error.hpp"

namespace mixmds {
namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw Error(Errc::Overflow, "rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<int_type>(num);
  r.den_ = static_cast<int_type>(den);
  return r;
}

Rational::Rational(int_type num, int_type den) { *this = from_wide(num, den); }

Rational Rational::parse(std::string_view text) {
  auto fail = [&] { return Error(Errc::ParseError, "cannot parse rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational a = parse(text.substr(0, slash));
    Rational b = parse(text.substr(slash + 1));
    if (!a.is_integer() || !b.is_integer()) throw fail();
    return a / b;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  __int128 num = 0;
  __int128 den = 1;
  bool any_digit = false;
  bool in_fraction = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (in_fraction) throw fail();
      in_fraction = true;
      continue;
    }
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
    any_digit = true;
    num = num * 10 + (c - '0');
    if (in_fraction) den *= 10;
    if (!fits(num) || !fits(den)) throw Error(Errc::Overflow, "rational literal too long");
  }
  if (!any_digit) throw fail();
  if (i < text.size()) {
    std::string_view exp_text = text.substr(i + 1);
    if (exp_text.empty()) throw fail();
    Rational e = parse(exp_text);
    if (!e.is_integer() || e.num() > 18 || e.num() < -18) throw fail();
    for (int_type k = 0; k < (e.num() < 0 ? -e.num() : e.num()); ++k) {
      if (e.num() < 0) den *= 10; else num *= 10;
    }
  }
  if (negative) num = -num;
  return from_wide(num, den);
}

Rational::int_type Rational::floor() const noexcept {
  int_type q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational::int_type Rational::ceil() const noexcept {
  int_type q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
  *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                    static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw Error(Errc::DivisionByZero, "rational division by zero");
  *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& x) { return x < Rational(0) ? -x : x; }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace mixmds
