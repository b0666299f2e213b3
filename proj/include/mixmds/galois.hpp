#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixmds/rational.hpp"

namespace mixmds {

/// Element of GF(p^k) by index: the base-p digits of `value` are the
/// coefficients (low degree first) of its polynomial representative.
struct Fe {
  std::uint16_t value = 0;

  friend constexpr auto operator<=>(Fe, Fe) = default;
};

/// (prime, exponent) when q = prime^exponent with exponent >= 1.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t q);

enum class ArithKind { add, mul, inv, pow };

/// GF(q) for q = p^k <= 1024, built over the lexicographically smallest
/// monic primitive polynomial of degree k, with log/antilog tables.
class Field {
 public:
  static constexpr unsigned kMaxSize = 1024;

  /// Throws NotPrimePower, or TooLarge beyond kMaxSize.
  static Field make(unsigned q);

  unsigned size() const noexcept { return t_->q; }
  unsigned characteristic() const noexcept { return t_->p; }
  unsigned degree() const noexcept { return t_->k; }
  /// Monic defining polynomial, coefficients low degree first.
  const std::vector<unsigned>& modulus() const noexcept { return t_->modulus; }

  Fe zero() const noexcept { return Fe{0}; }
  Fe one() const noexcept { return Fe{1}; }
  /// The class of x, a primitive element.
  Fe generator() const noexcept { return t_->exp[1]; }
  Fe element(unsigned index) const;

  Fe add(Fe a, Fe b) const noexcept {
    if (t_->p == 2) return Fe{static_cast<std::uint16_t>(a.value ^ b.value)};
    return t_->add[a.value * t_->q + b.value];
  }
  Fe neg(Fe a) const noexcept { return t_->p == 2 ? a : t_->neg[a.value]; }
  Fe sub(Fe a, Fe b) const noexcept { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const noexcept {
    if (a.value == 0 || b.value == 0) return Fe{0};
    unsigned s = t_->log[a.value] + t_->log[b.value];
    if (s >= t_->q - 1) s -= t_->q - 1;
    return t_->exp[s];
  }
  /// Throws DivisionByZero on zero.
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  /// Negative exponents require a nonzero base.
  Fe pow(Fe a, std::int64_t e) const;

  /// Discrete log to base generator(); a must be nonzero.
  unsigned log(Fe a) const noexcept { return t_->log[a.value]; }
  Fe exp(std::uint64_t i) const noexcept { return t_->exp[i % (t_->q - 1)]; }

 private:
  struct Tables {
    unsigned q = 0, p = 0, k = 0;
    std::vector<unsigned> modulus;
    std::vector<Fe> exp;
    std::vector<unsigned> log;
    std::vector<Fe> add;
    std::vector<Fe> neg;
  };

  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}

  std::shared_ptr<const Tables> t_;
};

/// Generic arithmetic entry point; b is the exponent source for pow
/// (its index value) and ignored for inv.
Fe arith(const Field& f, Fe a, Fe b, ArithKind kind);

/// F1 = GF(q1) embedded in F2 = GF(q2), q1 = q2^alpha. Immutable.
class FieldTower {
 public:
  /// Throws NotPrimePower or NotASubfield.
  static FieldTower build(unsigned q1, unsigned q2);

  const Field& field() const noexcept { return f2_; }
  unsigned q1() const noexcept { return q1_; }
  unsigned q2() const noexcept { return f2_.size(); }
  /// [F2 : F1].
  unsigned m() const noexcept { return m_; }
  Rational alpha() const { return Rational(1, m_); }

  bool in_subfield(Fe x) const noexcept { return member_[x.value] != 0; }
  /// The q1 subfield elements in increasing index order.
  std::span<const Fe> subfield_elements() const noexcept { return f1_elements_; }
  /// F1-basis {1, g, ..., g^(m-1)} of F2.
  std::span<const Fe> subfield_basis() const noexcept { return basis_; }
  /// Coordinates of x (m subfield elements) in subfield_basis().
  std::span<const Fe> coordinates(Fe x) const noexcept {
    return {coords_.data() + static_cast<std::size_t>(x.value) * m_, m_};
  }
  Fe from_coordinates(std::span<const Fe> coords) const;

  /// {"q1", "q2", "m", "poly"}.
  nlohmann::json describe() const;

 private:
  FieldTower(Field f2, unsigned q1, unsigned m) : f2_(std::move(f2)), q1_(q1), m_(m) {}

  Field f2_;
  unsigned q1_;
  unsigned m_;
  std::vector<std::uint8_t> member_;
  std::vector<Fe> f1_elements_;
  std::vector<Fe> basis_;
  std::vector<Fe> coords_;
};

inline FieldTower build_tower(unsigned q1, unsigned q2) { return FieldTower::build(q1, q2); }

}  // namespace mixmds
