#include "mixmds/galois.hpp"

#include <string>

#include "mixmds/error.hpp"

namespace mixmds {
namespace {

std::vector<unsigned> to_digits(unsigned value, unsigned p, unsigned k) {
  std::vector<unsigned> d(k);
  for (unsigned i = 0; i < k; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
  unsigned v = 0;
  for (unsigned i = static_cast<unsigned>(d.size()); i-- > 0;) v = v * p + d[i];
  return v;
}

// Multiplies the residue `d` by x modulo the monic polynomial x^k + sum low[i] x^i.
void times_x(std::vector<unsigned>& d, const std::vector<unsigned>& low, unsigned p) {
  const unsigned k = static_cast<unsigned>(d.size());
  unsigned overflow = d[k - 1];
  for (unsigned j = k - 1; j > 0; --j) d[j] = d[j - 1];
  d[0] = 0;
  for (unsigned j = 0; j < k; ++j) d[j] = (d[j] + (p - low[j]) * overflow) % p;
}

// Antilog table of x if x is primitive modulo the candidate, empty otherwise.
std::vector<unsigned> primitive_powers(const std::vector<unsigned>& low, unsigned p, unsigned k) {
  unsigned q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  std::vector<unsigned> powers;
  powers.reserve(q - 1);
  std::vector<unsigned> cur(k, 0);
  cur[0] = 1;
  for (unsigned i = 0; i < q - 1; ++i) {
    unsigned v = from_digits(cur, p);
    if (v == 0 || (i > 0 && v == 1)) return {};
    powers.push_back(v);
    times_x(cur, low, p);
  }
  if (from_digits(cur, p) != 1) return {};
  return powers;
}

}  // namespace

std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(q, 1u);
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, e);
}

Field Field::make(unsigned q) {
  auto pp = prime_power_decompose(q);
  if (!pp) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (q > kMaxSize) throw Error(Errc::TooLarge, "field size " + std::to_string(q) + " exceeds table limit");
  const unsigned p = static_cast<unsigned>(pp->first);
  const unsigned k = pp->second;

  auto t = std::make_shared<Tables>();
  t->q = q;
  t->p = p;
  t->k = k;

  std::vector<unsigned> powers;
  std::vector<unsigned> low;
  for (unsigned c = 1; c < q && powers.empty(); ++c) {
    low = to_digits(c, p, k);
    if (low[0] == 0) continue;
    powers = primitive_powers(low, p, k);
  }
  // A primitive polynomial exists for every finite field.
  t->modulus = low;
  t->modulus.push_back(1);

  t->exp.resize(q - 1);
  t->log.assign(q, 0);
  for (unsigned i = 0; i < q - 1; ++i) {
    t->exp[i] = Fe{static_cast<std::uint16_t>(powers[i])};
    t->log[powers[i]] = i;
  }

  if (p != 2) {
    t->add.resize(static_cast<std::size_t>(q) * q);
    t->neg.resize(q);
    for (unsigned a = 0; a < q; ++a) {
      auto da = to_digits(a, p, k);
      std::vector<unsigned> dn(k);
      for (unsigned j = 0; j < k; ++j) dn[j] = (p - da[j]) % p;
      t->neg[a] = Fe{static_cast<std::uint16_t>(from_digits(dn, p))};
      for (unsigned b = 0; b < q; ++b) {
        auto db = to_digits(b, p, k);
        for (unsigned j = 0; j < k; ++j) db[j] = (db[j] + da[j]) % p;
        t->add[static_cast<std::size_t>(a) * q + b] = Fe{static_cast<std::uint16_t>(from_digits(db, p))};
      }
    }
  }
  return Field(std::move(t));
}

Fe Field::element(unsigned index) const {
  if (index >= t_->q) throw Error(Errc::BadParameters, "element index out of range");
  return Fe{static_cast<std::uint16_t>(index)};
}

Fe Field::inv(Fe a) const {
  if (a.value == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  unsigned l = t_->log[a.value];
  return t_->exp[l == 0 ? 0 : t_->q - 1 - l];
}

Fe Field::pow(Fe a, std::int64_t e) const {
  if (a.value == 0) {
    if (e < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
    return e == 0 ? one() : zero();
  }
  const std::int64_t order = t_->q - 1;
  std::int64_t r = (static_cast<std::int64_t>(t_->log[a.value]) * (e % order)) % order;
  if (r < 0) r += order;
  return t_->exp[static_cast<std::size_t>(r)];
}

Fe arith(const Field& f, Fe a, Fe b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return f.add(a, b);
    case ArithKind::mul: return f.mul(a, b);
    case ArithKind::inv: return f.inv(a);
    case ArithKind::pow: return f.pow(a, b.value);
  }
  return f.zero();
}

FieldTower FieldTower::build(unsigned q1, unsigned q2) {
  auto p1 = prime_power_decompose(q1);
  auto p2 = prime_power_decompose(q2);
  if (!p1 || !p2) throw Error(Errc::NotPrimePower, "tower sizes must be prime powers");
  if (p1->first != p2->first || p2->second % p1->second != 0 || q1 >= q2) {
    throw Error(Errc::NotASubfield,
                "GF(" + std::to_string(q1) + ") is not a proper subfield of GF(" + std::to_string(q2) + ")");
  }
  FieldTower t(Field::make(q2), q1, p2->second / p1->second);
  const Field& f = t.f2_;

  t.member_.assign(q2, 0);
  for (unsigned i = 0; i < q2; ++i) {
    Fe x{static_cast<std::uint16_t>(i)};
    if (f.pow(x, q1) == x) {
      t.member_[i] = 1;
      t.f1_elements_.push_back(x);
    }
  }

  t.basis_.resize(t.m_);
  for (unsigned i = 0; i < t.m_; ++i) t.basis_[i] = f.exp(i);

  // Enumerate all q1^m F1-combinations of the basis; each x in F2 is hit once.
  t.coords_.assign(static_cast<std::size_t>(q2) * t.m_, Fe{0});
  std::vector<std::uint8_t> seen(q2, 0);
  std::vector<unsigned> digit(t.m_, 0);
  for (unsigned combo = 0; combo < q2; ++combo) {
    unsigned c = combo;
    Fe x = f.zero();
    for (unsigned i = 0; i < t.m_; ++i) {
      digit[i] = c % q1;
      c /= q1;
      x = f.add(x, f.mul(t.f1_elements_[digit[i]], t.basis_[i]));
    }
    seen[x.value] += 1;
    for (unsigned i = 0; i < t.m_; ++i) t.coords_[static_cast<std::size_t>(x.value) * t.m_ + i] = t.f1_elements_[digit[i]];
  }
  for (auto s : seen) {
    if (s != 1) throw Error(Errc::NotASubfield, "subfield basis does not span F2");
  }
  return t;
}

Fe FieldTower::from_coordinates(std::span<const Fe> coords) const {
  if (coords.size() != m_) throw Error(Errc::BadParameters, "coordinate vector has wrong length");
  Fe x = f2_.zero();
  for (unsigned i = 0; i < m_; ++i) x = f2_.add(x, f2_.mul(coords[i], basis_[i]));
  return x;
}

nlohmann::json FieldTower::describe() const {
  return {{"q1", q1_}, {"q2", q2()}, {"m", m_}, {"poly", f2_.modulus()}};
}

}  // namespace mixmds
