#include "mixmds/mds.hpp"

#include <algorithm>
#include <string>

#include "mixmds/error.hpp"

namespace mixmds {
namespace {

using Poly = std::vector<Fe>;  // low degree first

Fe poly_eval(const Field& f, const Poly& p, Fe x) {
  Fe acc = f.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

// Divides by a monic divisor; returns (quotient, remainder_is_zero).
std::pair<Poly, bool> poly_divmod_monic(const Field& f, Poly num, const Poly& div) {
  const std::size_t dd = div.size() - 1;
  if (num.size() <= dd) {
    bool zero = std::all_of(num.begin(), num.end(), [](Fe c) { return c.value == 0; });
    return {Poly{}, zero};
  }
  Poly quot(num.size() - dd, f.zero());
  for (std::size_t i = num.size(); i-- > dd;) {
    Fe c = num[i];
    if (c.value == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = f.sub(num[i - dd + j], f.mul(c, div[j]));
  }
  bool zero = std::all_of(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(dd), [](Fe c) { return c.value == 0; });
  return {quot, zero};
}

void check_support(std::span<const std::size_t> support, std::size_t n, std::size_t k) {
  if (support.size() != k) {
    throw Error(Errc::BadSupportSize, "information support has " + std::to_string(support.size()) +
                                          " positions, expected " + std::to_string(k));
  }
  std::vector<std::uint8_t> seen(n, 0);
  for (auto i : support) {
    if (i >= n || seen[i]) throw Error(Errc::BadSupportSize, "information support index invalid or repeated");
    seen[i] = 1;
  }
}

// Depth-first enumeration of msg * M over per-slot alphabets, tracking
// the minimum weight among nonzero messages.
struct MinWeightSearch {
  const Field& f;
  const FeMatrix& m;
  const std::vector<std::span<const Fe>>& alphabets;
  std::vector<Word> partial;
  std::size_t best;

  MinWeightSearch(const Field& field, const FeMatrix& matrix, const std::vector<std::span<const Fe>>& alph)
      : f(field), m(matrix), alphabets(alph), partial(matrix.rows() + 1, Word(matrix.cols(), field.zero())),
        best(matrix.cols() + 1) {}

  void run(std::size_t depth, bool nonzero) {
    if (depth == m.rows()) {
      if (nonzero) best = std::min(best, hamming_weight(partial[depth]));
      return;
    }
    auto row = m.row(depth);
    for (Fe s : alphabets[depth]) {
      for (std::size_t j = 0; j < m.cols(); ++j) partial[depth + 1][j] = f.add(partial[depth][j], f.mul(s, row[j]));
      run(depth + 1, nonzero || s.value != 0);
    }
  }
};

std::size_t enumerate_min_weight(const Field& f, const FeMatrix& m, const std::vector<std::span<const Fe>>& alphabets) {
  MinWeightSearch search(f, m, alphabets);
  search.run(0, false);
  return search.best;
}

std::uint64_t saturating_product(const std::vector<std::span<const Fe>>& alphabets) {
  std::uint64_t total = 1;
  for (const auto& a : alphabets) {
    if (total > UINT64_MAX / a.size()) return UINT64_MAX;
    total *= a.size();
  }
  return total;
}

}  // namespace

std::size_t hamming_weight(std::span<const Fe> word) {
  return static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](Fe x) { return x.value != 0; }));
}

std::size_t hamming_distance(std::span<const Fe> a, std::span<const Fe> b) {
  if (a.size() != b.size()) throw Error(Errc::BadParameters, "distance between words of different length");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

RsCode::RsCode(TowerPtr tower, std::size_t n, std::size_t k) : tower_(std::move(tower)), n_(n), k_(k) {
  if (!tower_) throw Error(Errc::BadParameters, "null tower");
  const Field& f = tower_->field();
  if (n_ > f.size()) {
    throw Error(Errc::LengthExceedsField,
                "length " + std::to_string(n_) + " exceeds field size " + std::to_string(f.size()));
  }
  if (k_ < 1 || k_ > n_) throw Error(Errc::BadParameters, "RS dimension must satisfy 1 <= k <= n");

  points_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) points_[j] = f.element(static_cast<unsigned>(j));

  generator_ = FeMatrix(k_, n_);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) generator_.at(i, j) = f.pow(points_[j], static_cast<std::int64_t>(i));
  }
  parity_ = nullspace(f, generator_);
}

bool RsCode::contains(std::span<const Fe> word) const {
  if (word.size() != n_) return false;
  const Field& f = field();
  for (std::size_t i = 0; i < parity_.rows(); ++i) {
    Fe acc = f.zero();
    for (std::size_t j = 0; j < n_; ++j) acc = f.add(acc, f.mul(parity_.at(i, j), word[j]));
    if (acc.value != 0) return false;
  }
  return true;
}

Word RsCode::encode(std::span<const Fe> coefficients) const {
  if (coefficients.size() != k_) throw Error(Errc::BadParameters, "message length must equal k");
  return vec_mat(field(), coefficients, generator_);
}

FeMatrix RsCode::systematic_matrix(std::span<const std::size_t> info_support) const {
  check_support(info_support, n_, k_);
  FeMatrix sub(k_, k_);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) sub.at(i, j) = generator_.at(i, info_support[j]);
  }
  // Any k columns of a Vandermonde matrix over distinct points are independent.
  auto inv = inverse(field(), sub);
  if (!inv) throw Error(Errc::BadSupportSize, "information support is not an information set");
  FeMatrix m(k_, n_);
  for (std::size_t i = 0; i < k_; ++i) {
    auto row = vec_mat(field(), inv->row(i), generator_);
    std::copy(row.begin(), row.end(), m.row(i).begin());
  }
  return m;
}

Word RsCode::encode_systematic_at(std::span<const std::size_t> info_support, std::span<const Fe> msg) const {
  if (msg.size() != k_) throw Error(Errc::BadSupportSize, "message length must equal k");
  return vec_mat(field(), msg, systematic_matrix(info_support));
}

std::optional<Word> RsCode::decode_ee(std::span<const Fe> received, std::span<const std::size_t> erasures) const {
  if (received.size() != n_) throw Error(Errc::BadParameters, "received word has wrong length");
  const Field& f = field();
  std::vector<std::uint8_t> erased(n_, 0);
  for (auto i : erasures) {
    if (i >= n_) throw Error(Errc::BadParameters, "erasure index out of range");
    erased[i] = 1;
  }
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < n_; ++j) {
    if (!erased[j]) live.push_back(j);
  }
  if (live.size() < k_) return std::nullopt;
  const std::size_t e = (live.size() - k_) / 2;

  // Unknowns: Q_0..Q_{e+k-1}, then E_0..E_{e-1}; E is monic of degree e.
  const std::size_t unknowns = 2 * e + k_;
  FeMatrix a(live.size(), unknowns);
  std::vector<Fe> b(live.size());
  for (std::size_t r = 0; r < live.size(); ++r) {
    Fe x = points_[live[r]];
    Fe y = received[live[r]];
    Fe xp = f.one();
    for (std::size_t j = 0; j < e + k_; ++j) {
      a.at(r, j) = xp;
      if (j < e) a.at(r, e + k_ + j) = f.neg(f.mul(y, xp));
      xp = f.mul(xp, x);
    }
    b[r] = f.mul(y, f.pow(x, static_cast<std::int64_t>(e)));
  }
  auto sol = solve(f, a, b);
  if (!sol) return std::nullopt;

  Poly q(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(e + k_));
  Poly err(sol->begin() + static_cast<std::ptrdiff_t>(e + k_), sol->end());
  err.push_back(f.one());
  auto [msg_poly, exact] = poly_divmod_monic(f, q, err);
  if (!exact) return std::nullopt;
  msg_poly.resize(k_, f.zero());

  Word out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = poly_eval(f, msg_poly, points_[j]);
  std::size_t disagreements = 0;
  for (auto j : live) disagreements += out[j] != received[j];
  if (disagreements > e) return std::nullopt;
  return out;
}

MixedMdsCode::MixedMdsCode(RsCode parent, std::vector<std::size_t> info_support,
                           std::vector<std::size_t> f1_positions)
    : parent_(std::move(parent)), info_support_(std::move(info_support)), f1_positions_(std::move(f1_positions)) {
  std::sort(info_support_.begin(), info_support_.end());
  std::sort(f1_positions_.begin(), f1_positions_.end());
  check_support(info_support_, parent_.n(), parent_.k());
  if (std::adjacent_find(f1_positions_.begin(), f1_positions_.end()) != f1_positions_.end()) {
    throw Error(Errc::SupportMismatch, "repeated F1 position");
  }
  f1_mask_.assign(parent_.n(), 0);
  for (auto i : f1_positions_) {
    if (!std::binary_search(info_support_.begin(), info_support_.end(), i)) {
      throw Error(Errc::SupportMismatch, "F1 position " + std::to_string(i) + " is not an information position");
    }
    f1_mask_[i] = 1;
  }
  systematic_ = parent_.systematic_matrix(info_support_);
}

Rational MixedMdsCode::log_q2_size() const {
  const auto f = static_cast<Rational::int_type>(f1_positions_.size());
  return Rational(f) * tower().alpha() + Rational(static_cast<Rational::int_type>(k()) - f);
}

Rational MixedMdsCode::length_q2() const {
  const auto f = static_cast<Rational::int_type>(f1_positions_.size());
  return Rational(f) * tower().alpha() + Rational(static_cast<Rational::int_type>(n()) - f);
}

std::optional<std::uint64_t> MixedMdsCode::cardinality() const {
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < k(); ++j) {
    std::uint64_t a = is_f1_slot(j) ? tower().q1() : tower().q2();
    if (total > UINT64_MAX / a) return std::nullopt;
    total *= a;
  }
  return total;
}

Word MixedMdsCode::encode(std::span<const Fe> msg) const {
  if (msg.size() != k()) throw Error(Errc::BadSupportSize, "message length must equal k");
  for (std::size_t j = 0; j < k(); ++j) {
    if (is_f1_slot(j) && !tower().in_subfield(msg[j])) {
      throw Error(Errc::SupportMismatch, "F1 slot holds a value outside the subfield");
    }
  }
  return vec_mat(parent_.field(), msg, systematic_);
}

Word MixedMdsCode::extract(std::span<const Fe> codeword) const {
  if (codeword.size() != n()) throw Error(Errc::BadParameters, "codeword has wrong length");
  Word msg(k());
  for (std::size_t j = 0; j < k(); ++j) msg[j] = codeword[info_support_[j]];
  return msg;
}

bool MixedMdsCode::contains(std::span<const Fe> word) const {
  if (!parent_.contains(word)) return false;
  for (auto i : f1_positions_) {
    if (!tower().in_subfield(word[i])) return false;
  }
  return true;
}

std::optional<Word> MixedMdsCode::decode_ee(std::span<const Fe> received, std::span<const std::size_t> erasures) const {
  auto out = parent_.decode_ee(received, erasures);
  if (!out || !contains(*out)) return std::nullopt;
  return out;
}

nlohmann::json MixedMdsCode::spec() const {
  return {{"q1", tower().q1()},         {"q2", tower().q2()},
          {"n", n()},                   {"k", k()},
          {"info_support", info_support_}, {"f1_positions", f1_positions_}};
}

std::size_t min_distance_bruteforce(const RsCode& code, std::uint64_t limit) {
  std::vector<std::span<const Fe>> alphabets;
  std::vector<Fe> all(code.field().size());
  for (unsigned i = 0; i < all.size(); ++i) all[i] = Fe{static_cast<std::uint16_t>(i)};
  for (std::size_t j = 0; j < code.k(); ++j) alphabets.emplace_back(all);
  if (saturating_product(alphabets) > limit) throw Error(Errc::TooLarge, "code too large to enumerate");
  return enumerate_min_weight(code.field(), code.generator(), alphabets);
}

std::size_t min_distance_bruteforce(const MixedMdsCode& code, std::uint64_t limit) {
  std::vector<Fe> all(code.tower().q2());
  for (unsigned i = 0; i < all.size(); ++i) all[i] = Fe{static_cast<std::uint16_t>(i)};
  std::vector<std::span<const Fe>> alphabets;
  for (std::size_t j = 0; j < code.k(); ++j) {
    if (code.is_f1_slot(j)) alphabets.emplace_back(code.tower().subfield_elements());
    else alphabets.emplace_back(all);
  }
  if (saturating_product(alphabets) > limit) throw Error(Errc::TooLarge, "code too large to enumerate");
  return enumerate_min_weight(code.parent().field(), code.systematic_matrix(), alphabets);
}

}  // namespace mixmds
