#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixmds/galois.hpp"
#include "mixmds/linalg.hpp"
#include "mixmds/rational.hpp"

namespace mixmds {

using Word = std::vector<Fe>;
using TowerPtr = std::shared_ptr<const FieldTower>;

inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

/// Reed-Solomon [n, k, n-k+1] code over F2, evaluating polynomials of
/// degree < k at the first n field elements in index order.
class RsCode {
 public:
  /// Throws LengthExceedsField when n > q2, BadParameters unless 1 <= k <= n.
  RsCode(TowerPtr tower, std::size_t n, std::size_t k);

  const FieldTower& tower() const noexcept { return *tower_; }
  const TowerPtr& tower_ptr() const noexcept { return tower_; }
  const Field& field() const noexcept { return tower_->field(); }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t d() const noexcept { return n_ - k_ + 1; }
  std::span<const Fe> eval_points() const noexcept { return points_; }
  /// Row i holds x_j^i.
  const FeMatrix& generator() const noexcept { return generator_; }
  const FeMatrix& parity_check() const noexcept { return parity_; }

  bool contains(std::span<const Fe> word) const;

  /// Evaluates the message polynomial with the given coefficients.
  Word encode(std::span<const Fe> coefficients) const;

  /// Codeword whose restriction to `info_support` (any k distinct
  /// coordinates, any order) equals `msg`. Throws BadSupportSize.
  Word encode_systematic_at(std::span<const std::size_t> info_support, std::span<const Fe> msg) const;

  /// k x n matrix M with codeword = msg * M for the given support.
  FeMatrix systematic_matrix(std::span<const std::size_t> info_support) const;

  /// Berlekamp-Welch on the unerased coordinates. Returns the unique codeword
  /// within the bounded-distance radius 2t + rho <= d - 1, or nullopt.
  std::optional<Word> decode_ee(std::span<const Fe> received, std::span<const std::size_t> erasures) const;

 private:
  TowerPtr tower_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Fe> points_;
  FeMatrix generator_;
  FeMatrix parity_;
};

inline RsCode make_rs(TowerPtr tower, std::size_t n, std::size_t k) { return RsCode(std::move(tower), n, k); }

/// Subcode of an RS parent obtained by systematically encoding information
/// words whose symbols at `f1_positions` are restricted to the subfield.
class MixedMdsCode {
 public:
  /// Throws BadSupportSize when |info_support| != k or indices repeat,
  /// SupportMismatch when f1_positions is not inside info_support.
  MixedMdsCode(RsCode parent, std::vector<std::size_t> info_support, std::vector<std::size_t> f1_positions);

  const RsCode& parent() const noexcept { return parent_; }
  const FieldTower& tower() const noexcept { return parent_.tower(); }
  std::size_t n() const noexcept { return parent_.n(); }
  std::size_t k() const noexcept { return parent_.k(); }
  std::size_t d() const noexcept { return parent_.d(); }

  /// Sorted ascending.
  const std::vector<std::size_t>& info_support() const noexcept { return info_support_; }
  const std::vector<std::size_t>& f1_positions() const noexcept { return f1_positions_; }
  bool is_f1_position(std::size_t i) const noexcept { return f1_mask_[i] != 0; }
  /// True when message slot j (position info_support()[j]) is an F1 slot.
  bool is_f1_slot(std::size_t j) const noexcept { return f1_mask_[info_support_[j]] != 0; }

  /// log_q2 |code| = f*alpha + (k - f).
  Rational log_q2_size() const;
  /// Length in q2-ary symbols: f*alpha + (n - f).
  Rational length_q2() const;
  Rational rate_q2() const { return log_q2_size() / length_q2(); }
  /// |code| when it fits in 64 bits.
  std::optional<std::uint64_t> cardinality() const;

  /// Throws SupportMismatch if an F1 slot holds a non-subfield value.
  Word encode(std::span<const Fe> msg) const;
  /// Information word (inverse of encode) of a codeword.
  Word extract(std::span<const Fe> codeword) const;
  bool contains(std::span<const Fe> word) const;
  /// Parent decoder followed by a subcode membership check.
  std::optional<Word> decode_ee(std::span<const Fe> received, std::span<const std::size_t> erasures) const;

  const FeMatrix& systematic_matrix() const noexcept { return systematic_; }

  /// {"q1","q2","n","k","info_support","f1_positions"}.
  nlohmann::json spec() const;

 private:
  RsCode parent_;
  std::vector<std::size_t> info_support_;
  std::vector<std::size_t> f1_positions_;
  std::vector<std::uint8_t> f1_mask_;
  FeMatrix systematic_;
};

inline MixedMdsCode make_mixed(RsCode parent, std::vector<std::size_t> info_support,
                               std::vector<std::size_t> f1_positions) {
  return MixedMdsCode(std::move(parent), std::move(info_support), std::move(f1_positions));
}

/// Exact minimum nonzero Hamming weight by enumerating every codeword.
/// Throws TooLarge when the code has more than `limit` codewords.
std::size_t min_distance_bruteforce(const RsCode& code, std::uint64_t limit = kEnumerationLimit);
std::size_t min_distance_bruteforce(const MixedMdsCode& code, std::uint64_t limit = kEnumerationLimit);

std::size_t hamming_weight(std::span<const Fe> word);
std::size_t hamming_distance(std::span<const Fe> a, std::span<const Fe> b);

}  // namespace mixmds
