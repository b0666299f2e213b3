#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixmds/assignment.hpp"
#include "mixmds/graph.hpp"
#include "mixmds/mds.hpp"
#include "mixmds/rational.hpp"

namespace mixmds {

struct ExpanderParams {
  Rational r;  // left constituent rate
  Rational R;  // right constituent rate; also the right-side cap pbar
  Rational p;  // fraction of F1 coordinates per left block
  std::uint64_t seed = 0;
};

struct RateReport {
  Rational rate_c;            // rate of C in q2-ary symbols
  Rational rate_c_bound;      // r' + (p(a-1)+R)/(p(a-1)+1) - 1
  Rational outer_rate;        // rate of the outer code (C)_Phi
  Rational outer_rate_bound;  // 1 + (R-1)/(p(a-1)+r)
  Rational left_rate_q2;      // r'
};

/// One information word per left vertex; slot j of block u is an F1 slot
/// exactly when left_code(u).is_f1_slot(j).
using OuterWord = std::vector<Word>;

inline constexpr std::size_t kBasisVariableLimit = 4096;

/// Mixed-alphabet expander code C on the edges of a bipartite graph: every
/// E(u) block lies in C'_u and every E(v) block in C''_v, with F1
/// coordinates given by the support of a good assignment y*. C is only
/// F1-linear, so its basis is computed over F1 after coordinate expansion.
class ExpanderCode {
 public:
  /// Balances a seeded random left-exact labeling (pbar = R) and builds the
  /// code. Throws propagated assignment/code errors and TooLarge.
  static ExpanderCode assemble(GraphPtr graph, TowerPtr tower, const ExpanderParams& params,
                               std::size_t variable_limit = kBasisVariableLimit);

  /// Builds the code over an existing assignment, which must be good.
  ExpanderCode(GraphPtr graph, TowerPtr tower, Rational r, Rational R, EdgeLabeling assignment,
               std::uint64_t seed = 0, std::size_t variable_limit = kBasisVariableLimit);

  const BipartiteGraph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const FieldTower& tower() const noexcept { return *tower_; }
  const TowerPtr& tower_ptr() const noexcept { return tower_; }
  const EdgeLabeling& assignment() const noexcept { return assignment_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Rational r() const noexcept { return r_; }
  Rational R() const noexcept { return R_; }
  Rational p() const noexcept { return assignment_.p(); }

  std::size_t length() const noexcept { return graph_->num_edges(); }
  bool is_f1_edge(std::size_t edge) const noexcept { return assignment_.bit(edge) != 0; }

  const MixedMdsCode& left_code(std::size_t u) const { return left_codes_.at(u); }
  const MixedMdsCode& right_code(std::size_t v) const { return right_codes_.at(v); }

  /// F1-basis of C; dimension() words of length n*Delta.
  const std::vector<Word>& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  /// Sum of coeffs[i] * basis[i]; coefficients must be subfield elements.
  Word combine(std::span<const Fe> coeffs) const;

  Word block(std::span<const Fe> word, std::span<const std::size_t> edges) const;
  bool satisfies_left(std::size_t u, std::span<const Fe> word) const;
  bool satisfies_right(std::size_t v, std::span<const Fe> word) const;
  bool is_codeword(std::span<const Fe> word) const;

  RateReport rate() const;
  /// log_q2 |Phi_u| = p*Delta*alpha + (r - p)*Delta.
  Rational phi_u_log_q2() const;
  /// log_q2 phi with phi = q2^(r*Delta).
  Rational phi_log_q2() const;

  /// Throws NotACodeword if c is not in C.
  OuterWord psi(std::span<const Fe> c) const;
  /// Re-encodes each block and checks the right constraints; throws
  /// NotACodeword for words outside (C)_Phi or slots outside their alphabet.
  Word psi_inv(const OuterWord& w) const;

  /// Self-contained instance manifest (tower, graph, assignment, code specs,
  /// basis as F1 coordinates).
  nlohmann::json manifest() const;
  /// Rebuilds from a manifest and checks the stored basis; throws ParseError.
  static ExpanderCode from_manifest(const nlohmann::json& j);

 private:
  void build_basis(std::size_t variable_limit);

  GraphPtr graph_;
  TowerPtr tower_;
  Rational r_;
  Rational R_;
  EdgeLabeling assignment_;
  std::uint64_t seed_;
  std::vector<MixedMdsCode> left_codes_;
  std::vector<MixedMdsCode> right_codes_;
  std::vector<Word> basis_;
};

/// Calls `visit` with every codeword of C (all q1^dim F1-combinations).
/// Throws TooLarge when q1^dim exceeds `limit`.
void for_each_codeword(const ExpanderCode& code, const std::function<void(const Word&)>& visit,
                       std::uint64_t limit = kEnumerationLimit);

struct OuterDistance {
  /// nullopt for the zero code.
  std::optional<std::size_t> distance;
  std::optional<Rational> relative;
  std::uint64_t codewords = 0;
};

/// Minimum number of nonzero left blocks over nonzero codewords.
OuterDistance min_outer_distance_bruteforce(const ExpanderCode& code, std::uint64_t limit = kEnumerationLimit);

}  // namespace mixmds
