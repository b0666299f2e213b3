#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixmds/expander.hpp"
#include "mixmds/rng.hpp"

namespace mixmds {

/// n*Delta symbols with erasure marks; the F1/F2 tag of each coordinate is
/// the instance's assignment bit.
struct ReceivedWord {
  Word symbols;
  std::vector<std::uint8_t> erased;
};

enum class DecodeOutcome { success, failure, miscorrection };

std::string_view outcome_name(DecodeOutcome outcome);

struct DecodeReport {
  DecodeOutcome outcome = DecodeOutcome::failure;
  std::size_t rounds_used = 0;
  /// Constituent blocks modified in each round (right and left halves together).
  std::vector<std::size_t> changed_per_round;
};

struct DecodeResult {
  /// Set on success (or miscorrection).
  std::optional<Word> codeword;
  /// Final decoder state, including unresolved erasures.
  ReceivedWord state;
  DecodeReport report;
};

/// 2 * ceil(log2(n + 1)) + 2.
std::size_t default_max_rounds(std::size_t n);

/// Alternates bounded-distance errors-and-erasures decoding of every right
/// block, then every left block, until a round changes nothing. Success
/// requires the final word to satisfy all 2n constraints with no erasures.
/// When `truth` is given, a wrong codeword is reported as miscorrection.
DecodeResult iter_decode(const ExpanderCode& code, const ReceivedWord& rw, std::size_t max_rounds,
                         const Word* truth = nullptr);

inline DecodeResult iter_decode(const ExpanderCode& code, const ReceivedWord& rw) {
  return iter_decode(code, rw, default_max_rounds(code.graph().n()));
}

/// t distinct coordinates get a uniformly chosen wrong value from their own
/// alphabet, then rho further coordinates are erased. Throws TooManyPositions.
ReceivedWord channel_apply(const ExpanderCode& code, std::span<const Fe> c, std::size_t t, std::size_t rho,
                           std::uint64_t seed);

/// Uniform codeword: random F1 coefficients over the basis.
Word random_codeword(const ExpanderCode& code, Rng& rng);

struct McCell {
  std::size_t t;
  std::size_t rho;
  std::size_t trials;
  std::size_t successes;
  double rate;
};

/// One cell per (t, rho) in row-major order (t outer). Every trial draws its
/// codeword and channel from seeds derived from (seed, t, rho, trial).
std::vector<McCell> monte_carlo_curve(const ExpanderCode& code, std::span<const std::size_t> t_values,
                                      std::span<const std::size_t> rho_values, std::size_t trials,
                                      std::uint64_t seed, std::size_t max_rounds);

}  // namespace mixmds
