#include "mixmds/decode.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mixmds/error.hpp"

namespace mixmds {
namespace {

// Decodes one block in place; returns true if the block changed.
bool decode_block(const MixedMdsCode& code, std::span<const std::size_t> edges, ReceivedWord& state) {
  Word local(edges.size());
  std::vector<std::size_t> erasures;
  for (std::size_t s = 0; s < edges.size(); ++s) {
    local[s] = state.symbols[edges[s]];
    if (state.erased[edges[s]]) erasures.push_back(s);
  }
  if (erasures.empty() && code.contains(local)) return false;
  auto decoded = code.decode_ee(local, erasures);
  if (!decoded) return false;
  bool changed = !erasures.empty();
  for (std::size_t s = 0; s < edges.size(); ++s) {
    changed = changed || (*decoded)[s] != local[s];
    state.symbols[edges[s]] = (*decoded)[s];
    state.erased[edges[s]] = 0;
  }
  return changed;
}

}  // namespace

std::string_view outcome_name(DecodeOutcome outcome) {
  switch (outcome) {
    case DecodeOutcome::success: return "success";
    case DecodeOutcome::failure: return "failure";
    case DecodeOutcome::miscorrection: return "miscorrection";
  }
  return "unknown";
}

std::size_t default_max_rounds(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n + 1) ++bits;
  return 2 * bits + 2;
}

DecodeResult iter_decode(const ExpanderCode& code, const ReceivedWord& rw, std::size_t max_rounds,
                         const Word* truth) {
  const auto& g = code.graph();
  if (rw.symbols.size() != code.length() || rw.erased.size() != code.length()) {
    throw Error(Errc::BadParameters, "received word has wrong length");
  }
  DecodeResult result;
  result.state = rw;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    std::size_t changed = 0;
    for (std::size_t v = 0; v < g.n(); ++v) changed += decode_block(code.right_code(v), g.right_edges(v), result.state);
    for (std::size_t u = 0; u < g.n(); ++u) changed += decode_block(code.left_code(u), g.left_edges(u), result.state);
    result.report.changed_per_round.push_back(changed);
    result.report.rounds_used = round;
    if (changed == 0) {
      bool clean = std::none_of(result.state.erased.begin(), result.state.erased.end(), [](auto x) { return x != 0; });
      if (clean && code.is_codeword(result.state.symbols)) {
        result.codeword = result.state.symbols;
        result.report.outcome =
            truth && *truth != result.state.symbols ? DecodeOutcome::miscorrection : DecodeOutcome::success;
      }
      // A quiet round is a fixed point: later rounds cannot change anything.
      break;
    }
  }
  return result;
}

ReceivedWord channel_apply(const ExpanderCode& code, std::span<const Fe> c, std::size_t t, std::size_t rho,
                           std::uint64_t seed) {
  const std::size_t len = code.length();
  if (c.size() != len) throw Error(Errc::BadParameters, "codeword has wrong length");
  if (t + rho > len) throw Error(Errc::TooManyPositions, "t + rho exceeds the code length");
  const FieldTower& tower = code.tower();
  Rng rng(seed);
  std::vector<std::size_t> order(len);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  ReceivedWord rw{Word(c.begin(), c.end()), std::vector<std::uint8_t>(len, 0)};
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t e = order[i];
    const Fe current = rw.symbols[e];
    if (code.is_f1_edge(e)) {
      auto f1 = tower.subfield_elements();
      std::vector<Fe> others;
      for (Fe x : f1) {
        if (x != current) others.push_back(x);
      }
      rw.symbols[e] = others[rng.below(others.size())];
    } else {
      auto shift = static_cast<unsigned>(rng.below(tower.q2() - 1)) + 1;
      rw.symbols[e] = Fe{static_cast<std::uint16_t>((current.value + shift) % tower.q2())};
    }
  }
  for (std::size_t i = t; i < t + rho; ++i) {
    rw.symbols[order[i]] = Fe{0};
    rw.erased[order[i]] = 1;
  }
  return rw;
}

Word random_codeword(const ExpanderCode& code, Rng& rng) {
  auto f1 = code.tower().subfield_elements();
  std::vector<Fe> coeffs(code.dimension());
  for (auto& c : coeffs) c = f1[rng.below(f1.size())];
  return code.combine(coeffs);
}

std::vector<McCell> monte_carlo_curve(const ExpanderCode& code, std::span<const std::size_t> t_values,
                                      std::span<const std::size_t> rho_values, std::size_t trials,
                                      std::uint64_t seed, std::size_t max_rounds) {
  if (trials == 0) throw Error(Errc::BadParameters, "monte carlo needs at least one trial");
  std::vector<McCell> cells;
  for (auto t : t_values) {
    for (auto rho : rho_values) {
      McCell cell{t, rho, trials, 0, 0.0};
      for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng word_rng(derive_seed(seed, {t, rho, trial, 0}));
        Word c = random_codeword(code, word_rng);
        auto rw = channel_apply(code, c, t, rho, derive_seed(seed, {t, rho, trial, 1}));
        auto res = iter_decode(code, rw, max_rounds, &c);
        if (res.report.outcome == DecodeOutcome::success) ++cell.successes;
      }
      cell.rate = static_cast<double>(cell.successes) / static_cast<double>(trials);
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace mixmds
