#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "mixmds/decode.hpp"
#include "mixmds/error.hpp"
#include "mixmds/expander.hpp"
#include "mixmds/rng.hpp"

using namespace mixmds;

namespace {

GraphPtr share(BipartiteGraph g) { return std::make_shared<const BipartiteGraph>(std::move(g)); }
TowerPtr tower(unsigned q1, unsigned q2) { return std::make_shared<const FieldTower>(build_tower(q1, q2)); }

ExpanderCode make(GraphPtr g, unsigned q1, unsigned q2, Rational r, Rational R, Rational p, std::uint64_t seed = 1) {
  return ExpanderCode::assemble(std::move(g), tower(q1, q2), ExpanderParams{r, R, p, seed});
}

std::vector<Word> all_codewords(const ExpanderCode& code) {
  std::vector<Word> out;
  for_each_codeword(code, [&](const Word& c) { out.push_back(c); });
  return out;
}

// Unique codeword nearest to rw on the unerased coordinates, if any.
std::optional<Word> nearest(const std::vector<Word>& words, const ReceivedWord& rw) {
  std::size_t best = static_cast<std::size_t>(-1), ties = 0;
  const Word* arg = nullptr;
  for (const auto& w : words) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += !rw.erased[i] && w[i] != rw.symbols[i];
    if (d < best) best = d, ties = 1, arg = &w;
    else if (d == best) ++ties;
  }
  if (ties != 1) return std::nullopt;
  return *arg;
}

ReceivedWord clean(const Word& c) { return {c, std::vector<std::uint8_t>(c.size(), 0)}; }

}  // namespace

TEST_CASE("codewords are fixed points") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = share(build_graph(GraphKind::random_regular, 4, 4, seed));
    auto code = make(g, 4, 16, Rational(3, 4), Rational(3, 4), Rational(1, 4), seed);
    Rng rng(seed);
    for (int i = 0; i < 20; ++i) {
      Word c = random_codeword(code, rng);
      auto res = iter_decode(code, clean(c));
      CHECK(res.report.outcome == DecodeOutcome::success);
      CHECK(res.report.rounds_used == 1);
      CHECK(res.report.changed_per_round == std::vector<std::size_t>{0});
      CHECK(res.codeword == c);
    }
  }
  CHECK(default_max_rounds(1) == 4);
  CHECK(default_max_rounds(3) == 6);
  CHECK(default_max_rounds(4) == 8);
}

TEST_CASE("K2,2 repetition: a single substitution is detected, not corrected") {
  // [2,1,2] constituents have bounded-distance radius 0.
  auto g = share(build_graph(GraphKind::complete, 2, 2, 0));
  auto code = make(g, 2, 4, Rational(1, 2), Rational(1, 2), Rational(0));
  const Field& f = code.tower().field();
  Word c(4, f.one());
  auto rw = clean(c);
  rw.symbols[2] = f.zero();
  auto res = iter_decode(code, rw, default_max_rounds(2), &c);
  CHECK(res.report.outcome == DecodeOutcome::failure);
  CHECK_FALSE(res.codeword.has_value());
  CHECK(res.state.symbols == rw.symbols);
  // A single erasure is within the radius of both blocks it touches.
  auto er = clean(c);
  er.erased[2] = 1;
  er.symbols[2] = f.zero();
  auto fixed = iter_decode(code, er, default_max_rounds(2), &c);
  CHECK(fixed.report.outcome == DecodeOutcome::success);
  CHECK(fixed.codeword == c);
}

TEST_CASE("K3,3 repetition: every single error and double erasure matches the oracle") {
  auto g = share(build_graph(GraphKind::complete, 3, 3, 0));
  for (auto [q1, q2, pn] : {std::tuple{2u, 4u, 0}, {2u, 4u, 1}, {4u, 16u, 1}}) {
    auto code = make(g, q1, q2, Rational(1, 3), Rational(1, 3), Rational(pn, 3));
    auto words = all_codewords(code);
    const auto& t = code.tower();
    Rng rng(q2 + pn);
    for (const auto& c : words) {
      for (std::size_t e = 0; e < code.length(); ++e) {
        auto rw = clean(c);
        if (code.is_f1_edge(e)) {
          auto f1 = t.subfield_elements();
          do rw.symbols[e] = f1[rng.below(f1.size())]; while (rw.symbols[e] == c[e]);
        } else {
          rw.symbols[e] = t.field().add(c[e], Fe{static_cast<std::uint16_t>(1 + rng.below(q2 - 1))});
        }
        auto oracle = nearest(words, rw);
        REQUIRE(oracle == c);
        auto res = iter_decode(code, rw, default_max_rounds(3), &c);
        CHECK(res.report.outcome == DecodeOutcome::success);
        CHECK(res.codeword == oracle);
      }
      for (std::size_t a = 0; a < code.length(); ++a) {
        for (std::size_t b = a + 1; b < code.length(); ++b) {
          auto rw = clean(c);
          rw.erased[a] = rw.erased[b] = 1;
          rw.symbols[a] = rw.symbols[b] = Fe{0};
          auto oracle = nearest(words, rw);
          REQUIRE(oracle == c);
          auto res = iter_decode(code, rw, default_max_rounds(3), &c);
          CHECK(res.codeword == c);
        }
      }
    }
  }
}

TEST_CASE("success always returns the unique nearest codeword when one exists") {
  auto g = share(build_graph(GraphKind::complete, 3, 3, 0));
  auto code = make(g, 2, 4, Rational(2, 3), Rational(1, 3), Rational(1, 3));
  auto words = all_codewords(code);
  std::size_t d_min = code.length();
  for (const auto& w : words) {
    if (hamming_weight(w) > 0) d_min = std::min(d_min, hamming_weight(w));
  }
  REQUIRE(d_min >= 3);
  Rng rng(5);
  std::size_t successes = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Word& c = words[rng.below(words.size())];
    std::size_t rho = rng.below(d_min);
    std::size_t t = rng.below((d_min - 1 - rho) / 2 + 1);
    auto rw = channel_apply(code, c, t, rho, rng.next());
    auto oracle = nearest(words, rw);
    REQUIRE(oracle == c);
    auto res = iter_decode(code, rw, default_max_rounds(3), &c);
    CHECK(res.report.outcome != DecodeOutcome::miscorrection);
    if (res.codeword) {
      CHECK(*res.codeword == *oracle);
      ++successes;
    }
  }
  CHECK(successes > 0);
}

TEST_CASE("decoder output respects the F1 coordinates") {
  auto g = share(build_graph(GraphKind::random_regular, 5, 4, 3));
  auto code = make(g, 4, 16, Rational(3, 4), Rational(3, 4), Rational(1, 2), 3);
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    Word c = random_codeword(code, rng);
    auto rw = channel_apply(code, c, rng.below(4), rng.below(4), rng.next());
    auto res = iter_decode(code, rw, default_max_rounds(5), &c);
    for (std::size_t e = 0; e < code.length(); ++e) {
      if (code.is_f1_edge(e) && !res.state.erased[e]) CHECK(code.tower().in_subfield(res.state.symbols[e]));
    }
    if (res.codeword) {
      CHECK(code.is_codeword(*res.codeword));
      CHECK(res.report.changed_per_round.back() == 0);
    }
  }
}

TEST_CASE("channel_apply") {
  auto g = share(build_graph(GraphKind::random_regular, 4, 4, 1));
  auto code = make(g, 4, 16, Rational(3, 4), Rational(3, 4), Rational(1, 4));
  Rng rng(2);
  Word c = random_codeword(code, rng);
  auto same = channel_apply(code, c, 0, 0, 9);
  CHECK(same.symbols == c);
  for (std::size_t t = 0; t <= 6; ++t) {
    for (std::size_t rho = 0; rho <= 4; ++rho) {
      auto rw = channel_apply(code, c, t, rho, 100 + t);
      std::size_t diff = 0, erased = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (rw.erased[i]) ++erased;
        else diff += rw.symbols[i] != c[i];
        if (code.is_f1_edge(i) && !rw.erased[i]) CHECK(code.tower().in_subfield(rw.symbols[i]));
      }
      CHECK(diff == t);
      CHECK(erased == rho);
      auto again = channel_apply(code, c, t, rho, 100 + t);
      CHECK(again.symbols == rw.symbols);
      CHECK(again.erased == rw.erased);
    }
  }
  try {
    channel_apply(code, c, 10, 7, 0);
    FAIL("expected TooManyPositions");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooManyPositions);
  }
}

TEST_CASE("Monte-Carlo curve") {
  auto g = share(build_graph(GraphKind::complete, 4, 4, 0));
  auto code = make(g, 4, 16, Rational(1, 2), Rational(1, 2), Rational(1, 4));
  std::vector<std::size_t> ts{0, 1, 2, 4, 8}, rhos{0, 2};
  auto cells = monte_carlo_curve(code, ts, rhos, 60, 17, default_max_rounds(4));
  REQUIRE(cells.size() == 10);
  CHECK(cells[0].t == 0);
  CHECK(cells[0].rho == 0);
  CHECK(cells[0].rate == 1.0);
  CHECK(cells[0].successes == 60);
  auto again = monte_carlo_curve(code, ts, rhos, 60, 17, default_max_rounds(4));
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(again[i].successes == cells[i].successes);
  // Non-increasing in t for fixed rho, within 3 sigma.
  for (std::size_t ri = 0; ri < rhos.size(); ++ri) {
    for (std::size_t ti = 1; ti < ts.size(); ++ti) {
      const auto& prev = cells[(ti - 1) * rhos.size() + ri];
      const auto& cur = cells[ti * rhos.size() + ri];
      double sigma = std::sqrt(std::max(prev.rate * (1 - prev.rate), 1e-9) / 60.0 +
                               std::max(cur.rate * (1 - cur.rate), 1e-9) / 60.0);
      CHECK(cur.rate <= prev.rate + 3 * sigma + 1e-12);
    }
  }
  CHECK_THROWS_AS(monte_carlo_curve(code, ts, rhos, 0, 1, 4), Error);
  CHECK(outcome_name(DecodeOutcome::miscorrection) == "miscorrection");
}
