// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixmds/assignment.hpp"
#include "mixmds/decode.hpp"
#include "mixmds/error.hpp"
#include "mixmds/expander.hpp"
#include "mixmds/graph.hpp"
#include "mixmds/mds.hpp"
#include "mixmds/report.hpp"
#include "mixmds/rng.hpp"
#include "mixmds/tradeoff.hpp"

using namespace mixmds;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << o.detail.str()
            << ")" << std::endl;
}

GraphPtr share(BipartiteGraph g) { return std::make_shared<const BipartiteGraph>(std::move(g)); }
TowerPtr tower(unsigned q1, unsigned q2) { return std::make_shared<const FieldTower>(build_tower(q1, q2)); }

ReceivedWord clean(const Word& c) { return {c, std::vector<std::uint8_t>(c.size(), 0)}; }

// Unique codeword closest to rw on its unerased coordinates.
std::optional<Word> nearest(const std::vector<Word>& words, const ReceivedWord& rw) {
  std::size_t best = static_cast<std::size_t>(-1), ties = 0;
  const Word* arg = nullptr;
  for (const auto& w : words) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < w.size() && d <= best; ++i) d += !rw.erased[i] && w[i] != rw.symbols[i];
    if (d < best) best = d, ties = 1, arg = &w;
    else if (d == best) ++ties;
  }
  if (ties != 1) return std::nullopt;
  return *arg;
}

// ---------------------------------------------------------------------------

void criteria_1_and_2() {
  const std::vector<std::size_t> sizes{4, 7, 12, 20, 33, 47, 64};
  std::size_t instances = 0, good = 0, exact = 0, total_reversals = 0;
  std::size_t left_violations = 0, other_violations = 0;
  bool threw = false;
  std::string error;
  auto start = std::chrono::steady_clock::now();
  try {
    for (std::size_t delta = 2; delta <= 8; ++delta)
      for (std::size_t cap = 0; cap < delta; ++cap)
        for (std::size_t w = 0; w <= cap; ++w)
          for (std::size_t n : sizes)
            for (std::uint64_t rep = 0; rep < 2; ++rep) {
              std::uint64_t seed = derive_seed(2024, {delta, cap, w, n, rep});
              auto g = share(build_graph(GraphKind::random_regular, n, delta, seed));
              Rational p(static_cast<std::int64_t>(w), static_cast<std::int64_t>(delta));
              Rational pbar(static_cast<std::int64_t>(cap), static_cast<std::int64_t>(delta));
              auto res = balance(init_left_exact(g, p, pbar, seed + 1), BalanceOptions{true});
              ++instances;
              good += verify_good(res.labeling).good;
              exact += res.trace.reversals == res.trace.initial_excess;
              total_reversals += res.trace.reversals;
              left_violations += res.trace.left_weight_violations;
              other_violations += res.trace.excess_step_violations + res.trace.intermediate_weight_violations +
                                  res.trace.sink_overflow_violations;
            }
  } catch (const std::exception& e) {
    threw = true;
    error = e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  report(1, "good-assignment soundness", [&](Outcome& o) {
    o.require(!threw, "exception " + error);
    o.require(instances >= 1000, "fewer than 1000 instances");
    o.require(good == instances, "verify_good failed");
    o.require(exact == instances, "reversals != initial excess");
    o.require(seconds < 10.0, "runtime over 10 s");
    o.detail << instances << " instances, " << good << " good, " << exact << " exact, " << total_reversals
             << " reversals, " << seconds << " s";
  });
  report(2, "left-weight conservation", [&](Outcome& o) {
    o.require(!threw && instances >= 1000, "sweep incomplete");
    o.require(left_violations == 0, "left weight changed");
    o.require(other_violations == 0, "other audit counter nonzero");
    o.detail << left_violations << " left-weight violations, " << other_violations << " other audit violations";
  });
}

void criterion_3() {
  report(3, "MDS oracle over GF(16)", [](Outcome& o) {
    auto t = tower(4, 16);
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 6; ++n)
      for (std::size_t k = 1; k <= n; ++k) {
        std::size_t d = min_distance_bruteforce(make_rs(t, n, k), std::uint64_t{1} << 24);
        o.require(d == n - k + 1, "[" + std::to_string(n) + "," + std::to_string(k) + "] distance " + std::to_string(d));
        ++checked;
      }
    o.detail << checked << " codes";
  });
}

void criterion_4() {
  report(4, "mixed-subcode distance preservation", [](Outcome& o) {
    auto t = tower(4, 16);
    std::size_t checked = 0;
    for (std::size_t k : {2u, 3u}) {
      RsCode parent = make_rs(t, 4, k);
      std::vector<std::size_t> info(k);
      for (std::size_t i = 0; i < k; ++i) info[i] = i;
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<std::size_t> f1;
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1u) f1.push_back(i);
        MixedMdsCode sub = make_mixed(parent, info, f1);
        std::size_t d = min_distance_bruteforce(sub);
        // Count every length-4 word that is a parent codeword with subfield values on f1.
        std::uint64_t count = 0;
        Word w(4);
        for (unsigned a = 0; a < 16 * 16 * 16 * 16; ++a) {
          for (std::size_t i = 0; i < 4; ++i) w[i] = Fe{static_cast<std::uint16_t>(a >> (4 * i) & 15u)};
          bool ok = parent.contains(w);
          for (std::size_t i : f1) ok = ok && t->in_subfield(w[i]);
          count += ok;
        }
        std::uint64_t expected = 1;
        for (std::size_t i = 0; i < f1.size(); ++i) expected *= 4;
        for (std::size_t i = f1.size(); i < k; ++i) expected *= 16;
        std::string tag = "[4," + std::to_string(k) + "] f1 mask " + std::to_string(mask);
        o.require(d == parent.d(), tag + " distance");
        o.require(count == expected, tag + " enumerated size");
        o.require(sub.cardinality() == expected, tag + " cardinality()");
        ++checked;
      }
    }
    o.detail << checked << " subcodes";
  });
}

void criterion_5() {
  report(5, "rate bound as exact rationals", [](Outcome& o) {
    struct Case {
      GraphKind kind;
      std::size_t n, delta;
      unsigned q1;
      std::int64_t rk, Rk, pk;  // numerators over delta
    };
    std::vector<Case> cases;
    for (unsigned q1 : {2u, 4u}) {
      cases.push_back({GraphKind::complete, 2, 2, q1, 1, 1, 0});
      cases.push_back({GraphKind::complete, 2, 2, q1, 1, 1, 1});
      cases.push_back({GraphKind::complete, 3, 3, q1, 2, 2, 1});
      cases.push_back({GraphKind::complete, 3, 3, q1, 2, 1, 1});
      cases.push_back({GraphKind::complete, 3, 3, q1, 1, 2, 0});
      cases.push_back({GraphKind::complete, 4, 4, q1, 3, 3, 2});
      cases.push_back({GraphKind::complete, 4, 4, q1, 2, 3, 1});
      cases.push_back({GraphKind::cycle, 5, 2, q1, 1, 1, 1});
      cases.push_back({GraphKind::random_regular, 5, 3, q1, 2, 2, 1});
      cases.push_back({GraphKind::random_regular, 6, 3, q1, 2, 2, 2});
      cases.push_back({GraphKind::random_regular, 6, 4, q1, 3, 3, 1});
      cases.push_back({GraphKind::random_regular, 6, 4, q1, 3, 2, 2});
    }
    std::size_t checked = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const Case& c = cases[i];
      auto d = static_cast<std::int64_t>(c.delta);
      auto g = share(build_graph(c.kind, c.n, c.delta, 100 + i));
      auto code = ExpanderCode::assemble(g, tower(c.q1, 16),
                                         ExpanderParams{Rational(c.rk, d), Rational(c.Rk, d), Rational(c.pk, d), 7 + i});
      RateReport rr = code.rate();
      std::string tag = "case " + std::to_string(i);
      o.require(rr.rate_c >= rr.rate_c_bound, tag + " rate of C " + rr.rate_c.str() + " < " + rr.rate_c_bound.str());
      o.require(rr.outer_rate >= rr.outer_rate_bound,
                tag + " outer rate " + rr.outer_rate.str() + " < " + rr.outer_rate_bound.str());
      ++checked;
    }
    bool repetition = true;
    for (unsigned q1 : {2u, 4u}) {
      auto g = share(build_graph(GraphKind::complete, 2, 2, 0));
      auto code = ExpanderCode::assemble(g, tower(q1, 16), ExpanderParams{Rational(1, 2), Rational(1, 2), 0, 1});
      repetition = repetition && code.dimension() == code.tower().m() && code.rate().rate_c == Rational(1, 4);
    }
    o.require(repetition, "K2,2 repetition dimension");
    o.detail << checked << " instances; K2,2 repetition dimension 1 over F2: " << (repetition ? "yes" : "no");
  });
}

void criterion_6() {
  report(6, "distance bound with gamma = 0", [](Outcome& o) {
    auto g = share(build_graph(GraphKind::complete, 3, 3, 0));
    double gam = gamma(*g).gamma;
    o.require(gam == 0.0, "gamma of K3,3 not 0");
    std::size_t checked = 0, skipped = 0;
    for (auto [q1, q2] : {std::pair{2u, 4u}, std::pair{4u, 16u}})
      for (std::int64_t rk = 1; rk <= 3; ++rk)
        for (std::int64_t Rk = 1; Rk <= 2; ++Rk)
          for (std::int64_t pk = 0; pk <= std::min(rk, Rk); ++pk) {
            ExpanderParams prm{Rational(rk, 3), Rational(Rk, 3), Rational(pk, 3), static_cast<std::uint64_t>(rk * 9 + Rk * 3 + pk)};
            auto code = ExpanderCode::assemble(g, tower(q1, q2), prm);
            OuterDistance od;
            try {
              od = min_outer_distance_bruteforce(code);
            } catch (const Error&) {
              ++skipped;
              continue;
            }
            Rational delta = Rational(3 - Rk + 1, 3);
            Rational theta = Rational(3 - rk + 1, 3);
            DistanceBound b = dist_bound_eq6(delta.to_double(), theta.to_double(), gam);
            std::string tag = "q2=" + std::to_string(q2) + " r=" + prm.r.str() + " R=" + prm.R.str() + " p=" + prm.p.str();
            o.require(od.relative.has_value(), tag + " zero code");
            if (od.relative) o.require(*od.relative >= delta, tag + " relative distance " + od.relative->str());
            o.require(b.value == delta.to_double() && !b.vacuous, tag + " bound != delta");
            ++checked;
          }
    o.require(checked >= 10, "too few enumerable instances");
    // A graph with large gamma makes the bound vacuous: reported negative, not clamped.
    auto cyc = share(build_graph(GraphKind::cycle, 4, 2, 0));
    DistanceBound vac = dist_bound_eq6(0.5, 0.5, gamma(*cyc).gamma);
    o.require(vac.vacuous && vac.value < 0, "vacuous case not flagged");
    o.detail << checked << " K3,3 instances, " << skipped << " too large; cycle C8 bound " << vac.value
             << " flagged vacuous";
  });
}

void criterion_7() {
  report(7, "decoder oracle agreement", [](Outcome& o) {
    struct Inst {
      ExpanderCode code;
      std::size_t sample;  // codewords to test; 0 = all
    };
    std::vector<Inst> insts;
    auto k33 = share(build_graph(GraphKind::complete, 3, 3, 0));
    auto k44 = share(build_graph(GraphKind::complete, 4, 4, 0));
    const Rational third(1, 3);
    insts.push_back({ExpanderCode::assemble(k33, tower(2, 4), {third, third, 0, 1}), 0});
    insts.push_back({ExpanderCode::assemble(k33, tower(2, 4), {third, third, third, 2}), 0});
    insts.push_back({ExpanderCode::assemble(k33, tower(4, 16), {third, third, third, 3}), 0});
    insts.push_back({ExpanderCode::assemble(k44, tower(4, 16), {Rational(1, 2), Rational(1, 2), Rational(1, 4), 4}), 3});

    std::size_t singles = 0, erasures = 0, fixed = 0, mc_cells = 0;
    for (std::size_t idx = 0; idx < insts.size(); ++idx) {
      const ExpanderCode& code = insts[idx].code;
      const Field& f = code.tower().field();
      const std::size_t len = code.length();
      const std::size_t rounds = default_max_rounds(code.graph().n());
      std::vector<Word> words;
      for_each_codeword(code, [&](const Word& c) { words.push_back(c); });
      std::vector<Word> tested;
      if (insts[idx].sample == 0) {
        tested = words;
      } else {
        Rng rng(idx);
        for (std::size_t i = 0; i < insts[idx].sample; ++i) tested.push_back(words[rng.below(words.size())]);
      }
      std::string tag = "instance " + std::to_string(idx);
      for (const Word& c : tested) {
        auto id = iter_decode(code, clean(c), rounds);
        o.require(id.report.outcome == DecodeOutcome::success && id.codeword == c && id.report.rounds_used == 1,
                  tag + " idempotence");
        ++fixed;
        for (std::size_t pos = 0; pos < len; ++pos) {
          std::vector<Fe> alphabet =
              code.is_f1_edge(pos) ? std::vector<Fe>(code.tower().subfield_elements().begin(),
                                                     code.tower().subfield_elements().end())
                                   : std::vector<Fe>();
          if (alphabet.empty())
            for (std::uint32_t v = 0; v < f.size(); ++v) alphabet.push_back(Fe{static_cast<std::uint16_t>(v)});
          for (Fe v : alphabet) {
            if (v == c[pos]) continue;
            ReceivedWord rw = clean(c);
            rw.symbols[pos] = v;
            auto oracle = nearest(words, rw);
            auto res = iter_decode(code, rw, rounds, &c);
            o.require(oracle == c, tag + " oracle disagrees with the transmitted word");
            o.require(res.report.outcome == DecodeOutcome::success && res.codeword == oracle,
                      tag + " single error at " + std::to_string(pos));
            ++singles;
          }
        }
        for (std::size_t a = 0; a < len; ++a)
          for (std::size_t b = a + 1; b < len; ++b) {
            ReceivedWord rw = clean(c);
            rw.erased[a] = rw.erased[b] = 1;
            rw.symbols[a] = rw.symbols[b] = f.zero();
            auto oracle = nearest(words, rw);
            auto res = iter_decode(code, rw, rounds, &c);
            o.require(oracle == c, tag + " erasure oracle");
            o.require(res.report.outcome == DecodeOutcome::success && res.codeword == oracle,
                      tag + " erasures at " + std::to_string(a) + "," + std::to_string(b));
            ++erasures;
          }
      }
      const std::size_t zero = 0;
      auto cells = monte_carlo_curve(code, std::span(&zero, 1), std::span(&zero, 1), 200, 77 + idx, rounds);
      o.require(cells.size() == 1 && cells[0].rate == 1.0, tag + " Monte-Carlo (0,0) rate");
      ++mc_cells;
    }
    o.detail << insts.size() << " instances, " << singles << " single errors, " << erasures << " double erasures, "
             << fixed << " codewords idempotent, " << mc_cells << " Monte-Carlo cells at 1.0";
  });
}

void criterion_8() {
  const std::vector<Rational> eps_values{Rational(1, 20), Rational(1, 10), Rational(1, 5)};

  report(8, "trade-off chains", [&](Outcome& o) {
    // Decodable design points.
    std::size_t design = 0;
    for (const Rational& eps : eps_values)
      for (std::int64_t Rn = 11; Rn <= 20; ++Rn)
        for (const Rational& alpha : {Rational(1, 2), Rational(1, 3), Rational(1, 4)}) {
          Rational R(Rn, 20);
          DesignPoint2 d = evaluate_sec2(eps, R, alpha, 1);
          if (!(d.rate_margin_ok && d.p_cap_ok)) continue;
          std::string tag = "eps=" + eps.str() + " R=" + R.str() + " alpha=" + alpha.str();
          o.require(d.rate_bound >= d.rate_chain, tag + " realised bound below chain");
          o.require(d.rate_bound_nominal >= d.rate_chain, tag + " bound below chain");
          o.require(d.rate_chain > d.rate_target, tag + " chain not above R - eps");
          ++design;
        }
    o.require(design > 0, "no design point satisfies both conditions");

    // Comparison with the original construction.
    std::size_t compared = 0;
    double prev_log = 1.0;
    long double prev_ratio = 0;
    for (auto it = eps_values.rbegin(); it != eps_values.rend(); ++it) {
      const Rational& eps = *it;
      DesignPoint2 d = evaluate_sec2(eps, Rational(9, 10), Rational(1, 2), 1);
      for (std::int64_t Rn = 11; Rn <= 20; ++Rn) {
        Rational R(Rn, 20);
        Comparison2 c = compare_sec2e(eps, R, d.Delta, d.q2);
        if (!c.rate_margin_ok) continue;
        std::string tag = "eps=" + eps.str() + " R=" + R.str();
        o.require(c.rate_loss == c.rate_loss_closed, tag + " rate loss closed form");
        o.require(c.rate_loss < eps, tag + " rate loss not below eps");
        ++compared;
      }
      Comparison2 c = compare_sec2e(eps, Rational(9, 10), d.Delta, d.q2);
      o.require(c.log10_complement < prev_log, "alphabet complement not decreasing");
      o.require(c.alphabet_ratio >= prev_ratio && c.alphabet_ratio <= 1.0L, "alphabet ratio not increasing");
      prev_log = c.log10_complement;
      prev_ratio = c.alphabet_ratio;
    }

    // Encodable construction.
    std::size_t regime = 0, gap_points = 0, boundary = 0;
    for (const Rational& eps : eps_values)
      for (std::int64_t Rn = 6; Rn <= 19; ++Rn)
        for (std::int64_t pn = 0; pn <= 100; ++pn) {
          Rational R(Rn, 20), p(pn, 200), alpha(1, 2), kappa(1, 4);
          if (p > R) continue;
          Rational r0 = Rational(1) - kappa * eps / 2;
          DesignPoint3 d = evaluate_sec3(eps, R, r0, Rational(1, 2), kappa, 1000, p, alpha);
          std::string tag = "eps=" + eps.str() + " R=" + R.str() + " p=" + p.str();
          if (d.s > 0) {
            o.require(d.gap_ok && d.gap > 0, tag + " gap");
            ++gap_points;
          }
          if (!(d.s_in_interval && d.R_threshold_ok)) continue;
          o.require(d.residual_ok, tag + " residual");
          o.require(d.rate_bound_enc >= R - eps, tag + " rate bound below R - eps");
          o.require(d.rate > R - eps, tag + " rate not above R - eps");
          boundary += d.rate_bound_enc == R - eps;
          o.require(d.s == 0 || d.exp_ok, tag + " exponent");
          ++regime;
        }
    o.require(regime > 0, "no encodable point in regime");
    o.detail << design << " design points, " << compared << " comparisons, " << regime << " encodable points in regime ("
             << boundary << " with the rate bound equal to R - eps), "
             << gap_points << " gap points";
  });
}

void criterion_9() {
  report(9, "CLI replay byte-identical", [](Outcome& o) {
    fs::path dir = fs::temp_directory_path() / ("mixmds_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto run = [&](const std::string& args) {
      std::string cmd = "cd '" + dir.string() + "' && '" MIXMDS_CLI_PATH "' " + args + " > out.txt 2> err.txt";
      int status = std::system(cmd.c_str());
      return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    const std::vector<std::pair<std::string, std::string>> steps{
        {"g.json", "graph gen --kind random_regular --n 6 --delta 3 --seed 3"},
        {"gamma.json", "graph gamma --graph g.json"},
        {"a.json", "assign balance --graph g.json --p 1/3 --pbar 2/3 --seed 4"},
        {"v.json", "assign verify --graph g.json --assignment a.json"},
        {"i.json", "code build --graph g.json --q1 2 --q2 4 --r 2/3 --R 2/3 --p 1/3 --seed 5"},
        {"rate.json", "code rate --instance i.json"},
        {"dist.json", "code mindist --instance i.json"},
        {"mc.csv", "decode mc --instance i.json --t 0,1,2 --rho 0,2 --trials 20 --seed 9 --format csv"},
        {"one.json", "decode one --instance i.json --t 1 --rho 1 --seed 10"},
        {"s2.csv", "tradeoff sweep2 --eps 0.05,0.1,0.2 --R 0.7,0.8,0.9 --alpha 1/2,1/3 --format csv"},
        {"s3.json",
         "tradeoff sweep3 --eps 0.1 --R 0.5,0.7 --p 0.01,0.05 --r0 0.99 --rm 0.5 --format json"},
    };
    std::size_t identical = 0;
    for (const auto& [art, args] : steps) {
      if (run(args + " --out " + art) != 0) {
        o.require(false, "command failed: " + args);
        continue;
      }
      if (run("replay --manifest " + art + ".manifest.json --out re_" + art) != 0) {
        o.require(false, "replay failed for " + art);
        continue;
      }
      bool same = read_file(dir / art) == read_file(dir / ("re_" + art));
      auto status = nlohmann::json::parse(read_file(dir / "out.txt"));
      o.require(same && status.at("identical") == true, art + " differs");
      identical += same;
    }
    fs::remove_all(dir);
    o.detail << identical << "/" << steps.size() << " artifacts identical";
  });
}

}  // namespace

int main() {
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
