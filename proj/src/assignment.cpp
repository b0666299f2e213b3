#include "mixmds/assignment.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mixmds/error.hpp"
#include "mixmds/rng.hpp"

namespace mixmds {
namespace {

std::size_t integral_weight(const Rational& frac, std::size_t delta, const char* what) {
  Rational w = frac * Rational(static_cast<Rational::int_type>(delta));
  if (!w.is_integer()) {
    throw Error(Errc::NonIntegerWeight, std::string(what) + " * delta = " + w.str() + " is not an integer");
  }
  return static_cast<std::size_t>(w.num());
}

std::size_t recount(const EdgeLabeling& lab, std::span<const std::size_t> edges) {
  std::size_t w = 0;
  for (auto e : edges) w += lab.bit(e);
  return w;
}

}  // namespace

EdgeLabeling::EdgeLabeling(GraphPtr graph, Rational p, Rational pbar, std::vector<std::uint8_t> bits)
    : graph_(std::move(graph)), p_(p), pbar_(pbar), bits_(std::move(bits)) {
  if (!graph_) throw Error(Errc::BadParameters, "null graph");
  if (p_ < Rational(0) || p_ > pbar_ || pbar_ >= Rational(1)) {
    throw Error(Errc::BadParameters, "labeling requires 0 <= p <= pbar < 1");
  }
  left_target_ = integral_weight(p_, graph_->delta(), "p");
  right_cap_ = integral_weight(pbar_, graph_->delta(), "pbar");
  if (bits_.size() != graph_->num_edges()) throw Error(Errc::BadParameters, "labeling length differs from edge count");
  left_weight_.assign(graph_->n(), 0);
  right_weight_.assign(graph_->n(), 0);
  for (std::size_t e = 0; e < bits_.size(); ++e) {
    if (bits_[e] > 1) throw Error(Errc::BadParameters, "labels must be 0 or 1");
    if (bits_[e]) {
      auto ends = graph_->ends(e);
      ++left_weight_[ends.left];
      ++right_weight_[ends.right];
    }
  }
}

std::size_t EdgeLabeling::excess() const noexcept {
  std::size_t total = 0;
  for (auto w : right_weight_) total += w > right_cap_ ? w - right_cap_ : 0;
  return total;
}

void EdgeLabeling::flip(std::size_t edge) noexcept {
  auto ends = graph_->ends(edge);
  if (bits_[edge]) {
    bits_[edge] = 0;
    --left_weight_[ends.left];
    --right_weight_[ends.right];
  } else {
    bits_[edge] = 1;
    ++left_weight_[ends.left];
    ++right_weight_[ends.right];
  }
}

nlohmann::json EdgeLabeling::to_json(std::uint64_t seed) const {
  std::string text(bits_.size(), '0');
  for (std::size_t e = 0; e < bits_.size(); ++e) text[e] = bits_[e] ? '1' : '0';
  return {{"n", graph_->n()},    {"delta", graph_->delta()}, {"p", p_.str()},
          {"pbar", pbar_.str()}, {"seed", seed},             {"bits", text}};
}

EdgeLabeling EdgeLabeling::from_json(GraphPtr graph, const nlohmann::json& j) {
  try {
    if (j.at("n").get<std::size_t>() != graph->n() || j.at("delta").get<std::size_t>() != graph->delta()) {
      throw Error(Errc::BadParameters, "assignment file does not match the graph");
    }
    auto text = j.at("bits").get<std::string>();
    std::vector<std::uint8_t> bits(text.size());
    for (std::size_t e = 0; e < text.size(); ++e) {
      if (text[e] != '0' && text[e] != '1') throw Error(Errc::ParseError, "assignment bits must be '0' or '1'");
      bits[e] = text[e] == '1';
    }
    return EdgeLabeling(std::move(graph), Rational::parse(j.at("p").get<std::string>()),
                        Rational::parse(j.at("pbar").get<std::string>()), std::move(bits));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, std::string("malformed assignment file: ") + ex.what());
  }
}

EdgeLabeling init_left_exact(GraphPtr graph, Rational p, Rational pbar, std::uint64_t seed) {
  if (!graph) throw Error(Errc::BadParameters, "null graph");
  const std::size_t delta = graph->delta();
  const std::size_t ones = integral_weight(p, delta, "p");
  Rng rng(seed);
  std::vector<std::uint8_t> bits(graph->num_edges(), 0);
  std::vector<std::size_t> slots(delta);
  for (std::size_t u = 0; u < graph->n(); ++u) {
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(slots));
    for (std::size_t i = 0; i < ones; ++i) bits[graph->edge_index(u, slots[i])] = 1;
  }
  return EdgeLabeling(std::move(graph), p, pbar, std::move(bits));
}

std::vector<Arc> directed_view(const EdgeLabeling& lab) {
  const auto& g = lab.graph();
  std::vector<Arc> arcs;
  arcs.reserve(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto ends = g.ends(e);
    Vertex l{Side::left, ends.left};
    Vertex r{Side::right, ends.right};
    if (lab.bit(e)) arcs.push_back({e, r, l, 1});
    else arcs.push_back({e, l, r, 0});
  }
  return arcs;
}

ReversalPath find_reversal_path(const EdgeLabeling& lab, std::size_t source) {
  const auto& g = lab.graph();
  if (source >= g.n() || lab.right_weight(source) <= lab.right_cap()) {
    throw Error(Errc::BadParameters, "reversal path source must be an overweight right vertex");
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via_left(g.n(), kNone);   // edge that reached each left vertex
  std::vector<std::size_t> via_right(g.n(), kNone);  // edge that reached each right vertex
  std::vector<std::uint8_t> seen_left(g.n(), 0);
  std::vector<std::uint8_t> seen_right(g.n(), 0);
  seen_right[source] = 1;

  ReversalPath result;
  result.source = source;
  std::vector<std::size_t> frontier_right{source};
  std::size_t left_reached = 0;
  std::size_t right_reached = 1;

  while (!frontier_right.empty()) {
    ++result.phases;
    std::vector<std::size_t> frontier_left;
    for (auto v : frontier_right) {
      for (auto e : g.right_edges(v)) {
        if (!lab.bit(e)) continue;
        std::size_t u = g.ends(e).left;
        if (seen_left[u]) continue;
        seen_left[u] = 1;
        via_left[u] = e;
        frontier_left.push_back(u);
        ++left_reached;
      }
    }
    std::vector<std::size_t> next_right;
    for (auto u : frontier_left) {
      for (auto e : g.left_edges(u)) {
        if (lab.bit(e)) continue;
        std::size_t v = g.ends(e).right;
        if (seen_right[v]) continue;
        seen_right[v] = 1;
        via_right[v] = e;
        ++right_reached;
        if (lab.right_weight(v) + 1 <= lab.right_cap()) {
          result.sink = v;
          std::vector<std::size_t> rev;
          std::size_t cur = v;
          while (cur != source) {
            std::size_t e0 = via_right[cur];
            std::size_t e1 = via_left[g.ends(e0).left];
            rev.push_back(e0);
            rev.push_back(e1);
            cur = g.ends(e1).right;
          }
          result.edges.assign(rev.rbegin(), rev.rend());
          return result;
        }
        next_right.push_back(v);
      }
    }
    result.growth.push_back({left_reached, right_reached});
    frontier_right = std::move(next_right);
  }
  throw Error(Errc::NoPathFound, "no reversal path from right vertex " + std::to_string(source));
}

void reverse_path_in_place(EdgeLabeling& lab, std::span<const std::size_t> path) {
  const auto& g = lab.graph();
  auto bad = [](const std::string& why) { return Error(Errc::MalformedPath, "malformed reversal path: " + why); };
  if (path.empty() || path.size() % 2 != 0) throw bad("length must be even and positive");
  std::vector<std::uint8_t> used(g.num_edges(), 0);
  std::size_t start = 0;
  std::size_t right = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::size_t e = path[i];
    if (e >= g.num_edges() || used[e]) throw bad("edge out of range or repeated");
    used[e] = 1;
    auto ends = g.ends(e);
    if (i % 2 == 0) {
      if (lab.bit(e) != 1) throw bad("odd step must follow a 1-edge out of a right vertex");
      if (i == 0) start = ends.right;
      else if (ends.right != right) throw bad("path is not contiguous");
    } else {
      if (lab.bit(e) != 0) throw bad("even step must follow a 0-edge out of a left vertex");
      if (ends.left != g.ends(path[i - 1]).left) throw bad("path is not contiguous");
      right = ends.right;
    }
  }
  if (right == start) throw bad("path must end at a different right vertex");
  for (auto e : path) lab.flip(e);
}

EdgeLabeling reverse_path(const EdgeLabeling& lab, std::span<const std::size_t> path) {
  EdgeLabeling out = lab;
  reverse_path_in_place(out, path);
  return out;
}

BalanceResult balance(EdgeLabeling lab, const BalanceOptions& options) {
  const auto& g = lab.graph();
  BalanceTrace trace;
  trace.initial_excess = lab.excess();
  const std::size_t budget = g.num_edges();

  std::size_t next_source = 0;
  while (true) {
    while (next_source < g.n() && lab.right_weight(next_source) <= lab.right_cap()) ++next_source;
    if (next_source == g.n()) break;
    if (trace.reversals >= budget) throw Error(Errc::NoPathFound, "reversal budget exhausted");

    ReversalPath path = find_reversal_path(lab, next_source);
    std::vector<std::size_t> before;
    std::size_t excess_before = 0;
    if (options.audit) {
      before.resize(g.n());
      for (std::size_t v = 0; v < g.n(); ++v) before[v] = lab.right_weight(v);
      excess_before = lab.excess();
    }

    reverse_path_in_place(lab, path.edges);
    ++trace.reversals;
    trace.phases_max = std::max(trace.phases_max, path.phases);

    if (options.audit) {
      for (std::size_t u = 0; u < g.n(); ++u) {
        if (recount(lab, g.left_edges(u)) != lab.left_target()) ++trace.left_weight_violations;
      }
      if (lab.excess() + 1 != excess_before) ++trace.excess_step_violations;
      for (std::size_t v = 0; v < g.n(); ++v) {
        std::size_t w = recount(lab, g.right_edges(v));
        if (v == path.source) {
          if (w + 1 != before[v]) ++trace.intermediate_weight_violations;
        } else if (v == path.sink) {
          if (w != before[v] + 1 || w > lab.right_cap()) ++trace.sink_overflow_violations;
        } else if (w != before[v]) {
          ++trace.intermediate_weight_violations;
        }
      }
    }
    trace.steps.push_back({path.source, path.sink, path.edges.size(), path.phases, std::move(path.growth)});
    // Weights below next_source are untouched except for sinks, which stay within the cap.
  }
  return {std::move(lab), std::move(trace)};
}

GoodnessReport verify_good(const EdgeLabeling& lab) {
  const auto& g = lab.graph();
  GoodnessReport report;
  for (std::size_t u = 0; u < g.n(); ++u) {
    std::size_t w = recount(lab, g.left_edges(u));
    if (w != lab.left_target()) report.violations.push_back({Side::left, u, w, lab.left_target()});
  }
  for (std::size_t v = 0; v < g.n(); ++v) {
    std::size_t w = recount(lab, g.right_edges(v));
    if (w > lab.right_cap()) report.violations.push_back({Side::right, v, w, lab.right_cap()});
  }
  report.good = report.violations.empty();
  return report;
}

}  // namespace mixmds
