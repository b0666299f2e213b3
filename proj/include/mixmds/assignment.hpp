#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixmds/graph.hpp"
#include "mixmds/rational.hpp"

namespace mixmds {

enum class Side : std::uint8_t { left, right };

struct Vertex {
  Side side;
  std::size_t index;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Directed view of one edge: bit 1 points right-to-left, bit 0 left-to-right.
struct Arc {
  std::size_t edge;
  Vertex tail;
  Vertex head;
  std::uint8_t bit;
};

/// Binary edge labeling y (1 marks an F1 coordinate) with its targets:
/// exactly p*Delta ones per left vertex, at most pbar*Delta per right vertex.
class EdgeLabeling {
 public:
  /// Throws NonIntegerWeight unless p*Delta and pbar*Delta are integers,
  /// BadParameters unless 0 <= p <= pbar < 1 and |bits| = n*Delta.
  EdgeLabeling(GraphPtr graph, Rational p, Rational pbar, std::vector<std::uint8_t> bits);

  const BipartiteGraph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::uint8_t bit(std::size_t edge) const noexcept { return bits_[edge]; }

  Rational p() const noexcept { return p_; }
  Rational pbar() const noexcept { return pbar_; }
  std::size_t left_target() const noexcept { return left_target_; }
  std::size_t right_cap() const noexcept { return right_cap_; }

  std::size_t left_weight(std::size_t u) const noexcept { return left_weight_[u]; }
  std::size_t right_weight(std::size_t v) const noexcept { return right_weight_[v]; }
  /// Sum over right vertices of max(0, w_v - pbar*Delta).
  std::size_t excess() const noexcept;

  void flip(std::size_t edge) noexcept;

  /// {"n","delta","p","pbar","seed","bits"}; bits is a '0'/'1' string in edge order.
  nlohmann::json to_json(std::uint64_t seed) const;
  static EdgeLabeling from_json(GraphPtr graph, const nlohmann::json& j);

  friend bool operator==(const EdgeLabeling& a, const EdgeLabeling& b) {
    return a.bits_ == b.bits_ && a.p_ == b.p_ && a.pbar_ == b.pbar_;
  }

 private:
  GraphPtr graph_;
  Rational p_;
  Rational pbar_;
  std::size_t left_target_;
  std::size_t right_cap_;
  std::vector<std::uint8_t> bits_;
  std::vector<std::size_t> left_weight_;
  std::vector<std::size_t> right_weight_;
};

/// Each E(u) receives exactly p*Delta ones at uniformly chosen positions.
EdgeLabeling init_left_exact(GraphPtr graph, Rational p, Rational pbar, std::uint64_t seed);

std::vector<Arc> directed_view(const EdgeLabeling& lab);

/// Cumulative vertex counts after a completed search phase that found no
/// sink: left vertices reached (T) and right vertices reached (S).
struct PhaseSizes {
  std::size_t left_reached;
  std::size_t right_reached;
};

struct ReversalPath {
  /// Alternating 1-edge, 0-edge, ... from source to sink.
  std::vector<std::size_t> edges;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::size_t phases = 0;
  std::vector<PhaseSizes> growth;
};

/// Shortest directed path from an overweight right vertex to a right vertex
/// of weight <= pbar*Delta - 1, by phase-synchronous breadth-first search.
/// Throws BadParameters if `source` is not overweight and NoPathFound if no
/// such path exists.
ReversalPath find_reversal_path(const EdgeLabeling& lab, std::size_t source);

/// Flips every bit on the path. Throws MalformedPath unless the path
/// alternates 1-edges and 0-edges through shared vertices, starting at a
/// right vertex and ending at a different right vertex.
EdgeLabeling reverse_path(const EdgeLabeling& lab, std::span<const std::size_t> path);
void reverse_path_in_place(EdgeLabeling& lab, std::span<const std::size_t> path);

struct BalanceStep {
  std::size_t source;
  std::size_t sink;
  std::size_t path_length;
  std::size_t phases;
  std::vector<PhaseSizes> growth;
};

struct BalanceTrace {
  std::size_t reversals = 0;
  std::size_t phases_max = 0;
  std::size_t initial_excess = 0;
  std::vector<BalanceStep> steps;
  /// Audit counters; all zero on a correct run.
  std::size_t left_weight_violations = 0;
  std::size_t excess_step_violations = 0;
  std::size_t intermediate_weight_violations = 0;
  std::size_t sink_overflow_violations = 0;
};

struct BalanceOptions {
  /// Recompute every weight from the bits after each reversal.
  bool audit = false;
};

struct BalanceResult {
  EdgeLabeling labeling;
  BalanceTrace trace;
};

/// Repairs right-side overweight one unit at a time, always starting from
/// the lowest-index overweight vertex.
BalanceResult balance(EdgeLabeling lab, const BalanceOptions& options = {});

struct Violation {
  Side side;
  std::size_t vertex;
  std::size_t weight;
  std::size_t bound;
};

struct GoodnessReport {
  bool good = true;
  std::vector<Violation> violations;
};

/// Checks every left weight equals p*Delta and every right weight is at
/// most pbar*Delta, recomputing weights from the bits.
GoodnessReport verify_good(const EdgeLabeling& lab);

}  // namespace mixmds
