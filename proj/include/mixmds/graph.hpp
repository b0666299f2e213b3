#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mixmds {

enum class GraphKind { complete, cycle, random_regular };

GraphKind parse_graph_kind(std::string_view name);
std::string_view graph_kind_name(GraphKind kind);

struct EdgeEnds {
  std::size_t left;
  std::size_t right;
};

/// Delta-regular bipartite multigraph with n vertices per side. Edge
/// u*Delta + pos joins left vertex u to its pos-th listed right neighbour;
/// E(u) follows adjacency order and E(v) lists edge indices ascending.
class BipartiteGraph {
 public:
  /// Throws BadParameters unless every vertex on both sides has degree delta.
  BipartiteGraph(std::size_t n, std::size_t delta, std::vector<std::vector<std::size_t>> adjacency);

  std::size_t n() const noexcept { return n_; }
  std::size_t delta() const noexcept { return delta_; }
  std::size_t num_edges() const noexcept { return n_ * delta_; }

  const std::vector<std::vector<std::size_t>>& adjacency() const noexcept { return adj_; }
  std::size_t edge_index(std::size_t u, std::size_t pos) const noexcept { return u * delta_ + pos; }
  EdgeEnds ends(std::size_t edge) const noexcept { return {edge / delta_, adj_[edge / delta_][edge % delta_]}; }

  /// E(u) / E(v): global edge indices in canonical order.
  std::span<const std::size_t> left_edges(std::size_t u) const noexcept {
    return {left_edges_.data() + u * delta_, delta_};
  }
  std::span<const std::size_t> right_edges(std::size_t v) const noexcept {
    return {right_edges_.data() + v * delta_, delta_};
  }
  /// Position of an edge inside E(u) and inside E(v).
  std::size_t left_slot(std::size_t edge) const noexcept { return edge % delta_; }
  std::size_t right_slot(std::size_t edge) const noexcept { return right_slot_[edge]; }

  bool is_connected() const;

  /// {"n", "delta", "adj"}.
  nlohmann::json to_json() const;
  static BipartiteGraph from_json(const nlohmann::json& j);

 private:
  std::size_t n_;
  std::size_t delta_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> left_edges_;
  std::vector<std::size_t> right_edges_;
  std::vector<std::size_t> right_slot_;
};

using GraphPtr = std::shared_ptr<const BipartiteGraph>;

/// complete: K_{n,n} (delta = n). cycle: the 2n-cycle (delta = 2, n >= 2).
/// random_regular: seeded bipartite configuration model, retried until
/// connected. Throws BadParameters or ConnectivityFailure.
BipartiteGraph build_graph(GraphKind kind, std::size_t n, std::size_t delta, std::uint64_t seed,
                           std::size_t retry_budget = 10000);

struct SpectralInfo {
  double lambda1 = 0;
  double lambda2 = 0;
  double gamma = 0;
};

/// All 2n adjacency eigenvalues, descending.
std::vector<double> adjacency_spectrum(const BipartiteGraph& g);

/// lambda2 is the second largest signed eigenvalue.
SpectralInfo gamma(const BipartiteGraph& g);

inline constexpr double kEigenTolerance = 1e-9;

/// lambda2 <= 2 sqrt(delta - 1) + kEigenTolerance.
bool is_ramanujan(const BipartiteGraph& g);

}  // namespace mixmds
