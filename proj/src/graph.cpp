#include "mixmds/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "mixmds/error.hpp"
#include "mixmds/rng.hpp"

namespace mixmds {

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "complete") return GraphKind::complete;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "random_regular") return GraphKind::random_regular;
  throw Error(Errc::BadParameters, "unknown graph kind '" + std::string(name) + "'");
}

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::complete: return "complete";
    case GraphKind::cycle: return "cycle";
    case GraphKind::random_regular: return "random_regular";
  }
  return "unknown";
}

BipartiteGraph::BipartiteGraph(std::size_t n, std::size_t delta, std::vector<std::vector<std::size_t>> adjacency)
    : n_(n), delta_(delta), adj_(std::move(adjacency)) {
  if (n_ == 0 || delta_ == 0) throw Error(Errc::BadParameters, "graph needs n >= 1 and delta >= 1");
  if (adj_.size() != n_) throw Error(Errc::BadParameters, "adjacency must list every left vertex");
  std::vector<std::size_t> right_degree(n_, 0);
  for (const auto& row : adj_) {
    if (row.size() != delta_) throw Error(Errc::BadParameters, "left vertex degree differs from delta");
    for (auto v : row) {
      if (v >= n_) throw Error(Errc::BadParameters, "right vertex index out of range");
      ++right_degree[v];
    }
  }
  for (auto d : right_degree) {
    if (d != delta_) throw Error(Errc::BadParameters, "right vertex degree differs from delta");
  }

  left_edges_.resize(num_edges());
  std::iota(left_edges_.begin(), left_edges_.end(), std::size_t{0});
  right_edges_.resize(num_edges());
  right_slot_.resize(num_edges());
  std::vector<std::size_t> fill(n_, 0);
  for (std::size_t e = 0; e < num_edges(); ++e) {
    std::size_t v = adj_[e / delta_][e % delta_];
    right_slot_[e] = fill[v];
    right_edges_[v * delta_ + fill[v]++] = e;
  }
}

bool BipartiteGraph::is_connected() const {
  // Vertices 0..n-1 are left, n..2n-1 right.
  std::vector<std::uint8_t> seen(2 * n_, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    auto visit = [&](std::size_t y) {
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    };
    if (x < n_) {
      for (auto v : adj_[x]) visit(n_ + v);
    } else {
      for (auto e : right_edges(x - n_)) visit(e / delta_);
    }
  }
  return count == 2 * n_;
}

nlohmann::json BipartiteGraph::to_json() const { return {{"n", n_}, {"delta", delta_}, {"adj", adj_}}; }

BipartiteGraph BipartiteGraph::from_json(const nlohmann::json& j) {
  try {
    return BipartiteGraph(j.at("n").get<std::size_t>(), j.at("delta").get<std::size_t>(),
                          j.at("adj").get<std::vector<std::vector<std::size_t>>>());
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, std::string("malformed graph file: ") + ex.what());
  }
}

BipartiteGraph build_graph(GraphKind kind, std::size_t n, std::size_t delta, std::uint64_t seed,
                           std::size_t retry_budget) {
  if (n == 0 || delta == 0) throw Error(Errc::BadParameters, "graph needs n >= 1 and delta >= 1");
  std::vector<std::vector<std::size_t>> adj(n);
  switch (kind) {
    case GraphKind::complete: {
      if (delta != n) throw Error(Errc::BadParameters, "complete bipartite graph requires delta = n");
      for (auto& row : adj) {
        row.resize(n);
        std::iota(row.begin(), row.end(), std::size_t{0});
      }
      return BipartiteGraph(n, delta, std::move(adj));
    }
    case GraphKind::cycle: {
      if (delta != 2 || n < 2) throw Error(Errc::BadParameters, "cycle requires delta = 2 and n >= 2");
      for (std::size_t u = 0; u < n; ++u) adj[u] = {u, (u + 1) % n};
      return BipartiteGraph(n, delta, std::move(adj));
    }
    case GraphKind::random_regular: {
      Rng rng(seed);
      std::vector<std::size_t> stubs(n * delta);
      for (std::size_t attempt = 0; attempt < retry_budget; ++attempt) {
        for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / delta;
        rng.shuffle(std::span<std::size_t>(stubs));
        for (std::size_t u = 0; u < n; ++u) adj[u].assign(stubs.begin() + static_cast<std::ptrdiff_t>(u * delta),
                                                          stubs.begin() + static_cast<std::ptrdiff_t>((u + 1) * delta));
        BipartiteGraph g(n, delta, adj);
        if (g.is_connected()) return g;
      }
      throw Error(Errc::ConnectivityFailure, "no connected random regular graph within the retry budget");
    }
  }
  throw Error(Errc::BadParameters, "unknown graph kind");
}

std::vector<double> adjacency_spectrum(const BipartiteGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (std::size_t u = 0; u < g.n(); ++u) {
    for (auto v : g.adjacency()[u]) {
      a(static_cast<Eigen::Index>(u), n + static_cast<Eigen::Index>(v)) += 1.0;
      a(n + static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) += 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

SpectralInfo gamma(const BipartiteGraph& g) {
  auto ev = adjacency_spectrum(g);
  SpectralInfo info;
  info.lambda1 = ev[0];
  info.lambda2 = ev.size() > 1 ? ev[1] : ev[0];
  // Exact zeros (e.g. K_{n,n}) come back as round-off.
  if (std::abs(info.lambda2) < kEigenTolerance) info.lambda2 = 0.0;
  info.gamma = info.lambda2 / info.lambda1;
  return info;
}

bool is_ramanujan(const BipartiteGraph& g) {
  auto info = gamma(g);
  return info.lambda2 <= 2.0 * std::sqrt(static_cast<double>(g.delta()) - 1.0) + kEigenTolerance;
}

}  // namespace mixmds
