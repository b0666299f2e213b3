#include "mixmds/expander.hpp"

#include <string>

#include "mixmds/error.hpp"

namespace mixmds {
namespace {

std::size_t integral_symbols(const Rational& frac, std::size_t delta, const char* what) {
  Rational w = frac * Rational(static_cast<Rational::int_type>(delta));
  if (!w.is_integer()) {
    throw Error(Errc::NonIntegerWeight, std::string(what) + " * delta = " + w.str() + " is not an integer");
  }
  return static_cast<std::size_t>(w.num());
}

// f1 slots are the labeled-1 positions of the block; the information support
// adds the lowest remaining slots until it has k entries.
MixedMdsCode block_code(const RsCode& parent, const EdgeLabeling& lab, std::span<const std::size_t> edges) {
  std::vector<std::size_t> f1;
  std::vector<std::size_t> support;
  for (std::size_t s = 0; s < edges.size(); ++s) {
    if (lab.bit(edges[s])) {
      f1.push_back(s);
      support.push_back(s);
    }
  }
  for (std::size_t s = 0; s < edges.size() && support.size() < parent.k(); ++s) {
    if (!lab.bit(edges[s])) support.push_back(s);
  }
  return MixedMdsCode(parent, std::move(support), std::move(f1));
}

bool is_zero(std::span<const Fe> w) {
  for (Fe x : w) {
    if (x.value != 0) return false;
  }
  return true;
}

}  // namespace

ExpanderCode ExpanderCode::assemble(GraphPtr graph, TowerPtr tower, const ExpanderParams& params,
                                    std::size_t variable_limit) {
  if (params.p > params.r || params.p > params.R) {
    throw Error(Errc::BadParameters, "assembly requires p <= r and p <= R");
  }
  Rational pbar = params.R;
  if (pbar >= Rational(1)) {
    // With R = 1 the right side is unconstrained; any cap >= p holds.
    pbar = Rational(static_cast<Rational::int_type>(graph->delta()) - 1,
                    static_cast<Rational::int_type>(graph->delta()));
    if (pbar < params.p) pbar = params.p;
  }
  auto lab = init_left_exact(graph, params.p, pbar, params.seed);
  auto balanced = balance(std::move(lab));
  return ExpanderCode(std::move(graph), std::move(tower), params.r, params.R, std::move(balanced.labeling),
                      params.seed, variable_limit);
}

ExpanderCode::ExpanderCode(GraphPtr graph, TowerPtr tower, Rational r, Rational R, EdgeLabeling assignment,
                           std::uint64_t seed, std::size_t variable_limit)
    : graph_(std::move(graph)),
      tower_(std::move(tower)),
      r_(r),
      R_(R),
      assignment_(std::move(assignment)),
      seed_(seed) {
  if (!graph_ || !tower_) throw Error(Errc::BadParameters, "null graph or tower");
  if (&assignment_.graph() != graph_.get() && assignment_.graph().adjacency() != graph_->adjacency()) {
    throw Error(Errc::BadParameters, "assignment belongs to a different graph");
  }
  const std::size_t delta = graph_->delta();
  const std::size_t k_left = integral_symbols(r_, delta, "r");
  const std::size_t k_right = integral_symbols(R_, delta, "R");
  if (assignment_.p() > r_ || assignment_.p() > R_) throw Error(Errc::BadParameters, "requires p <= r and p <= R");

  for (std::size_t u = 0; u < graph_->n(); ++u) {
    if (assignment_.left_weight(u) != assignment_.left_target()) {
      throw Error(Errc::BadParameters, "assignment is not left-exact");
    }
  }

  RsCode left_parent(tower_, delta, k_left);
  RsCode right_parent(tower_, delta, k_right);
  for (std::size_t v = 0; v < graph_->n(); ++v) {
    std::size_t w = 0;
    for (auto e : graph_->right_edges(v)) w += assignment_.bit(e);
    if (w > k_right) throw Error(Errc::SupportMismatch, "right block has more F1 coordinates than R*Delta");
  }
  for (std::size_t u = 0; u < graph_->n(); ++u) {
    left_codes_.push_back(block_code(left_parent, assignment_, graph_->left_edges(u)));
  }
  for (std::size_t v = 0; v < graph_->n(); ++v) {
    right_codes_.push_back(block_code(right_parent, assignment_, graph_->right_edges(v)));
  }
  build_basis(variable_limit);
}

void ExpanderCode::build_basis(std::size_t variable_limit) {
  const Field& f = tower_->field();
  const std::size_t m = tower_->m();
  const std::size_t edges = length();

  // F1 edges carry one coordinate (on basis element 1); F2 edges carry m.
  std::vector<std::size_t> offset(edges + 1, 0);
  for (std::size_t e = 0; e < edges; ++e) offset[e + 1] = offset[e] + (is_f1_edge(e) ? 1 : m);
  const std::size_t vars = offset[edges];
  if (vars > variable_limit) {
    throw Error(Errc::TooLarge, "basis computation needs " + std::to_string(vars) + " variables");
  }

  FeMatrix system(0, vars);
  std::vector<Fe> row(vars);
  auto add_block = [&](const RsCode& parent, std::span<const std::size_t> block) {
    const FeMatrix& h = parent.parity_check();
    for (std::size_t i = 0; i < h.rows(); ++i) {
      for (std::size_t coord = 0; coord < m; ++coord) {
        std::fill(row.begin(), row.end(), f.zero());
        for (std::size_t s = 0; s < block.size(); ++s) {
          const std::size_t e = block[s];
          const std::size_t count = offset[e + 1] - offset[e];
          for (std::size_t l = 0; l < count; ++l) {
            Fe coef = f.mul(h.at(i, s), tower_->subfield_basis()[l]);
            row[offset[e] + l] = tower_->coordinates(coef)[coord];
          }
        }
        system.append_row(row);
      }
    }
  };
  for (std::size_t u = 0; u < graph_->n(); ++u) add_block(left_codes_[u].parent(), graph_->left_edges(u));
  for (std::size_t v = 0; v < graph_->n(); ++v) add_block(right_codes_[v].parent(), graph_->right_edges(v));

  FeMatrix kernel = system.rows() == 0 ? FeMatrix(0, vars) : nullspace(f, system);
  if (system.rows() == 0) {
    for (std::size_t j = 0; j < vars; ++j) {
      std::vector<Fe> unit(vars, f.zero());
      unit[j] = f.one();
      kernel.append_row(unit);
    }
  }

  basis_.clear();
  for (std::size_t b = 0; b < kernel.rows(); ++b) {
    Word word(edges, f.zero());
    for (std::size_t e = 0; e < edges; ++e) {
      for (std::size_t l = 0; l < offset[e + 1] - offset[e]; ++l) {
        word[e] = f.add(word[e], f.mul(kernel.at(b, offset[e] + l), tower_->subfield_basis()[l]));
      }
    }
    basis_.push_back(std::move(word));
  }
}

Word ExpanderCode::combine(std::span<const Fe> coeffs) const {
  if (coeffs.size() != basis_.size()) throw Error(Errc::BadParameters, "coefficient count differs from dimension");
  const Field& f = tower_->field();
  Word out(length(), f.zero());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!tower_->in_subfield(coeffs[i])) throw Error(Errc::SupportMismatch, "combination coefficient not in F1");
    if (coeffs[i].value == 0) continue;
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = f.add(out[e], f.mul(coeffs[i], basis_[i][e]));
  }
  return out;
}

Word ExpanderCode::block(std::span<const Fe> word, std::span<const std::size_t> edges) const {
  Word out(edges.size());
  for (std::size_t s = 0; s < edges.size(); ++s) out[s] = word[edges[s]];
  return out;
}

bool ExpanderCode::satisfies_left(std::size_t u, std::span<const Fe> word) const {
  return left_codes_[u].contains(block(word, graph_->left_edges(u)));
}

bool ExpanderCode::satisfies_right(std::size_t v, std::span<const Fe> word) const {
  return right_codes_[v].contains(block(word, graph_->right_edges(v)));
}

bool ExpanderCode::is_codeword(std::span<const Fe> word) const {
  if (word.size() != length()) return false;
  for (std::size_t u = 0; u < graph_->n(); ++u) {
    if (!satisfies_left(u, word)) return false;
  }
  for (std::size_t v = 0; v < graph_->n(); ++v) {
    if (!satisfies_right(v, word)) return false;
  }
  return true;
}

RateReport ExpanderCode::rate() const {
  const Rational alpha = tower_->alpha();
  const Rational shift = p() * (alpha - Rational(1));
  const auto n = static_cast<Rational::int_type>(graph_->n());
  const auto delta = static_cast<Rational::int_type>(graph_->delta());
  const Rational log_size = Rational(static_cast<Rational::int_type>(dimension())) * alpha;

  RateReport rep;
  rep.rate_c = log_size / (Rational(n * delta) * (shift + Rational(1)));
  rep.left_rate_q2 = (shift + r_) / (shift + Rational(1));
  rep.rate_c_bound = rep.left_rate_q2 + (shift + R_) / (shift + Rational(1)) - Rational(1);
  rep.outer_rate = log_size / (Rational(n) * phi_u_log_q2());
  rep.outer_rate_bound = Rational(1) + (R_ - Rational(1)) / (shift + r_);
  return rep;
}

Rational ExpanderCode::phi_u_log_q2() const {
  const auto delta = static_cast<Rational::int_type>(graph_->delta());
  return (p() * tower_->alpha() + (r_ - p())) * Rational(delta);
}

Rational ExpanderCode::phi_log_q2() const { return r_ * Rational(static_cast<Rational::int_type>(graph_->delta())); }

OuterWord ExpanderCode::psi(std::span<const Fe> c) const {
  if (!is_codeword(c)) throw Error(Errc::NotACodeword, "psi applied to a word outside C");
  OuterWord out;
  out.reserve(graph_->n());
  for (std::size_t u = 0; u < graph_->n(); ++u) out.push_back(left_codes_[u].extract(block(c, graph_->left_edges(u))));
  return out;
}

Word ExpanderCode::psi_inv(const OuterWord& w) const {
  if (w.size() != graph_->n()) throw Error(Errc::NotACodeword, "outer word has wrong number of symbols");
  Word c(length(), tower_->field().zero());
  for (std::size_t u = 0; u < graph_->n(); ++u) {
    const auto& code = left_codes_[u];
    if (w[u].size() != code.k()) throw Error(Errc::NotACodeword, "outer symbol has wrong number of slots");
    for (std::size_t j = 0; j < code.k(); ++j) {
      if (code.is_f1_slot(j) && !tower_->in_subfield(w[u][j])) {
        throw Error(Errc::NotACodeword, "outer symbol slot outside its alphabet");
      }
    }
    Word blk = code.encode(w[u]);
    auto edges = graph_->left_edges(u);
    for (std::size_t s = 0; s < edges.size(); ++s) c[edges[s]] = blk[s];
  }
  for (std::size_t v = 0; v < graph_->n(); ++v) {
    if (!satisfies_right(v, c)) throw Error(Errc::NotACodeword, "outer word violates a right constraint");
  }
  return c;
}

nlohmann::json ExpanderCode::manifest() const {
  const std::size_t m = tower_->m();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& word : basis_) {
    std::vector<unsigned> coords;
    coords.reserve(word.size() * m);
    for (Fe x : word) {
      for (Fe c : tower_->coordinates(x)) coords.push_back(c.value);
    }
    basis.push_back(coords);
  }
  nlohmann::json left = nlohmann::json::array();
  nlohmann::json right = nlohmann::json::array();
  for (const auto& c : left_codes_) left.push_back(c.spec());
  for (const auto& c : right_codes_) right.push_back(c.spec());
  return {
      {"format", "mixmds-instance"},
      {"version", 1},
      {"tower", tower_->describe()},
      {"graph", graph_->to_json()},
      {"assignment", assignment_.to_json(seed_)},
      {"r", r_.str()},
      {"R", R_.str()},
      {"p", p().str()},
      {"left_codes", left},
      {"right_codes", right},
      {"dimension_f1", dimension()},
      {"basis_layout", "row i is basis word i; column e*m + l is coordinate l of edge e over {1, g, ..., g^(m-1)}"},
      {"basis", basis},
  };
}

ExpanderCode ExpanderCode::from_manifest(const nlohmann::json& j) {
  try {
    const auto& t = j.at("tower");
    auto tower = std::make_shared<const FieldTower>(FieldTower::build(t.at("q1").get<unsigned>(), t.at("q2").get<unsigned>()));
    auto graph = std::make_shared<const BipartiteGraph>(BipartiteGraph::from_json(j.at("graph")));
    auto lab = EdgeLabeling::from_json(graph, j.at("assignment"));
    std::uint64_t seed = j.at("assignment").at("seed").get<std::uint64_t>();
    ExpanderCode code(graph, tower, Rational::parse(j.at("r").get<std::string>()),
                      Rational::parse(j.at("R").get<std::string>()), std::move(lab), seed);
    if (j.contains("basis") && code.manifest().at("basis") != j.at("basis")) {
      throw Error(Errc::ParseError, "stored basis does not match the rebuilt instance");
    }
    return code;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, std::string("malformed instance manifest: ") + ex.what());
  }
}

void for_each_codeword(const ExpanderCode& code, const std::function<void(const Word&)>& visit, std::uint64_t limit) {
  const Field& f = code.tower().field();
  const auto f1 = code.tower().subfield_elements();
  const std::size_t dim = code.dimension();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > limit / f1.size()) throw Error(Errc::TooLarge, "code too large to enumerate");
    total *= f1.size();
  }
  std::vector<Word> partial(dim + 1, Word(code.length(), f.zero()));
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == dim) {
      visit(partial[depth]);
      return;
    }
    for (Fe s : f1) {
      for (std::size_t e = 0; e < code.length(); ++e) {
        partial[depth + 1][e] = f.add(partial[depth][e], f.mul(s, code.basis()[depth][e]));
      }
      rec(depth + 1);
    }
  };
  rec(0);
}

OuterDistance min_outer_distance_bruteforce(const ExpanderCode& code, std::uint64_t limit) {
  OuterDistance out;
  const auto& g = code.graph();
  std::size_t best = g.n() + 1;
  for_each_codeword(
      code,
      [&](const Word& c) {
        ++out.codewords;
        std::size_t blocks = 0;
        for (std::size_t u = 0; u < g.n(); ++u) {
          if (!is_zero(code.block(c, g.left_edges(u)))) ++blocks;
        }
        if (blocks > 0) best = std::min(best, blocks);
      },
      limit);
  if (best <= g.n()) {
    out.distance = best;
    out.relative = Rational(static_cast<Rational::int_type>(best), static_cast<Rational::int_type>(g.n()));
  }
  return out;
}

}  // namespace mixmds
