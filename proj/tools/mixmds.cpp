// mixmds: command-line front end for the mixed-alphabet expander code library.
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mixmds/assignment.hpp"
#include "mixmds/decode.hpp"
#include "mixmds/error.hpp"
#include "mixmds/expander.hpp"
#include "mixmds/galois.hpp"
#include "mixmds/graph.hpp"
#include "mixmds/rational.hpp"
#include "mixmds/report.hpp"
#include "mixmds/rng.hpp"
#include "mixmds/tradeoff.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mixmds;

namespace {

constexpr int kExitModule = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw ConfigError("--" + name + ": not a rational number: '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Rational> rational_list(const std::string& name, const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(rational_flag(name, item));
  return out;
}

std::vector<std::size_t> count_list(const std::string& name, const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || item[0] == '-') throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("--" + name + ": not a non-negative integer: '" + item + "'");
    }
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json rational_json(const Rational& x) { return json{{"exact", x.str()}, {"value", x.to_double()}}; }

/// Everything a subcommand needs besides its own flags.
struct Session {
  // Replay: input contents come from the manifest instead of the file system.
  const json* embedded_inputs = nullptr;
  std::map<std::string, std::string> inputs;

  std::string input(const std::string& flag, const std::string& path) {
    std::string content;
    if (embedded_inputs) {
      if (!embedded_inputs->contains(flag)) throw Error(Errc::ParseError, "manifest lacks input '" + flag + "'");
      content = embedded_inputs->at(flag).get<std::string>();
    } else {
      content = read_file(path);
    }
    inputs[flag] = content;
    return content;
  }

  json input_json(const std::string& flag, const std::string& path) {
    try {
      return json::parse(input(flag, path));
    } catch (const json::parse_error& ex) {
      throw Error(Errc::ParseError, "--" + flag + ": " + ex.what());
    }
  }
};

struct Artifact {
  std::string content;
  std::string extension;
};

/// Flags shared by every subcommand; all numeric flags stay strings until
/// validation so parse failures map to exit code 2.
struct Flags {
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;

  // Graph source.
  std::string graph_file;
  std::string kind = "complete";
  std::size_t n = 0;
  std::size_t delta = 0;

  // Assignment.
  std::string assignment_file;
  std::string p = "0";
  std::string pbar;

  // Code.
  std::string instance_file;
  unsigned q1 = 0;
  unsigned q2 = 0;
  std::string r;
  std::string R;
  std::uint64_t limit = kEnumerationLimit;

  // Decoding.
  std::string t_values = "0";
  std::string rho_values = "0";
  std::size_t t = 0;
  std::size_t rho = 0;
  std::size_t trials = 100;
  std::optional<std::size_t> max_rounds;

  // Trade-off grids.
  std::string eps;
  std::string R_grid;
  std::string alpha;
  std::string c_q = "1";
  std::string p_grid;
  std::string r0;
  std::string r_m;
  std::string kappa = "1/4";
  std::string delta1 = "1000";

  std::string manifest_file;
};

std::uint64_t require_seed(const Flags& f, const std::string& what) {
  if (!f.seed) throw ConfigError("--seed is required for " + what);
  return *f.seed;
}

ReportFormat format_of(const Flags& f) {
  try {
    return parse_report_format(f.format);
  } catch (const Error&) {
    throw ConfigError("--format must be csv or json");
  }
}

GraphKind kind_of(const Flags& f) {
  try {
    return parse_graph_kind(f.kind);
  } catch (const Error&) {
    throw ConfigError("--kind must be complete, cycle or random_regular");
  }
}

class Command {
 public:
  Command(Flags& flags, Session& session) : f_(flags), s_(session) {}

  GraphPtr graph() {
    if (!f_.graph_file.empty()) {
      return std::make_shared<const BipartiteGraph>(BipartiteGraph::from_json(s_.input_json("graph", f_.graph_file)));
    }
    const GraphKind kind = kind_of(f_);
    if (f_.n == 0 || f_.delta == 0) throw ConfigError("--n and --delta are required without --graph");
    std::uint64_t seed = kind == GraphKind::random_regular ? require_seed(f_, "random_regular graphs") : f_.seed.value_or(0);
    return std::make_shared<const BipartiteGraph>(build_graph(kind, f_.n, f_.delta, seed));
  }

  std::unique_ptr<ExpanderCode> instance() {
    if (!f_.instance_file.empty()) {
      return std::make_unique<ExpanderCode>(ExpanderCode::from_manifest(s_.input_json("instance", f_.instance_file)));
    }
    if (f_.q1 == 0 || f_.q2 == 0) throw ConfigError("--q1 and --q2 are required without --instance");
    if (f_.r.empty() || f_.R.empty()) throw ConfigError("--r and --R are required without --instance");
    ExpanderParams params{rational_flag("r", f_.r), rational_flag("R", f_.R), rational_flag("p", f_.p),
                          require_seed(f_, "code assembly")};
    auto g = graph();
    auto tower = std::make_shared<const FieldTower>(FieldTower::build(f_.q1, f_.q2));
    return std::make_unique<ExpanderCode>(ExpanderCode::assemble(g, tower, params));
  }

  Artifact graph_gen() {
    if (!f_.graph_file.empty()) throw ConfigError("graph gen does not take --graph");
    return {dump(graph()->to_json()), "json"};
  }

  Artifact graph_gamma() {
    auto g = graph();
    auto info = gamma(*g);
    json j{{"n", g->n()},
           {"delta", g->delta()},
           {"lambda1", info.lambda1},
           {"lambda2", info.lambda2},
           {"gamma", info.gamma},
           {"ramanujan", is_ramanujan(*g)},
           {"ramanujan_lambda2_cap", 2.0 * std::sqrt(static_cast<double>(g->delta()) - 1.0)}};
    return {dump(j), "json"};
  }

  Artifact assign_balance() {
    const std::uint64_t seed = require_seed(f_, "assign balance");
    const Rational p = rational_flag("p", f_.p);
    const Rational pbar = f_.pbar.empty() ? p : rational_flag("pbar", f_.pbar);
    auto g = graph();
    auto result = balance(init_left_exact(g, p, pbar, seed), BalanceOptions{true});
    const auto report = verify_good(result.labeling);
    json j = result.labeling.to_json(seed);
    j["trace"] = {{"initial_excess", result.trace.initial_excess},
                  {"reversals", result.trace.reversals},
                  {"phases_max", result.trace.phases_max},
                  {"left_weight_violations", result.trace.left_weight_violations},
                  {"good", report.good}};
    return {dump(j), "json"};
  }

  Artifact assign_verify() {
    if (f_.assignment_file.empty()) throw ConfigError("--assignment is required for assign verify");
    auto g = graph();
    auto lab = EdgeLabeling::from_json(g, s_.input_json("assignment", f_.assignment_file));
    const auto report = verify_good(lab);
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"side", v.side == Side::left ? "left" : "right"},
                            {"vertex", v.vertex},
                            {"weight", v.weight},
                            {"bound", v.bound}});
    }
    return {dump(json{{"good", report.good}, {"violations", violations}}), "json"};
  }

  Artifact code_build() { return {dump(instance()->manifest()), "json"}; }

  Artifact code_rate() {
    auto code = instance();
    const auto rr = code->rate();
    json j{{"dimension_f1", code->dimension()},
           {"rate_c", rational_json(rr.rate_c)},
           {"rate_c_bound", rational_json(rr.rate_c_bound)},
           {"outer_rate", rational_json(rr.outer_rate)},
           {"outer_rate_bound", rational_json(rr.outer_rate_bound)},
           {"left_rate_q2", rational_json(rr.left_rate_q2)},
           {"rate_c_meets_bound", rr.rate_c >= rr.rate_c_bound},
           {"outer_rate_meets_bound", rr.outer_rate >= rr.outer_rate_bound}};
    return {dump(j), "json"};
  }

  Artifact code_mindist() {
    auto code = instance();
    const auto od = min_outer_distance_bruteforce(*code, f_.limit);
    const Rational Delta(static_cast<Rational::int_type>(code->graph().delta()));
    const Rational delta_rel = (Delta - code->R() * Delta + Rational(1)) / Delta;
    const Rational theta = (Delta - code->r() * Delta + Rational(1)) / Delta;
    const double g = gamma(code->graph()).gamma;
    json j{{"codewords", od.codewords},
           {"delta", rational_json(delta_rel)},
           {"theta", rational_json(theta)},
           {"gamma", g}};
    j["distance"] = od.distance ? json(*od.distance) : json(nullptr);
    j["relative"] = od.relative ? rational_json(*od.relative) : json(nullptr);
    if (g < 1) {
      const auto bound = dist_bound_eq6(delta_rel.to_double(), theta.to_double(), g);
      j["dist_bound"] = bound.value;
      j["dist_bound_vacuous"] = bound.vacuous;
      if (od.relative) j["meets_bound"] = od.relative->to_double() >= bound.value - kRootTolerance;
    }
    return {dump(j), "json"};
  }

  Artifact decode_mc() {
    const std::uint64_t seed = require_seed(f_, "decode mc");
    const auto ts = count_list("t", f_.t_values);
    const auto rhos = count_list("rho", f_.rho_values);
    if (f_.trials == 0) throw ConfigError("--trials must be at least 1");
    const auto fmt = format_of(f_);
    auto code = instance();
    const std::size_t rounds = f_.max_rounds.value_or(default_max_rounds(code->graph().n()));
    const auto cells = monte_carlo_curve(*code, ts, rhos, f_.trials, seed, rounds);
    Table table;
    table.columns = {"t", "rho", "trials", "successes", "rate"};
    for (const auto& c : cells) {
      table.add_row({static_cast<std::int64_t>(c.t), static_cast<std::int64_t>(c.rho),
                     static_cast<std::int64_t>(c.trials), static_cast<std::int64_t>(c.successes), c.rate});
    }
    return {render(table, fmt), fmt == ReportFormat::csv ? "csv" : "json"};
  }

  Artifact decode_one() {
    const std::uint64_t seed = require_seed(f_, "decode one");
    auto code = instance();
    const std::size_t rounds = f_.max_rounds.value_or(default_max_rounds(code->graph().n()));
    Rng rng(derive_seed(seed, {0}));
    const Word truth = random_codeword(*code, rng);
    const auto rw = channel_apply(*code, truth, f_.t, f_.rho, derive_seed(seed, {1}));
    const auto result = iter_decode(*code, rw, rounds, &truth);
    json j{{"t", f_.t},
           {"rho", f_.rho},
           {"outcome", outcome_name(result.report.outcome)},
           {"rounds_used", result.report.rounds_used},
           {"changed_per_round", result.report.changed_per_round},
           {"recovered", result.codeword && *result.codeword == truth}};
    return {dump(j), "json"};
  }

  Artifact tradeoff_sweep2() {
    Grid2 grid{rational_list("eps", f_.eps), rational_list("R", f_.R_grid), rational_list("alpha", f_.alpha),
               rational_flag("cq", f_.c_q)};
    const auto fmt = format_of(f_);
    if (grid.alpha.empty()) grid.alpha.push_back(Rational(1, 2));
    return {render(table_sec2(sweep(grid)), fmt), fmt == ReportFormat::csv ? "csv" : "json"};
  }

  Artifact tradeoff_sweep3() {
    Grid3 grid{rational_list("eps", f_.eps),  rational_list("R", f_.R_grid),      rational_list("p", f_.p_grid),
               rational_list("alpha", f_.alpha), rational_list("r0", f_.r0),    rational_list("rm", f_.r_m),
               rational_flag("kappa", f_.kappa), rational_flag("delta1", f_.delta1)};
    const auto fmt = format_of(f_);
    if (grid.alpha.empty()) grid.alpha.push_back(Rational(1, 2));
    return {render(table_sec3(sweep(grid)), fmt), fmt == ReportFormat::csv ? "csv" : "json"};
  }

 private:
  Flags& f_;
  Session& s_;
};

void print_error(std::string_view kind, std::string_view message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

fs::path default_out(const std::string& stem, const std::string& ext) {
  const char* dir = std::getenv("MIXMDS_OUT_DIR");
  fs::path base = dir && *dir ? fs::path(dir) : fs::current_path();
  return base / (stem + "." + ext);
}

struct Outcome {
  int status = 0;
  fs::path artifact;
  std::string digest;
};

/// Parses and runs one command line. `embedded` and `out_override` are set
/// by replay.
Outcome run(std::vector<std::string> args, const json* embedded, const std::optional<fs::path>& out_override);

Outcome run_replay(const std::string& manifest_path, const std::string& out) {
  json m;
  try {
    m = json::parse(read_file(manifest_path));
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, std::string("malformed run manifest: ") + ex.what());
  }
  std::vector<std::string> args;
  json inputs;
  std::string original_digest;
  fs::path original_path;
  try {
    args = m.at("args").get<std::vector<std::string>>();
    inputs = m.at("inputs");
    original_digest = m.at("artifact").at("fnv1a64").get<std::string>();
    original_path = m.at("artifact").at("path").get<std::string>();
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, std::string("malformed run manifest: ") + ex.what());
  }
  if (!args.empty() && args.front() == "replay") throw Error(Errc::ParseError, "a replay manifest cannot be replayed");
  fs::path target = out.empty() ? fs::path(original_path.string() + ".replay") : fs::path(out);
  Outcome o = run(args, &inputs, target);
  if (o.status != 0) return o;
  const bool identical = o.digest == original_digest;
  std::cout << json{{"artifact", o.artifact.string()}, {"fnv1a64", o.digest}, {"identical", identical}}.dump() << "\n";
  if (!identical) o.status = kExitModule;
  return o;
}

Outcome run(std::vector<std::string> args, const json* embedded, const std::optional<fs::path>& out_override) {
  Flags f;
  Session session;
  session.embedded_inputs = embedded;

  CLI::App app{"Mixed-alphabet nearly-MDS expander codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MIXMDS_VERSION);

  auto out_opts = [&](CLI::App* c) {
    c->add_option("--out", f.out, "Artifact path (default: $MIXMDS_OUT_DIR or cwd)");
    c->add_option("--seed", f.seed, "Seed for every random choice");
  };
  auto graph_opts = [&](CLI::App* c) {
    c->add_option("--graph", f.graph_file, "Graph file");
    c->add_option("--kind", f.kind, "complete | cycle | random_regular");
    c->add_option("--n", f.n, "Vertices per side");
    c->add_option("--delta", f.delta, "Degree");
  };
  auto code_opts = [&](CLI::App* c) {
    graph_opts(c);
    c->add_option("--instance", f.instance_file, "Instance manifest from `code build`");
    c->add_option("--q1", f.q1, "Subfield size");
    c->add_option("--q2", f.q2, "Field size");
    c->add_option("--r", f.r, "Left constituent rate");
    c->add_option("--R", f.R, "Right constituent rate");
    c->add_option("--p", f.p, "Fraction of F1 coordinates per left block");
  };

  std::string chosen;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help) {
    auto* c = group->add_subcommand(name, help);
    c->callback([&chosen, group, name] { chosen = group->get_name() + " " + name; });
    out_opts(c);
    return c;
  };

  auto* graph = app.add_subcommand("graph", "Bipartite graphs")->require_subcommand(1);
  graph_opts(leaf(graph, "gen", "Generate a graph"));
  graph_opts(leaf(graph, "gamma", "Spectral ratio and Ramanujan test"));

  auto* assign = app.add_subcommand("assign", "Good assignment schemes")->require_subcommand(1);
  {
    auto* c = leaf(assign, "balance", "Balance a random left-exact labeling");
    graph_opts(c);
    c->add_option("--p", f.p, "Left weight fraction");
    c->add_option("--pbar", f.pbar, "Right weight cap fraction (default p)");
    c = leaf(assign, "verify", "Check a labeling");
    graph_opts(c);
    c->add_option("--assignment", f.assignment_file, "Assignment file");
  }

  auto* code = app.add_subcommand("code", "Expander code instances")->require_subcommand(1);
  code_opts(leaf(code, "build", "Assemble an instance"));
  code_opts(leaf(code, "rate", "Exact rates and bounds"));
  {
    auto* c = leaf(code, "mindist", "Brute-force outer distance");
    code_opts(c);
    c->add_option("--limit", f.limit, "Enumeration limit");
  }

  auto* decode = app.add_subcommand("decode", "Iterative decoding")->require_subcommand(1);
  {
    auto* c = leaf(decode, "mc", "Monte-Carlo success curve");
    code_opts(c);
    c->add_option("--t", f.t_values, "Comma-separated error counts");
    c->add_option("--rho", f.rho_values, "Comma-separated erasure counts");
    c->add_option("--trials", f.trials, "Trials per cell");
    c->add_option("--max-rounds", f.max_rounds, "Round limit");
    c->add_option("--format", f.format, "csv | json");
    c = leaf(decode, "one", "Decode one seeded corrupted codeword");
    code_opts(c);
    c->add_option("--t", f.t, "Errors");
    c->add_option("--rho", f.rho, "Erasures");
    c->add_option("--max-rounds", f.max_rounds, "Round limit");
  }

  auto* tradeoff = app.add_subcommand("tradeoff", "Closed-form trade-offs")->require_subcommand(1);
  {
    auto* c = leaf(tradeoff, "sweep2", "Decodable design points");
    c->add_option("--eps", f.eps, "Comma-separated eps values")->required();
    c->add_option("--R", f.R_grid, "Comma-separated R values")->required();
    c->add_option("--alpha", f.alpha, "Comma-separated alpha values (default 1/2)");
    c->add_option("--cq", f.c_q, "q2 > cq * Delta");
    c->add_option("--format", f.format, "csv | json");
    c = leaf(tradeoff, "sweep3", "Encodable construction");
    c->add_option("--eps", f.eps, "Comma-separated eps values")->required();
    c->add_option("--R", f.R_grid, "Comma-separated R values")->required();
    c->add_option("--p", f.p_grid, "Comma-separated p values")->required();
    c->add_option("--alpha", f.alpha, "Comma-separated alpha values (default 1/2)");
    c->add_option("--r0", f.r0, "Comma-separated r0 values")->required();
    c->add_option("--rm", f.r_m, "Comma-separated r_m values")->required();
    c->add_option("--kappa", f.kappa, "kappa (non-normative default 1/4)");
    c->add_option("--delta1", f.delta1, "Delta1");
    c->add_option("--format", f.format, "csv | json");
  }

  auto* replay = app.add_subcommand("replay", "Regenerate an artifact from its run manifest");
  replay->add_option("--manifest", f.manifest_file, "Run manifest")->required();
  replay->add_option("--out", f.out, "Where to write the regenerated artifact");
  replay->callback([&chosen] { chosen = "replay"; });

  Outcome outcome;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    outcome.status = app.exit(e);
    return outcome;
  } catch (const CLI::CallForAllHelp& e) {
    outcome.status = app.exit(e);
    return outcome;
  } catch (const CLI::CallForVersion& e) {
    outcome.status = app.exit(e);
    return outcome;
  } catch (const CLI::ParseError& e) {
    print_error("ConfigError", e.what());
    outcome.status = kExitConfig;
    return outcome;
  }

  try {
    if (chosen == "replay") return run_replay(f.manifest_file, f.out);

    Command cmd(f, session);
    Artifact artifact;
    if (chosen == "graph gen") artifact = cmd.graph_gen();
    else if (chosen == "graph gamma") artifact = cmd.graph_gamma();
    else if (chosen == "assign balance") artifact = cmd.assign_balance();
    else if (chosen == "assign verify") artifact = cmd.assign_verify();
    else if (chosen == "code build") artifact = cmd.code_build();
    else if (chosen == "code rate") artifact = cmd.code_rate();
    else if (chosen == "code mindist") artifact = cmd.code_mindist();
    else if (chosen == "decode mc") artifact = cmd.decode_mc();
    else if (chosen == "decode one") artifact = cmd.decode_one();
    else if (chosen == "tradeoff sweep2") artifact = cmd.tradeoff_sweep2();
    else if (chosen == "tradeoff sweep3") artifact = cmd.tradeoff_sweep3();
    else throw ConfigError("unknown subcommand");

    std::string stem = chosen;
    std::replace(stem.begin(), stem.end(), ' ', '-');
    fs::path path = out_override ? *out_override
                    : f.out.empty() ? default_out(stem, artifact.extension)
                                    : fs::path(f.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());

    outcome.artifact = path;
    outcome.digest = fnv1a64(artifact.content);
    json manifest{{"tool", "mixmds"},
                  {"version", MIXMDS_VERSION},
                  {"command", chosen},
                  {"args", args},
                  {"seed", f.seed ? json(*f.seed) : json(nullptr)},
                  {"rng", "mt19937_64"},
                  {"inputs", session.inputs},
                  {"artifact", {{"path", path.string()}, {"fnv1a64", outcome.digest}}}};
    write_file(path, artifact.content);
    write_file(path.string() + ".manifest.json", dump(manifest));
    return outcome;
  } catch (const ConfigError& e) {
    print_error("ConfigError", e.what());
    outcome.status = kExitConfig;
  } catch (const Error& e) {
    print_error(e.name(), e.what());
    outcome.status = kExitModule;
  } catch (const fs::filesystem_error& e) {
    print_error("IoFailure", e.what());
    outcome.status = kExitModule;
  }
  return outcome;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, nullptr, std::nullopt).status;
}
