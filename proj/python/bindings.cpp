#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mixmds/assignment.hpp"
#include "mixmds/decode.hpp"
#include "mixmds/error.hpp"
#include "mixmds/expander.hpp"
#include "mixmds/graph.hpp"
#include "mixmds/mds.hpp"
#include "mixmds/report.hpp"
#include "mixmds/tradeoff.hpp"

namespace py = pybind11;
using namespace mixmds;

namespace {

// Accepts int, str ("3/4", "0.75") or fractions.Fraction.
Rational to_rational(const py::handle& obj) { return Rational::parse(py::str(obj).cast<std::string>()); }

std::vector<Rational> to_rationals(const py::iterable& items) {
  std::vector<Rational> out;
  for (auto item : items) out.push_back(to_rational(item));
  return out;
}

py::object fraction(const Rational& x) { return py::module_::import("fractions").attr("Fraction")(x.num(), x.den()); }

py::object pyjson(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json cjson(const py::handle& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Word to_word(const std::vector<unsigned>& values) {
  Word w;
  w.reserve(values.size());
  for (unsigned v : values) w.push_back(Fe{static_cast<std::uint16_t>(v)});
  return w;
}

std::vector<unsigned> from_word(const Word& w) {
  std::vector<unsigned> out;
  out.reserve(w.size());
  for (Fe x : w) out.push_back(x.value);
  return out;
}

struct PyTower {
  TowerPtr ptr;
};

struct PyGraph {
  GraphPtr ptr;
};

EdgeLabeling labeling(const PyGraph& g, const py::handle& p, const py::handle& pbar, const std::string& bits) {
  std::vector<std::uint8_t> b;
  for (char c : bits) b.push_back(c == '1');
  return EdgeLabeling(g.ptr, to_rational(p), to_rational(pbar), std::move(b));
}

std::string bit_string(const EdgeLabeling& lab) {
  std::string s;
  for (auto b : lab.bits()) s.push_back(b ? '1' : '0');
  return s;
}

py::dict rate_dict(const RateReport& r) {
  py::dict d;
  d["rate_c"] = fraction(r.rate_c);
  d["rate_c_bound"] = fraction(r.rate_c_bound);
  d["outer_rate"] = fraction(r.outer_rate);
  d["outer_rate_bound"] = fraction(r.outer_rate_bound);
  d["left_rate_q2"] = fraction(r.left_rate_q2);
  return d;
}

}  // namespace

PYBIND11_MODULE(_mixmds, m) {
  m.doc() = "Mixed-alphabet MDS expander codes";

  static py::exception<Error> error(m, "MixmdsError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(e.name()) + ": " + e.what()).c_str());
    }
  });

  py::class_<PyTower>(m, "Tower")
      .def(py::init([](unsigned q1, unsigned q2) {
             return PyTower{std::make_shared<const FieldTower>(build_tower(q1, q2))};
           }),
           py::arg("q1"), py::arg("q2"))
      .def_property_readonly("q1", [](const PyTower& t) { return t.ptr->q1(); })
      .def_property_readonly("q2", [](const PyTower& t) { return t.ptr->q2(); })
      .def_property_readonly("m", [](const PyTower& t) { return t.ptr->m(); })
      .def_property_readonly("alpha", [](const PyTower& t) { return fraction(t.ptr->alpha()); })
      .def("in_subfield", [](const PyTower& t, unsigned x) { return t.ptr->in_subfield(Fe{static_cast<std::uint16_t>(x)}); })
      .def("subfield_elements", [](const PyTower& t) {
        return from_word(Word(t.ptr->subfield_elements().begin(), t.ptr->subfield_elements().end()));
      })
      .def("add", [](const PyTower& t, unsigned a, unsigned b) {
        return t.ptr->field().add(Fe{static_cast<std::uint16_t>(a)}, Fe{static_cast<std::uint16_t>(b)}).value;
      })
      .def("mul", [](const PyTower& t, unsigned a, unsigned b) {
        return t.ptr->field().mul(Fe{static_cast<std::uint16_t>(a)}, Fe{static_cast<std::uint16_t>(b)}).value;
      })
      .def("inv", [](const PyTower& t, unsigned a) { return t.ptr->field().inv(Fe{static_cast<std::uint16_t>(a)}).value; })
      .def("describe", [](const PyTower& t) { return pyjson(t.ptr->describe()); });

  py::class_<RsCode>(m, "RsCode")
      .def(py::init([](const PyTower& t, std::size_t n, std::size_t k) { return make_rs(t.ptr, n, k); }),
           py::arg("tower"), py::arg("n"), py::arg("k"))
      .def_property_readonly("n", &RsCode::n)
      .def_property_readonly("k", &RsCode::k)
      .def_property_readonly("d", &RsCode::d)
      .def("encode", [](const RsCode& c, const std::vector<unsigned>& coeffs) { return from_word(c.encode(to_word(coeffs))); })
      .def("contains", [](const RsCode& c, const std::vector<unsigned>& w) { return c.contains(to_word(w)); })
      .def(
          "decode",
          [](const RsCode& c, const std::vector<unsigned>& rw, const std::vector<std::size_t>& erasures)
              -> std::optional<std::vector<unsigned>> {
            auto out = c.decode_ee(to_word(rw), erasures);
            if (!out) return std::nullopt;
            return from_word(*out);
          },
          py::arg("received"), py::arg("erasures") = std::vector<std::size_t>{})
      .def(
          "min_distance", [](const RsCode& c, std::uint64_t limit) { return min_distance_bruteforce(c, limit); },
          py::arg("limit") = kEnumerationLimit);

  py::class_<MixedMdsCode>(m, "MixedMdsCode")
      .def(py::init([](const RsCode& parent, std::vector<std::size_t> info, std::vector<std::size_t> f1) {
             return make_mixed(parent, std::move(info), std::move(f1));
           }),
           py::arg("parent"), py::arg("info_support"), py::arg("f1_positions"))
      .def_property_readonly("n", &MixedMdsCode::n)
      .def_property_readonly("k", &MixedMdsCode::k)
      .def_property_readonly("d", &MixedMdsCode::d)
      .def_property_readonly("info_support", &MixedMdsCode::info_support)
      .def_property_readonly("f1_positions", &MixedMdsCode::f1_positions)
      .def("cardinality", &MixedMdsCode::cardinality)
      .def("log_q2_size", [](const MixedMdsCode& c) { return fraction(c.log_q2_size()); })
      .def("rate_q2", [](const MixedMdsCode& c) { return fraction(c.rate_q2()); })
      .def("encode", [](const MixedMdsCode& c, const std::vector<unsigned>& msg) { return from_word(c.encode(to_word(msg))); })
      .def("extract", [](const MixedMdsCode& c, const std::vector<unsigned>& w) { return from_word(c.extract(to_word(w))); })
      .def("contains", [](const MixedMdsCode& c, const std::vector<unsigned>& w) { return c.contains(to_word(w)); })
      .def(
          "decode",
          [](const MixedMdsCode& c, const std::vector<unsigned>& rw, const std::vector<std::size_t>& erasures)
              -> std::optional<std::vector<unsigned>> {
            auto out = c.decode_ee(to_word(rw), erasures);
            if (!out) return std::nullopt;
            return from_word(*out);
          },
          py::arg("received"), py::arg("erasures") = std::vector<std::size_t>{})
      .def(
          "min_distance", [](const MixedMdsCode& c, std::uint64_t limit) { return min_distance_bruteforce(c, limit); },
          py::arg("limit") = kEnumerationLimit)
      .def("spec", [](const MixedMdsCode& c) { return pyjson(c.spec()); });

  py::class_<PyGraph>(m, "Graph")
      .def(py::init([](const std::string& kind, std::size_t n, std::size_t delta, std::uint64_t seed) {
             return PyGraph{std::make_shared<const BipartiteGraph>(build_graph(parse_graph_kind(kind), n, delta, seed))};
           }),
           py::arg("kind"), py::arg("n"), py::arg("delta"), py::arg("seed") = 0)
      .def_static("from_json", [](const py::object& j) {
        return PyGraph{std::make_shared<const BipartiteGraph>(BipartiteGraph::from_json(cjson(j)))};
      })
      .def_property_readonly("n", [](const PyGraph& g) { return g.ptr->n(); })
      .def_property_readonly("delta", [](const PyGraph& g) { return g.ptr->delta(); })
      .def("adjacency", [](const PyGraph& g) { return g.ptr->adjacency(); })
      .def("is_connected", [](const PyGraph& g) { return g.ptr->is_connected(); })
      .def("spectrum", [](const PyGraph& g) { return adjacency_spectrum(*g.ptr); })
      .def("gamma", [](const PyGraph& g) {
        SpectralInfo s = gamma(*g.ptr);
        py::dict d;
        d["lambda1"] = s.lambda1;
        d["lambda2"] = s.lambda2;
        d["gamma"] = s.gamma;
        d["ramanujan"] = is_ramanujan(*g.ptr);
        return d;
      })
      .def("to_json", [](const PyGraph& g) { return pyjson(g.ptr->to_json()); });

  m.def(
      "balance",
      [](const PyGraph& g, const py::object& p, const py::object& pbar, std::uint64_t seed) {
        auto res = balance(init_left_exact(g.ptr, to_rational(p), to_rational(pbar), seed), BalanceOptions{true});
        py::dict d;
        d["bits"] = bit_string(res.labeling);
        d["good"] = verify_good(res.labeling).good;
        d["reversals"] = res.trace.reversals;
        d["initial_excess"] = res.trace.initial_excess;
        d["phases_max"] = res.trace.phases_max;
        d["left_weight_violations"] = res.trace.left_weight_violations;
        return d;
      },
      py::arg("graph"), py::arg("p"), py::arg("pbar"), py::arg("seed"),
      "Balances a seeded left-exact labeling with auditing enabled.");
  m.def(
      "verify_good",
      [](const PyGraph& g, const py::object& p, const py::object& pbar, const std::string& bits) {
        return verify_good(labeling(g, p, pbar, bits)).good;
      },
      py::arg("graph"), py::arg("p"), py::arg("pbar"), py::arg("bits"));

  py::class_<ExpanderCode>(m, "ExpanderCode")
      .def(py::init([](const PyGraph& g, const PyTower& t, const py::object& r, const py::object& R,
                       const py::object& p, std::uint64_t seed) {
             return ExpanderCode::assemble(g.ptr, t.ptr,
                                           ExpanderParams{to_rational(r), to_rational(R), to_rational(p), seed});
           }),
           py::arg("graph"), py::arg("tower"), py::arg("r"), py::arg("R"), py::arg("p"), py::arg("seed"))
      .def_static("from_manifest", [](const py::object& j) { return ExpanderCode::from_manifest(cjson(j)); })
      .def_property_readonly("length", &ExpanderCode::length)
      .def_property_readonly("dimension", &ExpanderCode::dimension)
      .def("basis", [](const ExpanderCode& c) {
        std::vector<std::vector<unsigned>> out;
        for (const auto& w : c.basis()) out.push_back(from_word(w));
        return out;
      })
      .def("is_f1_edge", &ExpanderCode::is_f1_edge)
      .def("is_codeword", [](const ExpanderCode& c, const std::vector<unsigned>& w) { return c.is_codeword(to_word(w)); })
      .def("rate", [](const ExpanderCode& c) { return rate_dict(c.rate()); })
      .def(
          "min_outer_distance",
          [](const ExpanderCode& c, std::uint64_t limit) {
            OuterDistance od = min_outer_distance_bruteforce(c, limit);
            py::dict d;
            d["distance"] = od.distance ? py::cast(*od.distance) : py::none();
            d["relative"] = od.relative ? fraction(*od.relative) : py::none();
            d["codewords"] = od.codewords;
            return d;
          },
          py::arg("limit") = kEnumerationLimit)
      .def(
          "monte_carlo",
          [](const ExpanderCode& c, const std::vector<std::size_t>& t, const std::vector<std::size_t>& rho,
             std::size_t trials, std::uint64_t seed, std::optional<std::size_t> max_rounds) {
            auto cells = monte_carlo_curve(c, t, rho, trials, seed,
                                           max_rounds.value_or(default_max_rounds(c.graph().n())));
            py::list out;
            for (const auto& cell : cells) {
              py::dict d;
              d["t"] = cell.t;
              d["rho"] = cell.rho;
              d["trials"] = cell.trials;
              d["successes"] = cell.successes;
              d["rate"] = cell.rate;
              out.append(d);
            }
            return out;
          },
          py::arg("t"), py::arg("rho"), py::arg("trials"), py::arg("seed"), py::arg("max_rounds") = py::none())
      .def(
          "decode",
          [](const ExpanderCode& c, const std::vector<unsigned>& symbols, const std::vector<std::size_t>& erasures,
             std::optional<std::size_t> max_rounds) {
            ReceivedWord rw{to_word(symbols), std::vector<std::uint8_t>(symbols.size(), 0)};
            for (std::size_t i : erasures) rw.erased.at(i) = 1;
            auto res = iter_decode(c, rw, max_rounds.value_or(default_max_rounds(c.graph().n())));
            py::dict d;
            d["outcome"] = std::string(outcome_name(res.report.outcome));
            d["codeword"] = res.codeword ? py::cast(from_word(*res.codeword)) : py::none();
            d["rounds_used"] = res.report.rounds_used;
            d["changed_per_round"] = res.report.changed_per_round;
            return d;
          },
          py::arg("received"), py::arg("erasures") = std::vector<std::size_t>{}, py::arg("max_rounds") = py::none())
      .def("manifest", [](const ExpanderCode& c) { return pyjson(c.manifest()); });

  m.def(
      "rate_bound_eq5",
      [](const py::object& R, const py::object& r, const py::object& p, const py::object& alpha) {
        return fraction(rate_bound_eq5(to_rational(R), to_rational(r), to_rational(p), to_rational(alpha)));
      },
      py::arg("R"), py::arg("r"), py::arg("p"), py::arg("alpha"));
  m.def(
      "dist_bound_eq6",
      [](double delta, double theta, double gamma) {
        DistanceBound b = dist_bound_eq6(delta, theta, gamma);
        return py::make_tuple(b.value, b.vacuous);
      },
      py::arg("delta"), py::arg("theta"), py::arg("gamma"), "Returns (value, vacuous).");
  m.def("ramanujan_gamma", &ramanujan_gamma, py::arg("delta"));
  m.def(
      "sweep2",
      [](const py::iterable& eps, const py::iterable& R, const py::iterable& alpha, const py::object& c_q) {
        Grid2 g{to_rationals(eps), to_rationals(R), to_rationals(alpha), to_rational(c_q)};
        return pyjson(to_json(table_sec2(sweep(g))));
      },
      py::arg("eps"), py::arg("R"), py::arg("alpha") = std::vector<std::string>{"1/2"}, py::arg("c_q") = 1);
  m.def(
      "sweep3",
      [](const py::iterable& eps, const py::iterable& R, const py::iterable& p, const py::iterable& alpha,
         const py::iterable& r0, const py::iterable& r_m, const py::object& kappa, const py::object& delta1) {
        Grid3 g{to_rationals(eps), to_rationals(R),  to_rationals(p),   to_rationals(alpha),
                to_rationals(r0),  to_rationals(r_m), to_rational(kappa), to_rational(delta1)};
        return pyjson(to_json(table_sec3(sweep(g))));
      },
      py::arg("eps"), py::arg("R"), py::arg("p"), py::arg("alpha"), py::arg("r0"), py::arg("r_m"),
      py::arg("kappa") = "1/4", py::arg("delta1") = 1000);
  m.def(
      "compare_sec2e",
      [](const py::object& eps, const py::object& R, std::uint64_t Delta, std::uint64_t q2) {
        Comparison2 c = compare_sec2e(to_rational(eps), to_rational(R), Delta, q2);
        py::dict d;
        d["rate_margin_ok"] = c.rate_margin_ok;
        d["original_rate_bound"] = fraction(c.original_rate_bound);
        d["rate_loss"] = fraction(c.rate_loss);
        d["rate_loss_closed"] = fraction(c.rate_loss_closed);
        d["loss_cap"] = fraction(c.loss_cap);
        d["alphabet_ratio"] = static_cast<double>(c.alphabet_ratio);
        d["log10_complement"] = c.log10_complement;
        return d;
      },
      py::arg("eps"), py::arg("R"), py::arg("Delta"), py::arg("q2"));
}
