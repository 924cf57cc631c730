#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mgt/audit.hpp"
#include "mgt/decode2.hpp"
#include "mgt/decode3.hpp"
#include "mgt/design.hpp"
#include "mgt/harness.hpp"
#include "mgt/io.hpp"
#include "mgt/rates.hpp"

namespace py = pybind11;
using namespace mgt;

namespace {

DesignParams make_params(std::int64_t t, int s, std::optional<int> n, std::optional<double> p,
                         std::optional<int> l1, std::uint64_t seed) {
  ParamOverrides ov;
  ov.seed = seed;
  ov.num_tests = n;
  ov.sparsity_threshold = l1;
  if (p) ov.column_rate = Rational{static_cast<std::int64_t>(std::llround(*p * 1e12)), 1'000'000'000'000LL};
  return compute_params(t, s, ov);
}

py::dict decode_dict(const DecodeResult& res) {
  py::dict out;
  if (res.ok()) {
    py::list vs;
    for (std::int32_t v : res.recovered->vertices()) vs.append(v);
    out["recovered"] = vs;
  } else {
    out["failure"] = to_string(*res.failure);
  }
  out["stages"] = res.transcript.stage_count();
  out["total_tests"] = res.transcript.total_tests();
  py::list per_stage;
  for (int i = 0; i < res.transcript.stage_count(); ++i) per_stage.append(res.transcript.tests_in_stage(i));
  out["tests_per_stage"] = per_stage;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multistage group-testing designs, decoders and audits";

  py::register_exception<InvalidParamsError>(m, "InvalidParams", PyExc_ValueError);
  py::register_exception<ProtocolViolation>(m, "ProtocolViolation", PyExc_RuntimeError);

  py::class_<DesignParams>(m, "DesignParams")
      .def_readonly("t", &DesignParams::num_items)
      .def_readonly("s", &DesignParams::num_defectives)
      .def_readonly("N", &DesignParams::num_tests)
      .def_readonly("k", &DesignParams::column_weight)
      .def_readonly("sparsity_threshold", &DesignParams::sparsity_threshold)
      .def_readonly("sibling_threshold", &DesignParams::sibling_threshold)
      .def_readonly("seed", &DesignParams::seed)
      .def_property_readonly("p", [](const DesignParams& p) { return p.column_rate.value(); })
      .def("__repr__", [](const DesignParams& p) {
        std::ostringstream os;
        os << "DesignParams(t=" << p.num_items << ", s=" << p.num_defectives << ", N=" << p.num_tests
           << ", k=" << p.column_weight << ", seed=" << p.seed << ")";
        return os.str();
      });

  py::class_<PoolMatrix>(m, "PoolMatrix")
      .def_property_readonly("params", &PoolMatrix::params)
      .def_property_readonly("t", &PoolMatrix::num_items)
      .def_property_readonly("N", &PoolMatrix::num_tests)
      .def("row", [](const PoolMatrix& x, int i) { return x.row(i).to_string(); })
      .def("column", [](const PoolMatrix& x, std::int64_t j) { return x.column(j).to_string(); })
      .def("rows", [](const PoolMatrix& x) {
        py::list out;
        for (const BitVec& r : x.rows()) out.append(r.to_string());
        return out;
      });

  m.def("compute_params", &make_params, py::arg("t"), py::arg("s"), py::arg("N") = std::nullopt,
        py::arg("p") = std::nullopt, py::arg("l1") = std::nullopt, py::arg("seed") = 1);

  m.def("generate_matrix", [](const DesignParams& p) { return generate_matrix(p); });

  m.def(
      "design",
      [](std::int64_t t, int s, std::optional<int> n, std::optional<double> p, std::optional<int> l1,
         std::uint64_t seed) { return generate_matrix(make_params(t, s, n, p, l1, seed)); },
      py::arg("t"), py::arg("s"), py::arg("N") = std::nullopt, py::arg("p") = std::nullopt,
      py::arg("l1") = std::nullopt, py::arg("seed") = 1);

  m.def("outcome", [](const PoolMatrix& x, const std::vector<std::int32_t>& subset) {
    return outcome(x, subset).bits().to_string();
  });

  m.def("candidates", [](const PoolMatrix& x, int s, const std::vector<std::int32_t>& hidden) {
    const OutcomeVector y = outcome(x, hidden);
    const CandidateHypergraph h = candidates(x, s, y);
    py::list out;
    for (const Hyperedge& e : h.edges()) {
      py::list vs;
      for (std::int32_t v : e.vertices()) vs.append(v);
      out.append(vs);
    }
    return out;
  });

  m.def("decode", [](const PoolMatrix& x, const std::vector<std::int32_t>& hidden) {
    if (static_cast<int>(hidden.size()) != x.params().num_defectives)
      throw InvalidParamsError("hidden set size must equal the design's defective count");
    StagedOracle oracle = make_oracle(hidden, x.num_items());
    const DecodeResult res =
        x.params().num_defectives == 2 ? decode_s2(x, oracle) : decode_s3(x, oracle);
    return decode_dict(res);
  });

  m.def(
      "audit",
      [](const PoolMatrix& x, const std::string& scope) {
        const OutcomeScope sc = scope == "all" ? OutcomeScope::all() : OutcomeScope::reachable();
        const AuditReport rep = x.params().num_defectives == 2 ? audit_s2(x, sc) : audit_s3(x, sc);
        py::dict out;
        out["checked_outcomes"] = rep.checked_outcomes;
        out["passed"] = rep.passed();
        py::list vs;
        for (const auto& v : rep.violations) {
          py::dict d;
          d["property"] = v.property;
          d["detail"] = v.detail;
          vs.append(d);
        }
        out["violations"] = vs;
        return out;
      },
      py::arg("matrix"), py::arg("scope") = "reachable");

  m.def(
      "verify",
      [](std::int64_t t, int s, const std::string& mode, std::int64_t trials, std::uint64_t seed) {
        CampaignConfig cfg;
        cfg.mode = mode == "random" ? CampaignMode::Random : CampaignMode::Exhaustive;
        cfg.num_items = t;
        cfg.num_defectives = s;
        cfg.trials = trials;
        cfg.seed = seed;
        const CampaignReport rep = run_campaign(cfg);
        py::dict out;
        out["t"] = rep.num_items;
        out["s"] = rep.num_defectives;
        out["seed"] = rep.seed_used;
        out["N"] = rep.num_tests;
        out["runs"] = rep.runs;
        out["failures"] = rep.failure_total();
        out["max_tests"] = rep.max_tests;
        out["mean_tests"] = rep.mean_tests;
        out["ratio"] = rep.ratio;
        out["csv"] = io::campaign_csv_header() + "\n" + io::campaign_csv_row(rep);
        return out;
      },
      py::arg("t"), py::arg("s"), py::arg("mode") = "exhaustive", py::arg("trials") = 1000,
      py::arg("seed") = 1);

  m.def("baseline_binary_splitting", [](std::int64_t t, const std::vector<std::int32_t>& hidden) {
    StagedOracle oracle(hidden, t, -1);
    return decode_dict(baseline_binary_splitting(t, static_cast<int>(hidden.size()), oracle));
  });

  m.def("rates", []() {
    const rates::RateReport rep = rates::optimize_constants(1.0 - std::sqrt(0.5), 1.0 - std::cbrt(0.5));
    py::dict out;
    out["c3"] = rep.c3;
    out["omega_star_s2"] = rep.omega_star_s2;
    out["value_s2"] = rep.value_s2;
    out["e1_bound"] = rep.e1_bound;
    return out;
  });

  m.def("entropy", &rates::entropy);

  m.def("write_matrix", [](const PoolMatrix& x, const std::string& path) { io::write_matrix_file(x, path); });
  m.def("read_matrix", [](const std::string& path) { return io::read_matrix_file(path); });
}
