#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "alc/config.hpp"
#include "alc/conformal.hpp"
#include "alc/errors.hpp"
#include "alc/mixed.hpp"
#include "alc/report.hpp"
#include "alc/runner.hpp"
#include "alc/solver.hpp"

namespace py = pybind11;

namespace {

py::list checks_to_py(const std::vector<alc::Check>& cs) {
  py::list out;
  for (const auto& c : cs) {
    py::dict d;
    d["name"] = c.name;
    d["anchor"] = c.anchor;
    d["pass"] = c.pass;
    d["witness"] = c.witness;
    d["detail"] = c.detail;
    out.append(d);
  }
  return out;
}

alc::IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& m) {
  alc::IntMatrix out;
  for (const auto& row : m) {
    std::vector<alc::BigInt> r;
    for (long long v : row) r.emplace_back(v);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_arithlc, m) {
  m.doc() = "Arithmetic Levi-Civita connections: solver, curvature and verification checks";
  m.attr("__version__") = alc::kEngineVersion;

  auto base = py::register_exception<alc::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<alc::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<alc::ContextMismatch>(m, "ContextMismatch", base.ptr());
  py::register_exception<alc::PrecisionUnderflow>(m, "PrecisionUnderflow", base.ptr());
  py::register_exception<alc::NotAUnit>(m, "NotAUnit", base.ptr());
  py::register_exception<alc::ExactDivisionFailure>(m, "ExactDivisionFailure", base.ptr());
  py::register_exception<alc::ConfigError>(m, "ConfigError", base.ptr());

  m.def("known_commands", &alc::known_commands);

  m.def(
      "run_config",
      [](const std::string& text, std::optional<alc::u64> seed, int jobs, bool timing) {
        alc::RunConfig rc = alc::parse_config(text, "<string>");
        alc::u64 s = seed ? *seed : rc.seed.value_or(1);
        alc::RunResult res;
        {
          py::gil_scoped_release release;
          res = alc::run_config(rc, s, jobs);
        }
        return py::make_tuple(alc::render_report(res, {timing}), res.exit_code);
      },
      py::arg("text"), py::arg("seed") = py::none(), py::arg("jobs") = 1, py::arg("timing") = false,
      "Run a job configuration given as text; returns (report_json, exit_code).");

  m.def(
      "solve_lambda",
      [](long long p, int N, int n, const std::vector<std::vector<alc::i64>>& q) {
        alc::CtxPtr B = alc::BaseContext::make(p, N);
        std::vector<std::vector<alc::i64>> qq = q;
        if (q.size() == 1 && n > 1) qq.assign(n, q[0]);
        alc::Connection c = alc::solve(alc::MetricTuple::from_ints(B, n, qq), N);
        std::vector<std::vector<std::string>> out;
        for (int i = 0; i < n; ++i) {
          std::vector<std::string> entries;
          for (const auto& e : c.lambda(i).a) entries.push_back(e.str());
          out.push_back(std::move(entries));
        }
        return out;
      },
      py::arg("p"), py::arg("N"), py::arg("n"), py::arg("q"),
      "Entries of Lambda_i (row-major, as strings) for integer metrics q_i (row-major).");

  m.def(
      "verify_conformal",
      [](long long d1, long long d2, long long p, int N) {
        return checks_to_py(alc::verify_conformal(alc::solve_conformal(d1, d2, p, N)));
      },
      py::arg("d1"), py::arg("d2"), py::arg("p"), py::arg("N") = 2);

  m.def(
      "star_curvature",
      [](long long d, long long p, long long pp) {
        return checks_to_py(alc::verify_star_curvature(alc::star_curvature_traces(d, p, pp)));
      },
      py::arg("d"), py::arg("p"), py::arg("pp"));

  m.def(
      "d_determinant",
      [](int n, const std::vector<std::vector<std::vector<long long>>>& y) {
        std::vector<alc::IntMatrix> yy;
        for (const auto& yi : y) yy.push_back(to_int_matrix(yi));
        return py::int_(py::str(alc::d_determinant(n, yy).str()));
      },
      py::arg("n"), py::arg("y"));

  m.def(
      "section_check",
      [](const std::vector<std::vector<alc::i64>>& q, long long p) {
        return checks_to_py({alc::section_check(alc::etale_presentation(q, p))});
      },
      py::arg("q"), py::arg("p"));
}
