#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "forge/job.hpp"

namespace py = pybind11;
using namespace forge;

namespace {

ParseOptions parse_options(const std::map<std::string, std::string>& constants) {
  ParseOptions opts;
  for (const auto& [name, value] : constants) opts.constants[name] = rational_from_json(Json(value));
  return opts;
}

ZeroTestOptions zero_options(double lo, double hi, int trials, double atol, double rtol,
                             std::uint64_t seed, unsigned precision) {
  ZeroTestOptions opts;
  opts.domain_lo = lo;
  opts.domain_hi = hi;
  opts.trials = trials;
  opts.atol = atol;
  opts.rtol = rtol;
  opts.seed = seed;
  opts.precision = precision;
  return opts;
}

py::dict json_to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differential-operator intertwining workbench: symbolic expressions, "
            "operator ring arithmetic, Darboux-type transforms, Klein-Gordon "
            "potential chains, and numeric verification oracles.";

  py::register_exception<Error>(m, "ForgeError");

  py::class_<Expr>(m, "Expr")
      .def("__str__", [](const Expr& e) { return print_expr(e); })
      .def("__repr__", [](const Expr& e) { return "Expr(\"" + print_expr(e) + "\")"; })
      .def("diff", [](const Expr& e, int times) { return differentiate(e, times); }, py::arg("times") = 1)
      .def("simplify", [](const Expr& e) { return simplify(e); })
      .def("tree_size", &Expr::tree_size)
      .def("__eq__", [](const Expr& a, const Expr& b) { return structurally_equal(a, b); });

  m.def(
      "parse",
      [](const std::string& text, const std::map<std::string, std::string>& constants) {
        return parse_expr(text, parse_options(constants));
      },
      py::arg("text"), py::arg("constants") = std::map<std::string, std::string>{});

  m.def(
      "is_zero",
      [](const Expr& e, double lo, double hi, int trials, double atol, double rtol,
         std::uint64_t seed, unsigned precision) {
        ZeroResult r = is_zero(e, zero_options(lo, hi, trials, atol, rtol, seed, precision));
        py::dict out;
        out["verdict"] = verdict_name(r.verdict);
        out["witness_point"] = r.witness_point;
        out["witness_value"] = r.witness_value;
        out["successes"] = r.successes;
        return out;
      },
      py::arg("expr"), py::arg("lo") = 1.0, py::arg("hi") = 2.0, py::arg("trials") = 12,
      py::arg("atol") = 1e-12, py::arg("rtol") = 1e-12, py::arg("seed") = 0xC0FFEE,
      py::arg("precision") = 30);

  py::class_<DiffOp>(m, "DiffOp")
      .def(py::init([](const std::vector<std::string>& coeffs,
                       const std::map<std::string, std::string>& constants) {
             ParseOptions po = parse_options(constants);
             std::vector<Expr> parsed;
             for (const std::string& c : coeffs) parsed.push_back(parse_expr(c, po));
             return DiffOp::from_coeffs(std::move(parsed));
           }),
           py::arg("coeffs"), py::arg("constants") = std::map<std::string, std::string>{})
      .def("__str__", [](const DiffOp& op) { return to_string(op); })
      .def("order", [](const DiffOp& op) { return op.order(); })
      .def("coeffs",
           [](const DiffOp& op) {
             std::vector<std::string> out;
             for (const Expr& c : op.coeffs()) out.push_back(print_expr(c));
             return out;
           })
      .def("__mul__", [](const DiffOp& a, const DiffOp& b) { return op_mul(a, b); })
      .def("__add__", [](const DiffOp& a, const DiffOp& b) { return op_add(a, b); })
      .def("__sub__", [](const DiffOp& a, const DiffOp& b) { return op_sub(a, b); })
      .def("apply", [](const DiffOp& a, const Expr& u) { return op_apply(a, u); })
      .def("equals", [](const DiffOp& a, const DiffOp& b) {
        return op_equal(a, b).verdict == Verdict::Zero;
      });

  m.def("lift_from_eigenfunction",
        [](const DiffOp& L, const Expr& h, const std::string& lambda) {
          return json_to_py(to_json(lift_from_eigenfunction(L, h, rational_from_json(Json(lambda)))));
        },
        py::arg("L"), py::arg("h"), py::arg("lam") = "0");

  m.def("factorize", [](const DiffOp& L, const Expr& h) {
    auto [L1, L2] = factorize(L, h);
    return py::make_tuple(L1, L2);
  });

  m.def("lemma2_transform",
        [](const DiffOp& L, const Expr& h, const std::string& lambda) {
          return json_to_py(to_json(lemma2_transform(L, h, rational_from_json(Json(lambda)))));
        },
        py::arg("L"), py::arg("h"), py::arg("lam") = "0");

  m.def("kg_step",
        [](const Expr& V, const Expr& h, const std::string& lambda, double lo, double hi) {
          ZeroTestOptions opts;
          opts.domain_lo = lo;
          opts.domain_hi = hi;
          return json_to_py(to_json(kg_step(V, h, rational_from_json(Json(lambda)), nullptr, opts)));
        },
        py::arg("V"), py::arg("h"), py::arg("lam") = "0", py::arg("lo") = 1.0, py::arg("hi") = 2.0);

  m.def("weber_solution", [](int n) { return weber_solution(n); });

  m.def("validate_catalog", []() {
    py::list out;
    for (const CatalogValidation& v : validate_catalog()) out.append(json_to_py(to_json(v)));
    return out;
  });

  m.def(
      "run_job",
      [](const py::dict& config, const std::string& out_dir) {
        Json doc = Json::parse(py::str(py::module_::import("json").attr("dumps")(config)).cast<std::string>());
        RunReport report = run(parse_job_config(doc), out_dir);
        return json_to_py(report.json);
      },
      py::arg("config"), py::arg("out_dir") = ".");
}
