#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "lpfom/diffopt.h"
#include "lpfom/errors.h"
#include "lpfom/generators.h"
#include "lpfom/io.h"
#include "lpfom/kkt.h"
#include "lpfom/options.h"
#include "lpfom/problem.h"
#include "lpfom/solver.h"

namespace py = pybind11;
using namespace lpfom;

namespace {

using Vec = std::vector<double>;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_array(const Vec& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::array_t<double> to_array(const CostBatch& b) {
  const py::ssize_t rows = static_cast<py::ssize_t>(b.size());
  const py::ssize_t cols = rows ? static_cast<py::ssize_t>(b[0].size()) : 0;
  py::array_t<double> a({rows, cols});
  auto m = a.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < rows; ++i) {
    if (static_cast<py::ssize_t>(b[i].size()) != cols) {
      throw DimensionError("ragged batch");
    }
    for (py::ssize_t j = 0; j < cols; ++j) m(i, j) = b[i][j];
  }
  return a;
}

Vec to_vec(const Array& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-d array");
  return Vec(a.data(), a.data() + a.size());
}

CostBatch to_batch(const Array& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  CostBatch b(a.shape(0), Vec(a.shape(1)));
  auto m = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    for (py::ssize_t j = 0; j < a.shape(1); ++j) b[i][j] = m(i, j);
  }
  return b;
}

Storage parse_storage(const std::string& s) {
  if (s == "sparse") return Storage::kSparseCsr;
  if (s == "dense") return Storage::kDense;
  throw ParameterError("storage must be 'sparse' or 'dense', got '" + s + "'");
}

// COO arrays from the Python side.
ConstraintMatrix from_coo(int rows, int cols, const py::array_t<int>& i,
                          const py::array_t<int>& j, const Array& v,
                          Storage storage) {
  if (i.size() != j.size() || i.size() != v.size()) {
    throw DimensionError("coordinate arrays differ in length");
  }
  std::vector<Triplet> t(v.size());
  for (py::ssize_t k = 0; k < v.size(); ++k) {
    t[k] = {i.data()[k], j.data()[k], v.data()[k]};
  }
  return ConstraintMatrix::FromTriplets(rows, cols, t, storage);
}

py::array_t<double> dense(const ConstraintMatrix& m) {
  py::array_t<double> a({m.rows(), m.cols()});
  auto d = m.ToDenseRowMajor();
  std::copy(d.begin(), d.end(), a.mutable_data());
  return a;
}

WarmStart warm_from(const std::optional<Array>& x, const std::optional<Array>& y) {
  WarmStart w;
  if (x) w.x = to_vec(*x);
  if (y) w.y = to_vec(*y);
  return w;
}

SolverOptions opts_or_default(const std::optional<SolverOptions>& o) {
  return o ? *o : SolverOptions{};
}

std::vector<WarmStart> warm_list(const std::optional<std::vector<py::object>>& starts) {
  std::vector<WarmStart> out;
  if (!starts) return out;
  for (const auto& s : *starts) {
    auto pair = s.cast<std::pair<std::optional<Array>, std::optional<Array>>>();
    out.push_back(warm_from(pair.first, pair.second));
  }
  return out;
}

// Raises an instance of `type` carrying one extra attribute.
void raise(py::handle type, const char* what, const char* attr, py::object value) {
  py::object e = py::reinterpret_borrow<py::object>(type)(what);
  e.attr(attr) = std::move(value);
  PyErr_SetObject(type.ptr(), e.ptr());
}

void register_errors(py::module_& m) {
  static py::exception<Error> base(m, "Error");
  static py::exception<DimensionError> dim(m, "DimensionError", base.ptr());
  static py::exception<ParameterError> param(m, "ParameterError", base.ptr());
  static py::exception<ValidationError> valid(m, "ValidationError", base.ptr());
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  static py::exception<BatchMemberError> member(m, "BatchMemberError", base.ptr());
  static py::exception<BatchShapeError> shape(m, "BatchShapeError", member.ptr());
  static py::exception<UndefinedMetricError> metric(m, "UndefinedMetricError", base.ptr());

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BatchShapeError& e) {
      raise(shape, e.what(), "index", py::int_(e.index()));
    } catch (const BatchMemberError& e) {
      raise(member, e.what(), "index", py::int_(e.index()));
    } catch (const ParseError& e) {
      raise(parse, e.what(), "line", py::int_(e.line()));
    } catch (const ValidationError& e) {
      raise(valid, e.what(), "violations", py::cast(e.violations()));
    } catch (const DimensionError& e) {
      py::set_error(dim, e.what());
    } catch (const ParameterError& e) {
      py::set_error(param, e.what());
    } catch (const UndefinedMetricError& e) {
      py::set_error(metric, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "First-order LP solver core.";
  register_errors(m);

  py::enum_<Algorithm>(m, "Algorithm")
      .value("RAPDHG", Algorithm::kRaPdhg)
      .value("R2HPDHG", Algorithm::kR2Hpdhg);
  py::enum_<Precision>(m, "Precision")
      .value("F64", Precision::kF64)
      .value("F32", Precision::kF32);
  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("OPTIMAL", SolveStatus::kOptimal)
      .value("PRIMAL_INFEASIBLE", SolveStatus::kPrimalInfeasible)
      .value("DUAL_INFEASIBLE", SolveStatus::kDualInfeasible)
      .value("ITERATION_LIMIT", SolveStatus::kIterationLimit);
  py::enum_<CertificateKind>(m, "CertificateKind")
      .value("PRIMAL_INFEASIBLE", CertificateKind::kPrimalInfeasible)
      .value("DUAL_INFEASIBLE", CertificateKind::kDualInfeasible);

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("eps_abs", &SolverOptions::eps_abs)
      .def_readwrite("eps_rel", &SolverOptions::eps_rel)
      .def_readwrite("eps_primal_infeasible", &SolverOptions::eps_primal_infeasible)
      .def_readwrite("eps_dual_infeasible", &SolverOptions::eps_dual_infeasible)
      .def_readwrite("eps_feas_polish", &SolverOptions::eps_feas_polish)
      .def_readwrite("iteration_limit", &SolverOptions::iteration_limit)
      .def_readwrite("check_frequency", &SolverOptions::check_frequency)
      .def_readwrite("verbose", &SolverOptions::verbose)
      .def_readwrite("display_frequency", &SolverOptions::display_frequency)
      .def_readwrite("warm_start", &SolverOptions::warm_start)
      .def_readwrite("feasibility_polishing", &SolverOptions::feasibility_polishing)
      .def_readwrite("algorithm", &SolverOptions::algorithm)
      .def_readwrite("precision", &SolverOptions::precision)
      .def_readwrite("ruiz_iterations", &SolverOptions::ruiz_iterations)
      .def_readwrite("pock_chambolle_alpha", &SolverOptions::pock_chambolle_alpha)
      .def_readwrite("theta", &SolverOptions::theta)
      .def_readwrite("seed", &SolverOptions::seed)
      .def("validate", [](const SolverOptions& o) { validate_options(o); });

  py::class_<LpProblem>(m, "Problem")
      .def_property_readonly("c", [](const LpProblem& p) { return to_array(p.c); })
      .def_property_readonly("b", [](const LpProblem& p) { return to_array(p.b); })
      .def_property_readonly("h", [](const LpProblem& p) { return to_array(p.h); })
      .def_property_readonly("l", [](const LpProblem& p) { return to_array(p.l); })
      .def_property_readonly("u", [](const LpProblem& p) { return to_array(p.u); })
      .def_property_readonly("A", [](const LpProblem& p) { return dense(p.A); })
      .def_property_readonly("G", [](const LpProblem& p) { return dense(p.G); })
      .def_property_readonly("storage", [](const LpProblem& p) {
        return p.storage == Storage::kDense ? "dense" : "sparse";
      })
      .def_readwrite("objective_offset", &LpProblem::objective_offset)
      .def_readwrite("name", &LpProblem::name)
      .def_property_readonly("num_variables", &LpProblem::num_variables)
      .def_property_readonly("num_equalities", &LpProblem::num_equalities)
      .def_property_readonly("num_inequalities", &LpProblem::num_inequalities)
      .def("with_costs", [](const LpProblem& p, const Array& c) {
        LpProblem q = p;
        q.c = to_vec(c);
        if (static_cast<int>(q.c.size()) != p.num_variables()) {
          throw DimensionError("cost vector has the wrong length");
        }
        return q;
      })
      .def("validate", &validate_problem)
      .def("__repr__", [](const LpProblem& p) {
        return "<Problem n=" + std::to_string(p.num_variables()) +
               " m_eq=" + std::to_string(p.num_equalities()) +
               " m_ineq=" + std::to_string(p.num_inequalities()) + ">";
      });

  m.def("_make_problem",
        [](const Array& c, int a_rows, const py::array_t<int>& a_i,
           const py::array_t<int>& a_j, const Array& a_v, const Array& b,
           int g_rows, const py::array_t<int>& g_i, const py::array_t<int>& g_j,
           const Array& g_v, const Array& h, const Array& l, const Array& u,
           const std::string& storage, double offset, const std::string& name) {
          LpProblem p;
          p.storage = parse_storage(storage);
          p.c = to_vec(c);
          const int n = p.num_variables();
          p.A = from_coo(a_rows, n, a_i, a_j, a_v, p.storage);
          p.G = from_coo(g_rows, n, g_i, g_j, g_v, p.storage);
          p.b = to_vec(b);
          p.h = to_vec(h);
          p.l = to_vec(l);
          p.u = to_vec(u);
          p.objective_offset = offset;
          p.name = name;
          ensure_valid(p);
          return p;
        });

  py::class_<KktResiduals>(m, "KktResiduals")
      .def_readonly("primal_residual", &KktResiduals::primal_residual)
      .def_readonly("dual_residual", &KktResiduals::dual_residual)
      .def_readonly("primal_objective", &KktResiduals::primal_objective)
      .def_readonly("dual_objective", &KktResiduals::dual_objective)
      .def_readonly("abs_gap", &KktResiduals::abs_gap)
      .def("norm", &KktResiduals::norm);

  py::class_<InfeasibilityCertificate>(m, "InfeasibilityCertificate")
      .def_readonly("kind", &InfeasibilityCertificate::kind)
      .def_property_readonly("ray", [](const InfeasibilityCertificate& c) {
        return to_array(c.ray);
      });

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("status", &SolveResult::status)
      .def_property_readonly("x", [](const SolveResult& r) { return to_array(r.x); })
      .def_property_readonly("y", [](const SolveResult& r) { return to_array(r.y); })
      .def_property_readonly("reduced_costs",
                             [](const SolveResult& r) { return to_array(r.reduced_costs); })
      .def_readonly("objective", &SolveResult::objective)
      .def_readonly("dual_objective", &SolveResult::dual_objective)
      .def_readonly("kkt", &SolveResult::kkt)
      .def_readonly("rel_gap", &SolveResult::rel_gap)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("restarts", &SolveResult::restarts)
      .def_readonly("polish_iterations", &SolveResult::polish_iterations)
      .def_readonly("polish_complete", &SolveResult::polish_complete)
      .def_readonly("objective_degradation", &SolveResult::objective_degradation)
      .def_readonly("certificate", &SolveResult::certificate)
      .def("__repr__", [](const SolveResult& r) {
        return "<SolveResult " + std::string(to_string(r.status)) + " obj=" +
               std::to_string(r.objective) + " iters=" +
               std::to_string(r.iterations) + ">";
      });

  py::class_<PolishResult>(m, "PolishResult")
      .def_property_readonly("x", [](const PolishResult& r) { return to_array(r.x); })
      .def_property_readonly("y", [](const PolishResult& r) { return to_array(r.y); })
      .def_readonly("iterations", &PolishResult::iterations)
      .def_readonly("primal_complete", &PolishResult::primal_complete)
      .def_readonly("dual_complete", &PolishResult::dual_complete)
      .def_property_readonly("complete", &PolishResult::complete);

  m.def("kkt_residuals",
        [](const LpProblem& p, const Array& x, const Array& y) {
          return compute_kkt_residuals(p, to_vec(x), to_vec(y));
        },
        py::arg("problem"), py::arg("x"), py::arg("y"));

  m.def("solve",
        [](const LpProblem& p, const std::optional<SolverOptions>& o,
           const std::optional<Array>& warm_x, const std::optional<Array>& warm_y) {
          const auto opts = opts_or_default(o);
          const auto warm = warm_from(warm_x, warm_y);
          py::gil_scoped_release nogil;
          return solve(p, opts, warm);
        },
        py::arg("problem"), py::arg("options") = py::none(),
        py::arg("warm_x") = py::none(), py::arg("warm_y") = py::none());

  m.def("batch_solve",
        [](const std::vector<LpProblem>& problems, const std::optional<SolverOptions>& o,
           const std::optional<std::vector<py::object>>& starts, unsigned workers) {
          const auto opts = opts_or_default(o);
          const auto warm = warm_list(starts);
          py::gil_scoped_release nogil;
          return batch_solve(problems, opts, warm, workers);
        },
        py::arg("problems"), py::arg("options") = py::none(),
        py::arg("warm_starts") = py::none(), py::arg("workers") = 0);

  m.def("feasibility_polish",
        [](const LpProblem& p, const Array& x, const Array& y,
           const std::optional<SolverOptions>& o) {
          const auto opts = opts_or_default(o);
          const auto xv = to_vec(x), yv = to_vec(y);
          py::gil_scoped_release nogil;
          return feasibility_polish(p, xv, yv, opts);
        },
        py::arg("problem"), py::arg("x"), py::arg("y"), py::arg("options") = py::none());

  m.def("gen_knapsack",
        [](int n_items, int d, std::uint64_t seed, const Array& values, double capacity) {
          return gen_knapsack(n_items, d, seed, to_vec(values), capacity);
        },
        py::arg("n_items"), py::arg("d"), py::arg("seed"), py::arg("values"),
        py::arg("capacity") = kDefaultKnapsackCapacity);
  m.def("knapsack_weights", &knapsack_weights, py::arg("n_items"), py::arg("d"),
        py::arg("seed"));
  m.def("gen_grid_shortest_path",
        [](int k, const Array& costs) { return gen_grid_shortest_path(k, to_vec(costs)); },
        py::arg("k"), py::arg("vertex_costs"));

  m.def("parse_mps", [](const std::string& s) { return parse_mps(s); });
  m.def("write_mps", &write_mps);
  m.def("parse_problem_json", [](const std::string& s) { return parse_problem_json(s); });
  m.def("write_problem_json", &write_problem_json);
  m.def("read_problem",
        [](const std::string& path, const std::optional<std::string>& format) {
          std::optional<ProblemFormat> f;
          if (format == "mps") f = ProblemFormat::kMps;
          else if (format == "json") f = ProblemFormat::kJson;
          else if (format) throw ParameterError("format must be 'mps' or 'json'");
          return read_problem_file(path, f);
        },
        py::arg("path"), py::arg("format") = py::none());

  m.def("spo_plus_loss",
        [](const Array& pred, const Array& truth, const Array& sols, const Array& objs,
           const LpProblem& set, const std::optional<SolverOptions>& o,
           const std::optional<std::vector<py::object>>& starts) {
          SpoBatch batch(to_batch(pred), to_batch(truth), to_batch(sols), to_vec(objs));
          const auto opts = opts_or_default(o);
          const auto warm = warm_list(starts);
          SpoLoss l;
          {
            py::gil_scoped_release nogil;
            l = spo_plus_loss(batch, set, opts, warm);
          }
          return py::make_tuple(l.loss, to_array(l.per_member), to_array(l.inner_sols),
                                l.inner_results);
        },
        py::arg("pred_costs"), py::arg("true_costs"), py::arg("true_sols"),
        py::arg("true_objs"), py::arg("feasible_set"), py::arg("options") = py::none(),
        py::arg("warm_starts") = py::none(),
        "Returns (mean loss, per-member losses, inner solutions, inner results).");

  m.def("spo_plus_subgradient",
        [](const Array& sols, const Array& inner, const std::string& reduction) {
          Reduction r;
          if (reduction == "mean") r = Reduction::kMean;
          else if (reduction == "none") r = Reduction::kNone;
          else throw ParameterError("reduction must be 'mean' or 'none'");
          return to_array(spo_plus_subgradient(to_batch(sols), to_batch(inner), r));
        },
        py::arg("true_sols"), py::arg("inner_sols"), py::arg("reduction") = "mean");

  m.def("normalized_regret",
        [](const Array& pred, const Array& truth, const LpProblem& set,
           const std::optional<SolverOptions>& o, const std::optional<Array>& sols) {
          const auto opts = opts_or_default(o);
          const auto p = to_batch(pred), t = to_batch(truth);
          std::optional<CostBatch> s;
          if (sols) s = to_batch(*sols);
          Regret r;
          {
            py::gil_scoped_release nogil;
            r = s ? normalized_regret(p, t, *s, set, opts)
                  : normalized_regret(p, t, set, opts);
          }
          return py::make_tuple(r.value, to_array(r.per_instance));
        },
        py::arg("pred_costs"), py::arg("true_costs"), py::arg("feasible_set"),
        py::arg("options") = py::none(), py::arg("true_sols") = py::none(),
        "Returns (normalized regret, per-instance regret).");
}
