#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccopt/bounds.hpp"
#include "ccopt/errors.hpp"
#include "ccopt/evaluator.hpp"
#include "ccopt/optimizer.hpp"
#include "ccopt/sampling.hpp"
#include "ccopt/simulator.hpp"

namespace py = pybind11;
using namespace ccopt;

namespace {

py::dict diagnostics_dict(const SolveDiagnostics& d) {
  py::dict out;
  out["iterations"] = d.iterations;
  out["primal_residual"] = d.primal_residual;
  out["dual_residual"] = d.dual_residual;
  out["duality_gap"] = d.duality_gap;
  out["evaluator_check"] = d.evaluator_check;
  return out;
}

}  // namespace

PYBIND11_MODULE(ccopt, m) {
  m.doc() = "uncoded-placement optimization for coded multicast delivery";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvalidInstanceError>(m, "InvalidInstanceError", PyExc_ValueError);
  py::register_exception<InvalidPopularityError>(m, "InvalidPopularityError", PyExc_ValueError);

  py::class_<Popularity>(m, "Popularity")
      .def(py::init([](std::vector<double> probs) {
        Popularity p{std::move(probs)};
        p.validate();
        return p;
      }))
      .def_readonly("probs", &Popularity::probs)
      .def("num_files", &Popularity::num_files);

  m.def("zipf", &zipf, py::arg("num_files"), py::arg("gamma"));
  m.def("from_weights", &from_weights, py::arg("weights"),
        "normalized descending pmf plus the 1-based sort permutation");
  m.def("tail_sum", &tail_sum, py::arg("pop"), py::arg("n"));

  py::class_<Instance>(m, "Instance")
      .def(py::init([](int K, int N, double M, const Popularity& pop) {
        Instance inst{K, N, M, pop};
        inst.validate();
        return inst;
      }), py::arg("K"), py::arg("N"), py::arg("M"), py::arg("pop"))
      .def_readonly("K", &Instance::K)
      .def_readonly("N", &Instance::N)
      .def_readonly("M", &Instance::M)
      .def_readonly("pop", &Instance::pop);

  py::class_<DemandVector>(m, "DemandVector")
      .def(py::init([](std::vector<int> d) { return DemandVector{std::move(d)}; }))
      .def_readonly("d", &DemandVector::d);

  py::class_<FullPartition>(m, "FullPartition")
      .def_static("zeros", &FullPartition::zeros, py::arg("K"), py::arg("N"))
      .def_readonly("K", &FullPartition::K)
      .def_readonly("N", &FullPartition::N)
      .def("get", [](const FullPartition& x, int n, std::uint32_t mask) { return x.at(n, mask); })
      .def("set", [](FullPartition& x, int n, std::uint32_t mask, double v) { x.at(n, mask) = v; });

  py::class_<SymmetricPartition>(m, "SymmetricPartition")
      .def(py::init([](std::vector<std::vector<double>> rows) { return SymmetricPartition{std::move(rows)}; }))
      .def_readonly("y", &SymmetricPartition::y);

  py::class_<UniformPartition>(m, "UniformPartition")
      .def(py::init([](std::vector<double> z) { return UniformPartition{std::move(z)}; }))
      .def_readonly("z", &UniformPartition::z);

  py::class_<FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("feasible", &FeasibilityReport::feasible)
      .def("describe", &FeasibilityReport::describe);

  m.def("check_full_feasible", &check_full_feasible);
  m.def("check_symmetric_feasible", &check_symmetric_feasible);
  m.def("check_uniform_feasible", &check_uniform_feasible);
  m.def("expand_symmetric", &expand_symmetric);
  m.def("expand_uniform", &expand_uniform, py::arg("z"), py::arg("num_files"));
  m.def("symmetrize", &symmetrize);
  m.def("is_monotone", &is_monotone);
  m.def("memory_shares", &memory_shares, py::arg("y"), py::arg("M"));

  m.def("load_for_demand", &load_for_demand);
  m.def("avg_load_bruteforce", &avg_load_bruteforce, py::arg("x"), py::arg("inst"),
        py::arg("enumeration_cap") = 1e7);
  m.def("avg_load_symmetric", &avg_load_symmetric, py::arg("y"), py::arg("inst"),
        py::arg("enumeration_cap") = 1e7);
  m.def("avg_load_monotone", &avg_load_monotone);
  m.def("avg_load_uniform", &avg_load_uniform, py::arg("z"), py::arg("K"));

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("value", &OptResult::value)
      .def_property_readonly("diagnostics", [](const OptResult& r) { return diagnostics_dict(r.diagnostics); })
      .def_property_readonly("partition", [](const OptResult& r) -> py::object {
        if (std::holds_alternative<SymmetricPartition>(r.partition)) return py::cast(r.symmetric());
        if (std::holds_alternative<UniformPartition>(r.partition)) return py::cast(r.uniform());
        return py::cast(r.full());
      });

  m.def("optimize_placement", &optimize_placement);
  m.def("optimize_placement_epigraph", &optimize_placement_epigraph, py::arg("inst"),
        py::arg("tuple_cap") = 5000.0, py::arg("impose_monotone") = false);
  m.def("optimize_uniform_lp", &optimize_uniform_lp, py::arg("K"), py::arg("N"), py::arg("M"));
  m.def("uniform_closed_form", &uniform_closed_form, py::arg("K"), py::arg("N"), py::arg("M"));
  m.def("optimize_full_oracle", &optimize_full_oracle, py::arg("inst"), py::arg("tuple_cap") = 5000.0);
  m.def("baseline_mn_centralized", &baseline_mn_centralized);

  py::class_<KktCertificate>(m, "KktCertificate")
      .def_readonly("theta", &KktCertificate::theta)
      .def_readonly("nu", &KktCertificate::nu)
      .def_readonly("eta", &KktCertificate::eta)
      .def_readonly("max_residual", &KktCertificate::max_residual)
      .def_readonly("h_min", &KktCertificate::h_min)
      .def_readonly("valid", &KktCertificate::valid);
  m.def("verify_kkt_uniform", &verify_kkt_uniform, py::arg("z"), py::arg("K"), py::arg("N"), py::arg("M"));

  m.def("lb_uniform", &lb_uniform, py::arg("K"), py::arg("N"), py::arg("M"));
  m.def("lb_uniform_terms", &lb_uniform_terms, py::arg("K"), py::arg("N"), py::arg("M"));
  py::class_<GenieBound>(m, "GenieBound")
      .def_readonly("value", &GenieBound::value)
      .def_readonly("argmax_nprime", &GenieBound::argmax_nprime)
      .def_readonly("per_nprime", &GenieBound::per_nprime);
  m.def("lb_genie", &lb_genie);

  py::class_<PlacementRealization>(m, "PlacementRealization")
      .def_readonly("F", &PlacementRealization::F)
      .def_readonly("seed", &PlacementRealization::seed)
      .def_readonly("sizes", &PlacementRealization::sizes)
      .def("user_cache_units", &PlacementRealization::user_cache_units)
      .def("cache_cap_units", &PlacementRealization::cache_cap_units);
  m.def("quantize", &quantize, py::arg("x"), py::arg("F"), py::arg("inst"), py::arg("seed") = 0);

  py::class_<DeliveryTranscript>(m, "DeliveryTranscript")
      .def("total_units", &DeliveryTranscript::total_units)
      .def("per_size_totals", &DeliveryTranscript::per_size_totals)
      .def_property_readonly("num_messages", [](const DeliveryTranscript& t) { return t.messages.size(); });
  m.def("deliver_zero_pad", &deliver_zero_pad);
  m.def("deliver_hcd", &deliver_hcd);
  m.def("decode", &decode);
  m.def("coloring_check", &coloring_check);
}
