#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simlaw/cli.hpp"
#include "simlaw/errors.hpp"
#include "simlaw/eta.hpp"
#include "simlaw/families.hpp"
#include "simlaw/fitting.hpp"
#include "simlaw/laws.hpp"
#include "simlaw/representations.hpp"
#include "simlaw/serialize.hpp"

namespace py = pybind11;
using namespace simlaw;

namespace {

py::object report_dict(const ResidualReport& r) {
  return py::module_::import("json").attr("loads")(to_json(r).dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Similarity-law residual checks, fits and classification";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "Error");

  py::class_<Interval>(m, "Interval")
      .def(py::init<>())
      .def(py::init([](double lo, double hi, bool lo_open, bool hi_open) {
             return Interval{lo, hi, lo_open, hi_open};
           }),
           py::arg("lo"), py::arg("hi"), py::arg("lo_open") = false, py::arg("hi_open") = false)
      .def_static("closed", &Interval::closed)
      .def_static("open", &Interval::open)
      .def_static("real_line", &Interval::real_line)
      .def_static("positive", &Interval::positive)
      .def_static("nonnegative", &Interval::nonnegative)
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def_readonly("lo_open", &Interval::lo_open)
      .def_readonly("hi_open", &Interval::hi_open)
      .def("contains", &Interval::contains)
      .def("__repr__", &Interval::to_string);

  py::class_<ScaleFunction>(m, "ScaleFunction")
      .def_static("affine", &ScaleFunction::affine, py::arg("a"), py::arg("b"),
                  py::arg("domain") = Interval::real_line())
      .def_static("identity", &ScaleFunction::identity, py::arg("domain") = Interval::real_line())
      .def_static("log", &ScaleFunction::log, py::arg("a"), py::arg("b"),
                  py::arg("domain") = Interval::positive())
      .def_static("power", py::overload_cast<double, double, double>(&ScaleFunction::power),
                  py::arg("a"), py::arg("p"), py::arg("b"))
      .def_static("power",
                  py::overload_cast<double, double, double, Interval>(&ScaleFunction::power),
                  py::arg("a"), py::arg("p"), py::arg("b"), py::arg("domain"))
      .def_static("exp", &ScaleFunction::exp, py::arg("a"), py::arg("k"), py::arg("b"),
                  py::arg("domain") = Interval::real_line())
      .def_static("table",
                  py::overload_cast<std::vector<double>, std::vector<double>>(&ScaleFunction::table),
                  py::arg("x"), py::arg("y"))
      .def_static("constant", &ScaleFunction::constant, py::arg("c"),
                  py::arg("domain") = Interval::real_line())
      .def_static("custom", &ScaleFunction::custom, py::arg("name"), py::arg("fn"),
                  py::arg("domain") = Interval::real_line(), py::arg("monotonicity") = 0,
                  py::arg("inverse") = std::function<double(double)>{})
      .def_static("logistic_table", &ScaleFunction::logistic_table, py::arg("half_width") = 30.0,
                  py::arg("knots_per_unit") = 100)
      .def_static("inverse_of", &ScaleFunction::inverse_of)
      .def_static("compose", &ScaleFunction::compose)
      .def("__call__", &ScaleFunction::eval)
      .def("eval", &ScaleFunction::eval)
      .def("invert", &ScaleFunction::invert)
      .def("range", &ScaleFunction::range)
      .def_property_readonly("domain", &ScaleFunction::domain)
      .def_property_readonly("monotonicity", &ScaleFunction::monotonicity)
      .def_property_readonly("kind", &ScaleFunction::kind)
      .def("invertible", &ScaleFunction::invertible)
      .def("__repr__", &ScaleFunction::describe);

  py::class_<Axis>(m, "Axis")
      .def(py::init([](std::vector<double> samples, Interval domain) {
             return Axis{domain, std::move(samples)};
           }),
           py::arg("samples"), py::arg("domain"))
      .def_static("uniform", py::overload_cast<double, double, std::size_t, Interval>(&Axis::uniform),
                  py::arg("lo"), py::arg("hi"), py::arg("n"), py::arg("domain"))
      .def_readonly("samples", &Axis::samples)
      .def_readonly("domain", &Axis::domain);

  py::class_<Grid>(m, "Grid")
      .def(py::init<Axis, Axis, Axis>(), py::arg("x"), py::arg("lam"), py::arg("s"))
      .def_property_readonly("xs", &Grid::xs)
      .def_property_readonly("lambdas", &Grid::lambdas)
      .def_property_readonly("ss", &Grid::ss)
      .def_property_readonly("filtered_pairs", &Grid::filtered_pairs);

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("name", &ResidualReport::name)
      .def_readonly("max_abs", &ResidualReport::max_abs)
      .def_readonly("mean_abs", &ResidualReport::mean_abs)
      .def_readonly("worst_point", &ResidualReport::worst_point)
      .def_readonly("evaluated", &ResidualReport::evaluated)
      .def_readonly("excluded", &ResidualReport::excluded)
      .def_readonly("tolerance", &ResidualReport::tolerance)
      .def_readonly("passed", &ResidualReport::pass)
      .def_readonly("components", &ResidualReport::components)
      .def_readonly("notes", &ResidualReport::notes)
      .def("component",
           [](const ResidualReport& r, const std::string& name) -> py::object {
             const ResidualReport* c = r.component(name);
             return c ? py::cast(*c) : py::none();
           })
      .def("to_dict", &report_dict)
      .def("__bool__", [](const ResidualReport& r) { return r.pass; })
      .def("__repr__", [](const ResidualReport& r) {
        return "ResidualReport(" + r.name + ", max_abs=" + std::to_string(r.max_abs) +
               (r.pass ? ", pass)" : ", fail)");
      });

  py::class_<SensitivityFamily>(m, "SensitivityFamily")
      .def("__call__", &SensitivityFamily::eval, py::arg("x"), py::arg("s"))
      .def("eval", &SensitivityFamily::eval, py::arg("x"), py::arg("s"))
      .def("with_domain", &SensitivityFamily::with_domain)
      .def_property_readonly("kind", &SensitivityFamily::kind)
      .def("params", &SensitivityFamily::params)
      .def("__repr__", &SensitivityFamily::describe);
  m.def("make_family", &make_family, py::arg("kind"), py::arg("params") = ParamMap{});
  m.def("family_kinds", &family_kinds);

  py::class_<EtaMap>(m, "EtaMap")
      .def_static("power_scale", &EtaMap::power_scale)
      .def_static("conjugate", &EtaMap::conjugate)
      .def_static("identity_in_s", &EtaMap::identity_in_s)
      .def_static("constant_per_s", &EtaMap::constant_per_s)
      .def_static("affine_shift", &EtaMap::affine_shift, py::arg("delta"), py::arg("eps"))
      .def_static("log_blend", &EtaMap::log_blend)
      .def_static("additive_log", &EtaMap::additive_log)
      .def("with_domain", &EtaMap::with_domain)
      .def("__call__", &EtaMap::eval)
      .def_property_readonly("kind", &EtaMap::kind)
      .def("__repr__", &EtaMap::describe);

  py::class_<GammaMap>(m, "GammaMap")
      .def_static("power_of_lambda", &GammaMap::power_of_lambda)
      .def_static("power_phi", &GammaMap::power_phi)
      .def_static("lambda_only", &GammaMap::lambda_only)
      .def_static("ratio_form", &GammaMap::ratio_form)
      .def("__call__", &GammaMap::eval)
      .def_property_readonly("kind", &GammaMap::kind)
      .def("__repr__", &GammaMap::describe);
  m.def("canonical_companions", &canonical_companions);

  m.def("iverson_residual", &iverson_residual, py::arg("xi"), py::arg("gamma"), py::arg("eta"),
        py::arg("grid"), py::arg("tol"));
  m.def("weber_residual", &weber_residual);
  m.def("power_law_residual", &power_law_residual);
  m.def("shift_invariance_residual", &shift_invariance_residual);

  m.def("check_mult_translational", &check_mult_translational);
  py::class_<ExtractedH>(m, "ExtractedH")
      .def_readonly("H", &ExtractedH::H)
      .def_readonly("reconstruction", &ExtractedH::reconstruction);
  m.def("extract_H", &extract_H, py::arg("eta"), py::arg("s_star"), py::arg("j_grid"),
        py::arg("tol") = 1e-9);
  m.def("conjugate_eta", &conjugate_eta);
  m.def("compare_eta", &compare_eta);
  m.def("derive_gamma", &derive_gamma, py::arg("gamma"), py::arg("H"), py::arg("grid"),
        py::arg("tol") = 1e-10);
  m.def("phi_consistency", &phi_consistency);

  py::class_<LundbergSolution>(m, "LundbergSolution")
      .def_readonly("case_number", &LundbergSolution::case_number)
      .def_readonly("philandering", &LundbergSolution::philandering)
      .def("f", [](const LundbergSolution& s, double x) { return s.f(x); })
      .def("g", [](const LundbergSolution& s, double x) { return s.g(x); })
      .def("h", [](const LundbergSolution& s, double x) { return s.h(x); })
      .def("ell", [](const LundbergSolution& s, double x) { return s.ell(x); })
      .def("m", [](const LundbergSolution& s, double x) { return s.m(x); });
  m.def("make_lundberg_case", &make_lundberg_case, py::arg("case_number"), py::arg("params"),
        py::arg("x_interval"), py::arg("y_interval"), py::arg("ell") = RealFn{});
  m.def("lundberg_residual", &lundberg_residual);

  py::class_<Classification>(m, "Classification")
      .def_readonly("labels", &Classification::labels)
      .def_readonly("weber", &Classification::weber)
      .def_readonly("power_law", &Classification::power_law)
      .def_readonly("shift", &Classification::shift)
      .def_readonly("phi_knots", &Classification::phi_knots)
      .def_readonly("theta_hat", &Classification::theta_hat)
      .def_readonly("notes", &Classification::notes)
      .def("has", &Classification::has);
  m.def("classify_laws", &classify_laws);

  py::class_<Representation>(m, "Representation")
      .def_static("fechnerian", &Representation::fechnerian)
      .def_static("subtractive", &Representation::subtractive)
      .def_static("gain_control", &Representation::gain_control)
      .def_static("parallel", &Representation::parallel)
      .def_static("balanced_parallel", &Representation::balanced_parallel)
      .def_property_readonly("kind", &Representation::kind)
      .def("__repr__", &Representation::describe);
  m.def("xi_from_representation", &xi_from_representation);
  m.def("representation_residual", &representation_residual);
  py::class_<PsychometricFamily>(m, "PsychometricFamily")
      .def("index", &PsychometricFamily::index)
      .def("p", &PsychometricFamily::p);
  m.def("make_psychometric", &make_psychometric);
  m.def("sensitivity_from_psychometric", &sensitivity_from_psychometric);
  py::class_<FamilyProperties>(m, "FamilyProperties")
      .def_readonly("anchored", &FamilyProperties::anchored)
      .def_readonly("parallel", &FamilyProperties::parallel)
      .def_readonly("balanced", &FamilyProperties::balanced);
  m.def("check_family_properties", &check_family_properties);
  py::class_<BalancedDecomposition>(m, "BalancedDecomposition")
      .def_readonly("nu", &BalancedDecomposition::nu)
      .def_readonly("report", &BalancedDecomposition::report);
  m.def("decompose_balanced_parallel", &decompose_balanced_parallel);

  py::class_<Sample>(m, "Sample")
      .def(py::init<double, double, double>())
      .def_readonly("x", &Sample::x)
      .def_readonly("s", &Sample::s)
      .def_readonly("xi", &Sample::xi);
  py::class_<SampleSet>(m, "SampleSet")
      .def(py::init([](const std::vector<std::tuple<double, double, double>>& rows) {
             SampleSet out;
             for (const auto& [x, s, xi] : rows) out.rows.push_back({x, s, xi});
             return out;
           }),
           py::arg("rows"))
      .def_readonly("rows", &SampleSet::rows)
      .def("__len__", [](const SampleSet& s) { return s.rows.size(); });
  py::class_<FitResult>(m, "FitResult")
      .def_readonly("kind", &FitResult::kind)
      .def_readonly("params", &FitResult::params)
      .def_readonly("scales", &FitResult::scales)
      .def_readonly("residual", &FitResult::residual)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("notes", &FitResult::notes);
  py::class_<PowerFit>(m, "PowerFit")
      .def_readonly("s", &PowerFit::s)
      .def_readonly("kappa", &PowerFit::kappa)
      .def_readonly("rho", &PowerFit::rho)
      .def_readonly("fit", &PowerFit::fit);
  py::class_<SubtractiveFit>(m, "SubtractiveFit")
      .def_readonly("u", &SubtractiveFit::u)
      .def_readonly("w", &SubtractiveFit::w)
      .def_readonly("fit", &SubtractiveFit::fit);
  m.def("sample_family", &sample_family);
  m.def("fit_kinds", &fit_kinds);
  m.def("family_from_params", &family_from_params);
  m.def("fit_family", &fit_family, py::arg("samples"), py::arg("kind"), py::arg("init"),
        py::arg("tol") = 1e-7);
  m.def("fit_power_per_s", &fit_power_per_s, py::arg("samples"), py::arg("tol") = 1e-6);
  m.def("fit_scales_subtractive", &fit_scales_subtractive, py::arg("samples"),
        py::arg("knot_count"), py::arg("tol") = 1e-6);

  m.def("_run", [](const std::string& command, const std::string& config, const std::string& out_dir,
                   std::optional<double> tol, std::optional<std::uint64_t> seed,
                   std::optional<std::string> grid, const std::string& base_dir) {
    RunConfig cfg;
    cfg.command = command;
    cfg.spec = Json::parse(config);
    cfg.base_dir = base_dir;
    cfg.out_dir = out_dir;
    if (cfg.spec.contains("tol")) cfg.tol = cfg.spec.at("tol").get<double>();
    if (cfg.spec.contains("seed")) cfg.seed = cfg.spec.at("seed").get<std::uint64_t>();
    if (tol) cfg.tol = *tol;
    if (seed) cfg.seed = *seed;
    if (grid) cfg.grid_counts = parse_grid_counts(*grid);
    const RunOutcome out = run(cfg);
    return std::make_pair(out.status, out.report.dump());
  });
}
