#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quenchfloq/analysis.hpp"
#include "quenchfloq/cli/commands.hpp"

namespace py = pybind11;
using namespace quenchfloq;

namespace {

ModelPair custom_pair(const ComplexMatrix& h1, const ComplexMatrix& h2, std::optional<ComplexMatrix> observable,
                      std::string label) {
    ModelPair pair;
    pair.h1 = HermitianOperator(h1);
    pair.h2 = HermitianOperator(h2);
    if (pair.h1.dim() != pair.h2.dim()) throw std::invalid_argument("model_pair: h1 and h2 differ in dimension");
    pair.dim = pair.h1.dim();
    if (observable) pair.observable_sx = HermitianOperator(*observable);
    pair.label = std::move(label);
    return pair;
}

const HermitianOperator& observable_of(const ModelPair& pair) {
    if (!pair.observable_sx) throw std::invalid_argument("model '" + pair.label + "' has no Sx observable");
    return *pair.observable_sx;
}

py::dict run_command(const std::string& name, const std::map<std::string, std::string>& settings) {
    using namespace quenchfloq::cli;
    KeyValues kv;
    for (const auto& [k, v] : settings) kv.set(k, v, "python");
    const auto config = build_config(kv);
    CommandResult r;
    if (name == "static") r = cmd_static(config);
    else if (name == "floquet") r = cmd_floquet(config);
    else if (name == "correlator") r = cmd_correlator(config);
    else if (name == "deviation") r = cmd_deviation(config);
    else if (name == "info") r = cmd_info(config);
    else throw std::invalid_argument("run_command: unknown command '" + name + "'");

    py::dict files;
    for (const auto& f : r.files) files[py::str(f.name.string())] = f.content;
    py::dict out;
    out["files"] = files;
    out["report"] = r.report;
    out["warnings"] = r.warnings;
    return out;
}

}  // namespace

PYBIND11_MODULE(_quenchfloq, m) {
    m.doc() = "Floquet spectra of periodically quenched two-Hamiltonian protocols";

    static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<ModelPair>(m, "ModelPair")
        .def_property_readonly("h1", [](const ModelPair& p) { return p.h1.matrix(); })
        .def_property_readonly("h2", [](const ModelPair& p) { return p.h2.matrix(); })
        .def_property_readonly("observable",
                               [](const ModelPair& p) -> std::optional<ComplexMatrix> {
                                   if (!p.observable_sx) return std::nullopt;
                                   return p.observable_sx->matrix();
                               })
        .def_readonly("dim", &ModelPair::dim)
        .def_readonly("label", &ModelPair::label)
        .def_readonly("frequency", &ModelPair::frequency)
        .def("__repr__", [](const ModelPair& p) {
            return "<ModelPair " + p.label + " dim=" + std::to_string(p.dim) + ">";
        });

    m.def("lmg_pair", [](int n, double omega) { return lmg_pair({n, omega}); }, py::arg("n") = 20,
          py::arg("omega") = 1.0);
    m.def("atom_diatom_pair",
          [](int m_atoms, double omega0, double omega, double coupling) {
              return atom_diatom_pair({m_atoms, omega0, omega, coupling});
          },
          py::arg("m") = 20, py::arg("omega0") = 2.0, py::arg("omega") = 1.0, py::arg("coupling") = 1.0);
    m.def("model_pair", &custom_pair, py::arg("h1"), py::arg("h2"), py::arg("observable") = py::none(),
          py::arg("label") = "custom");
    m.def("static_spectrum", &static_spectrum, py::arg("pair"), py::arg("xi"));

    py::class_<FloquetSolution>(m, "FloquetSolution")
        .def_readonly("quasienergies", &FloquetSolution::quasienergies)
        .def_readonly("modes0", &FloquetSolution::modes0)
        .def_readonly("mean_energies", &FloquetSolution::mean_energies)
        .def_readonly("geometric_phases", &FloquetSolution::geometric_phases)
        .def_property_readonly("t0", [](const FloquetSolution& s) { return s.protocol.t0; })
        .def_property_readonly("period", [](const FloquetSolution& s) { return s.protocol.period; })
        .def("__len__", &FloquetSolution::size);

    m.def("monodromy", [](const ModelPair& p, double t0, double period) { return monodromy({p, t0, period}).matrix(); },
          py::arg("pair"), py::arg("t0"), py::arg("period"));
    m.def("floquet_solve", [](const ModelPair& p, double t0, double period) { return floquet_solve({p, t0, period}); },
          py::arg("pair"), py::arg("t0"), py::arg("period"));
    m.def("floquet_mode_at", &floquet_mode_at, py::arg("solution"), py::arg("j"), py::arg("t"));
    m.def("two_time_correlator",
          [](const FloquetSolution& sol, std::optional<ComplexMatrix> observable) {
              const HermitianOperator o =
                  observable ? HermitianOperator(*observable) : observable_of(sol.protocol.pair);
              return two_time_correlator(sol, o).values;
          },
          py::arg("solution"), py::arg("observable") = py::none(),
          "f_j for every mode; defaults to the model's Sx observable");
    m.def("mean_energy_quadrature_check", &mean_energy_quadrature_check, py::arg("solution"), py::arg("j"),
          py::arg("steps"));
    m.def("geometric_phase_quadrature_check", &geometric_phase_quadrature_check, py::arg("solution"), py::arg("j"),
          py::arg("steps"));

    py::class_<CharacteristicTimes>(m, "CharacteristicTimes")
        .def_readonly("t_c", &CharacteristicTimes::t_c)
        .def_readonly("t_c_prime", &CharacteristicTimes::t_c_prime);
    m.def("characteristic_times", &characteristic_times, py::arg("pair"));

    py::class_<BchBoundReport>(m, "BchBoundReport")
        .def_readonly("bound", &BchBoundReport::bound)
        .def_readonly("max_norm", &BchBoundReport::max_norm)
        .def_readonly("argmax_t0", &BchBoundReport::argmax_t0)
        .def_readonly("violations", &BchBoundReport::violations)
        .def_property_readonly("ok", &BchBoundReport::ok);
    m.def("bch_bound_check", &bch_bound_check, py::arg("pair"), py::arg("period"), py::arg("t0_grid"));
    m.def("uniform_t0_grid", &uniform_t0_grid, py::arg("period"), py::arg("points"));

    py::class_<DeviationSummary>(m, "DeviationSummary")
        .def_readonly("quasi_restricted", &DeviationSummary::quasi_restricted)
        .def_readonly("quasi_extended", &DeviationSummary::quasi_extended)
        .def_readonly("mean", &DeviationSummary::mean);
    m.def("deviation_summary", &deviation_summary, py::arg("pair"), py::arg("period"), py::arg("t0_grid"));
    m.def("deviation",
          [](const ModelPair& p, double period, const std::vector<double>& grid, const std::string& mode,
             const std::string& zone) {
              DeviationMode dm;
              if (mode == "quasienergy") dm = DeviationMode::quasienergy;
              else if (mode == "mean_energy") dm = DeviationMode::mean_energy;
              else throw std::invalid_argument("deviation: mode must be quasienergy or mean_energy");
              ZonePolicy zp;
              if (zone == "restricted") zp = ZonePolicy::restricted;
              else if (zone == "extended") zp = ZonePolicy::extended;
              else throw std::invalid_argument("deviation: zone must be restricted or extended");
              return deviation_metric(p, period, grid, dm, zp).d_value;
          },
          py::arg("pair"), py::arg("period"), py::arg("t0_grid"), py::arg("mode") = "quasienergy",
          py::arg("zone") = "restricted");

    m.def("gsqpt_scan",
          [](const ModelPair& p, double period, const std::vector<double>& grid) {
              std::vector<std::pair<double, double>> out;
              for (const auto& pt : gsqpt_scan(p, period, grid)) out.emplace_back(pt.t0_over_period, pt.re_f0);
              return out;
          },
          py::arg("pair"), py::arg("period"), py::arg("t0_grid"));
    m.def("gsqpt_transition",
          [](const std::vector<std::pair<double, double>>& scan, double rel) {
              std::vector<GsqptPoint> pts;
              for (const auto& [x, f] : scan) pts.push_back({x, f});
              return gsqpt_transition(pts, rel);
          },
          py::arg("scan"), py::arg("rel_threshold") = 0.05);

    py::class_<EsqptResult>(m, "EsqptResult")
        .def_readonly("detected", &EsqptResult::detected)
        .def_readonly("critical_excitation", &EsqptResult::critical_excitation)
        .def_readonly("n_star", &EsqptResult::n_star)
        .def_readonly("excitation", &EsqptResult::excitation)
        .def_readonly("re_correlator", &EsqptResult::re_correlator)
        .def_readonly("smooth", &EsqptResult::smooth);
    m.def("esqpt_locate", &esqpt_locate, py::arg("pair"), py::arg("period"), py::arg("t0"));

    m.def("run_command", &run_command, py::arg("name"), py::arg("settings") = std::map<std::string, std::string>{},
          "Runs a CLI command in memory; returns {'files': {name: text}, 'report': str, 'warnings': [str]}");
}
