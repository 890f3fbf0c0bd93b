#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtiming/constants.hpp"
#include "qtiming/estimation.hpp"
#include "qtiming/noise_budget.hpp"

namespace py = pybind11;
using namespace qtiming;

namespace {

// python-side handle to the (immutable, shared) mode basis
struct Basis {
    std::shared_ptr<const ModeBasis> p;
    const ModeBasis& get() const { return *p; }
};

py::array times_array(const SampledMode& m) {
    py::array_t<double> out(static_cast<py::ssize_t>(m.size()));
    auto buf = out.mutable_unchecked<1>();
    for (std::size_t k = 0; k < m.size(); ++k) {
        buf(static_cast<py::ssize_t>(k)) = m.grid.time_at(k);
    }
    return out;
}

py::array amplitude_array(const SampledMode& m) {
    return py::array_t<std::complex<double>>(
        static_cast<py::ssize_t>(m.amplitude.size()), m.amplitude.data());
}

HomodyneConfig make_lo_py(const Basis& basis, const std::string& mode, double theta_lo,
                          double n_lo, bool strong_lo, double scale) {
    double mix_angle = 0.0;
    const LoMode kind = lo_mode_from_string(mode, &mix_angle);
    return make_lo(basis.p, kind, mix_angle, theta_lo, n_lo, strong_lo, scale);
}

}  // namespace

PYBIND11_MODULE(_qtiming, m) {
    m.doc() = "quantum-limited pulse timing: temporal modes, homodyne statistics, "
              "SQL/squeezed sensitivity, Fisher information, Monte Carlo estimation";

    m.attr("hbar") = hbar;
    m.attr("speed_of_light") = speed_of_light;
    m.def("omega0_from_wavelength", &omega0_from_wavelength, py::arg("wavelength_m"));

    py::enum_<Envelope>(m, "Envelope")
        .value("gaussian", Envelope::gaussian)
        .value("sech", Envelope::sech);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def_readonly("t_start", &TimeGrid::t_start)
        .def_readonly("t_step", &TimeGrid::t_step)
        .def_readonly("n_points", &TimeGrid::n_points)
        .def("window", &TimeGrid::window);

    py::class_<PulseSpec>(m, "PulseSpec")
        .def(py::init([](double omega0, Envelope envelope, double duration_fwhm,
                         double photon_number, double theta) {
                 PulseSpec s{omega0, envelope, duration_fwhm, photon_number, theta};
                 s.validate();
                 return s;
             }),
             py::arg("omega0"), py::arg("envelope"), py::arg("duration_fwhm"),
             py::arg("photon_number"), py::arg("theta") = 0.0)
        .def_readonly("omega0", &PulseSpec::omega0)
        .def_readonly("envelope", &PulseSpec::envelope)
        .def_readonly("duration_fwhm", &PulseSpec::duration_fwhm)
        .def_readonly("photon_number", &PulseSpec::photon_number)
        .def_readonly("theta", &PulseSpec::theta);

    py::class_<SampledMode>(m, "SampledMode")
        .def_readonly("label", &SampledMode::label)
        .def_readonly("grid", &SampledMode::grid)
        .def_property_readonly("times", &times_array)
        .def_property_readonly("amplitude", &amplitude_array);

    py::class_<Basis>(m, "ModeBasis")
        .def_property_readonly("v0", [](const Basis& b) { return b.get().v0; })
        .def_property_readonly("v1", [](const Basis& b) { return b.get().v1; })
        .def_property_readonly("w1", [](const Basis& b) { return b.get().w1; })
        .def_property_readonly("alpha", [](const Basis& b) { return b.get().alpha; })
        .def_property_readonly("u0", [](const Basis& b) { return b.get().u0; })
        .def_property_readonly("delta_omega",
                               [](const Basis& b) { return b.get().delta_omega; })
        .def_property_readonly("grid", [](const Basis& b) { return b.get().grid; });

    m.def("make_grid", &make_grid, py::arg("spec"), py::arg("guard_factor") = 40.0,
          py::arg("n_points") = 65536);
    m.def("make_envelope", &make_envelope, py::arg("spec"), py::arg("grid"));
    m.def("spectral_width", &spectral_width, py::arg("envelope_mode"));
    m.def(
        "build_basis",
        [](const PulseSpec& spec, const TimeGrid& grid) {
            return Basis{std::make_shared<const ModeBasis>(build_basis(spec, grid))};
        },
        py::arg("spec"), py::arg("grid"));
    m.def("shift_mode", &shift_mode, py::arg("mode"), py::arg("delta_u"));
    m.def(
        "project_shift",
        [](const Basis& b, double delta_u) { return project_shift(b.get(), delta_u); },
        py::arg("basis"), py::arg("delta_u"));
    m.def(
        "shift_expansion_residual",
        [](const Basis& b, double delta_u) {
            return shift_expansion_residual(b.get(), delta_u);
        },
        py::arg("basis"), py::arg("delta_u"));

    py::class_<QuadratureState>(m, "QuadratureState")
        .def_readonly("mean_q", &QuadratureState::mean_q)
        .def_readonly("mean_p", &QuadratureState::mean_p)
        .def_readonly("var_q", &QuadratureState::var_q)
        .def_readonly("var_p", &QuadratureState::var_p);

    py::class_<SqueezingSpec>(m, "SqueezingSpec")
        .def(py::init<double, double>(), py::arg("r_phase_v0") = 0.0,
             py::arg("r_amp_v1") = 0.0)
        .def_readonly("r_phase_v0", &SqueezingSpec::r_phase_v0)
        .def_readonly("r_amp_v1", &SqueezingSpec::r_amp_v1);

    py::class_<FieldState>(m, "FieldState")
        .def_readonly("photon_number", &FieldState::photon_number)
        .def_readonly("theta", &FieldState::theta)
        .def_readonly("v0", &FieldState::v0)
        .def_readonly("v1", &FieldState::v1);

    m.def("photons_from_power", &photons_from_power, py::arg("power_w"),
          py::arg("detection_time_s"), py::arg("omega0"));
    m.def(
        "coherent_state",
        [](const Basis& b, double n, double theta) {
            return coherent_state(b.p, n, theta);
        },
        py::arg("basis"), py::arg("photon_number"), py::arg("theta") = 0.0);
    m.def("apply_squeezing", &apply_squeezing, py::arg("state"), py::arg("spec"));
    m.def("apply_inverse_squeezing", &apply_inverse_squeezing, py::arg("state"),
          py::arg("spec"));
    m.def("state_json", &state_json, py::arg("state"));

    py::class_<HomodyneConfig>(m, "HomodyneConfig")
        .def_readonly("theta_lo", &HomodyneConfig::theta_lo)
        .def_readonly("n_lo", &HomodyneConfig::n_lo)
        .def_readonly("strong_lo", &HomodyneConfig::strong_lo)
        .def_readonly("mix_angle", &HomodyneConfig::mix_angle)
        .def_property_readonly(
            "lo_mode", [](const HomodyneConfig& c) { return c.lo_mode; });

    m.def("make_lo", &make_lo_py, py::arg("basis"), py::arg("mode") = "w1",
          py::arg("theta_lo") = 0.0, py::arg("n_lo") = 1e16,
          py::arg("strong_lo") = true, py::arg("scale") = 1.0);
    m.def(
        "make_custom_lo",
        [](const Basis& b, const SampledMode& lo, double theta_lo, double n_lo,
           bool strong_lo, double scale) {
            return make_custom_lo(b.p, lo, theta_lo, n_lo, strong_lo, scale);
        },
        py::arg("basis"), py::arg("lo"), py::arg("theta_lo") = 0.0,
        py::arg("n_lo") = 1e16, py::arg("strong_lo") = true, py::arg("scale") = 1.0);

    m.def("mean_signal", &mean_signal, py::arg("signal"), py::arg("cfg"),
          py::arg("delta_u"));
    m.def("mean_signal_numeric", &mean_signal_numeric, py::arg("signal"),
          py::arg("cfg"), py::arg("delta_u"));
    m.def("variance_signal", &variance_signal, py::arg("signal"), py::arg("cfg"));
    m.def("signal_slope", &signal_slope, py::arg("signal"), py::arg("cfg"));
    m.def("snr_at", &snr_at, py::arg("signal"), py::arg("cfg"), py::arg("delta_u"));
    m.def("min_resolvable_delay", &min_resolvable_delay, py::arg("signal"),
          py::arg("cfg"));
    m.def("sql_tof", &sql_tof, py::arg("photon_number"), py::arg("delta_omega"));
    m.def("sql_phase", &sql_phase, py::arg("photon_number"), py::arg("omega0"));
    m.def("timing_limit", &timing_limit, py::arg("photon_number"), py::arg("omega0"),
          py::arg("delta_omega"), py::arg("var_p0") = 1.0, py::arg("var_q1") = 1.0);

    py::class_<LoDescription>(m, "LoDescription")
        .def_readonly("mix_angle_rad", &LoDescription::mix_angle_rad)
        .def_readonly("theta_lo_rad", &LoDescription::theta_lo_rad);

    py::class_<FisherResult>(m, "FisherResult")
        .def_readonly("fisher_info", &FisherResult::fisher_info)
        .def_readonly("crb", &FisherResult::crb)
        .def_readonly("lo", &FisherResult::lo);

    m.def("fisher_info", &fisher_info, py::arg("signal"), py::arg("cfg"),
          py::arg("delta_u") = 0.0);
    m.def("lo_optimality_scan", &lo_optimality_scan, py::arg("signal"),
          py::arg("n_angles"));

    py::class_<MonteCarloReport>(m, "MonteCarloReport")
        .def_readonly("n_trials", &MonteCarloReport::n_trials)
        .def_readonly("true_delta_u", &MonteCarloReport::true_delta_u)
        .def_readonly("estimator_mean", &MonteCarloReport::estimator_mean)
        .def_readonly("estimator_std", &MonteCarloReport::estimator_std)
        .def_readonly("analytic_bound", &MonteCarloReport::analytic_bound)
        .def_readonly("seed", &MonteCarloReport::seed)
        .def_readonly("generator", &MonteCarloReport::generator);

    m.def(
        "simulate_shots",
        [](const FieldState& signal, const HomodyneConfig& cfg, double delta_u,
           std::size_t n_trials, std::uint64_t seed) {
            const std::vector<double> v =
                simulate_shots(signal, cfg, delta_u, n_trials, seed);
            return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
        },
        py::arg("signal"), py::arg("cfg"), py::arg("delta_u"), py::arg("n_trials"),
        py::arg("seed"));
    m.def(
        "estimate_delay",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> outcomes,
           const FieldState& signal, const HomodyneConfig& cfg, double true_delta_u,
           std::uint64_t seed) {
            const auto buf = outcomes.unchecked<1>();
            const std::span<const double> view(buf.data(0),
                                               static_cast<std::size_t>(buf.shape(0)));
            return estimate_delay(view, signal, cfg, true_delta_u, seed);
        },
        py::arg("outcomes"), py::arg("signal"), py::arg("cfg"),
        py::arg("true_delta_u") = 0.0, py::arg("seed") = 0);
    m.def("run_monte_carlo", &run_monte_carlo, py::arg("signal"), py::arg("cfg"),
          py::arg("delta_u"), py::arg("n_trials"), py::arg("seed"));
    m.def("report_json", &report_json, py::arg("report"));

    m.def("phase_to_timing", &phase_to_timing, py::arg("phase_asd"), py::arg("omega0"));
    m.def("timing_to_phase", &timing_to_phase, py::arg("timing_asd"), py::arg("omega0"));
}
