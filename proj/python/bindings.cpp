#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sensorlife/channel.hpp"
#include "sensorlife/config.hpp"
#include "sensorlife/energy.hpp"
#include "sensorlife/errors.hpp"
#include "sensorlife/oracle.hpp"
#include "sensorlife/policy.hpp"
#include "sensorlife/roots.hpp"
#include "sensorlife/simulation.hpp"
#include "sensorlife/units.hpp"

namespace py = pybind11;
namespace sl = sensorlife;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lifetime-optimal compression, modulation and power policies";

    auto base = py::register_exception<sl::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<sl::ParameterError>(m, "ParameterError", base);
    py::register_exception<sl::ConfigError>(m, "ConfigError", base);
    py::register_exception<sl::InfeasibleError>(m, "InfeasibleError", base);
    py::register_exception<sl::RootError>(m, "RootError", base);
    py::register_exception<sl::EmptyFeasibleSetError>(m, "EmptyFeasibleSetError", base);
    py::register_exception<sl::IoError>(m, "IoError", base);

    py::class_<sl::SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("mu", &sl::SystemParams::mu)
        .def_readwrite("varsigma", &sl::SystemParams::varsigma)
        .def_readwrite("p_cp", &sl::SystemParams::p_cp)
        .def_readwrite("p_syn", &sl::SystemParams::p_syn)
        .def_readwrite("p_fil", &sl::SystemParams::p_fil)
        .def_readwrite("p_mix", &sl::SystemParams::p_mix)
        .def_readwrite("v_op", &sl::SystemParams::v_op)
        .def_readwrite("b_cap", &sl::SystemParams::b_cap)
        .def_readwrite("t_s", &sl::SystemParams::t_s)
        .def_readwrite("omega1", &sl::SystemParams::omega1)
        .def_readwrite("omega2", &sl::SystemParams::omega2)
        .def_readwrite("d", &sl::SystemParams::d)
        .def_readwrite("sigma2", &sl::SystemParams::sigma2)
        .def_readwrite("data_bits", &sl::SystemParams::data_bits)
        .def_readwrite("tau", &sl::SystemParams::tau)
        .def_readwrite("beta", &sl::SystemParams::beta)
        .def_readwrite("phi", &sl::SystemParams::phi)
        .def_readwrite("t_block", &sl::SystemParams::t_block)
        .def_readwrite("lambda_", &sl::SystemParams::lambda)
        .def_readwrite("alpha", &sl::SystemParams::alpha)
        .def_readwrite("l_max", &sl::SystemParams::l_max)
        .def_readwrite("t_sen", &sl::SystemParams::t_sen)
        .def_readwrite("p_sen", &sl::SystemParams::p_sen)
        .def_readwrite("vartheta", &sl::SystemParams::vartheta)
        .def_readwrite("b_feedback", &sl::SystemParams::b_feedback)
        .def_readwrite("p_t_max", &sl::SystemParams::p_t_max);

    py::class_<sl::DerivedConstants>(m, "DerivedConstants")
        .def_readonly("kappa", &sl::DerivedConstants::kappa)
        .def_readonly("p_o", &sl::DerivedConstants::p_o)
        .def_readonly("omega_cap", &sl::DerivedConstants::omega_cap)
        .def_readonly("m_max", &sl::DerivedConstants::m_max)
        .def_readonly("theta_gate", &sl::DerivedConstants::theta_gate);

    m.def("table_defaults", &sl::table_defaults);
    m.def("desk_defaults", &sl::desk_defaults);
    m.def("dbm_to_watts", &sl::dbm_to_watts);
    m.def("watts_to_dbm", &sl::watts_to_dbm);
    m.def("derive", &sl::derive);

    py::class_<sl::BlockOutcome>(m, "BlockOutcome")
        .def_readonly("t_cp", &sl::BlockOutcome::t_cp)
        .def_readonly("t_tx", &sl::BlockOutcome::t_tx)
        .def_readonly("p_tx", &sl::BlockOutcome::p_tx)
        .def_readonly("psi", &sl::BlockOutcome::psi)
        .def_readonly("ber_bound", &sl::BlockOutcome::ber_bound)
        .def_readonly("feasible_delay", &sl::BlockOutcome::feasible_delay)
        .def_readonly("feasible_power", &sl::BlockOutcome::feasible_power);

    m.def("compression_time", &sl::compression_time, py::arg("data_bits"), py::arg("d_cp"), py::arg("tau"), py::arg("beta"));
    m.def("tx_rate", &sl::tx_rate, py::arg("m"), py::arg("t_s"));
    m.def("tx_time", &sl::tx_time, py::arg("d_cp"), py::arg("m"), py::arg("t_s"));
    m.def("par", &sl::par, py::arg("m"));
    m.def("tx_power_total", &sl::tx_power_total, py::arg("p_t"), py::arg("m"), py::arg("p_o"), py::arg("mu"));
    m.def("snr", &sl::snr, py::arg("p_t"), py::arg("h2"), py::arg("params"), py::arg("derived"));
    m.def("ber_bound", &sl::ber_bound, py::arg("m"), py::arg("gamma"), py::arg("omega1"), py::arg("omega2"));
    m.def("psi", &sl::psi, py::arg("m"), py::arg("d_cp"), py::arg("p_t"), py::arg("h2"), py::arg("params"), py::arg("derived"));
    m.def("lifetime", &sl::lifetime, py::arg("expected_psi"), py::arg("params"));

    py::class_<sl::Quantizer>(m, "Quantizer")
        .def_readonly("b", &sl::Quantizer::b)
        .def_readonly("varsigma", &sl::Quantizer::varsigma)
        .def_readonly("levels", &sl::Quantizer::levels);
    m.def("build_quantizer", &sl::build_quantizer, py::arg("b"), py::arg("varsigma"));
    m.def("quantize", &sl::quantize, py::arg("h2"), py::arg("q"));

    m.def("solve_d_min", &sl::solve_d_min, py::arg("params"), py::arg("m_max"));

    py::enum_<sl::Branch>(m, "Branch")
        .value("unconstrained", sl::Branch::unconstrained)
        .value("delay_active", sl::Branch::delay_active)
        .value("clamped", sl::Branch::clamped);

    py::class_<sl::StationaryPoint>(m, "StationaryPoint")
        .def_readonly("m_tilde", &sl::StationaryPoint::m_tilde)
        .def_readonly("d_cp_tilde", &sl::StationaryPoint::d_cp_tilde)
        .def_readonly("q_time", &sl::StationaryPoint::q_time)
        .def_readonly("m_hat", &sl::StationaryPoint::m_hat)
        .def_readonly("d_cp_hat", &sl::StationaryPoint::d_cp_hat)
        .def_readonly("xi", &sl::StationaryPoint::xi);

    py::class_<sl::Policy>(m, "Policy")
        .def_readonly("transmit", &sl::Policy::transmit)
        .def_readonly("m_real", &sl::Policy::m_real)
        .def_readonly("d_cp", &sl::Policy::d_cp)
        .def_readonly("p_t", &sl::Policy::p_t)
        .def_readonly("branch", &sl::Policy::branch)
        .def_readonly("feasible_power", &sl::Policy::feasible_power)
        .def_readonly("psi", &sl::Policy::psi)
        .def_readonly("m_practical", &sl::Policy::m_practical)
        .def_readonly("d_cp_practical", &sl::Policy::d_cp_practical)
        .def_readonly("p_t_practical", &sl::Policy::p_t_practical)
        .def_readonly("psi_practical", &sl::Policy::psi_practical)
        .def_readonly("design_gain", &sl::Policy::design_gain)
        .def_readonly("stationary", &sl::Policy::stationary);

    py::class_<sl::PolicyTable>(m, "PolicyTable")
        .def_readonly("b", &sl::PolicyTable::b)
        .def_readonly("entries", &sl::PolicyTable::entries);

    m.def("prop1_power", &sl::prop1_power, py::arg("m"), py::arg("h2"), py::arg("derived"));
    m.def("prop2_power", &sl::prop2_power, py::arg("m"), py::arg("params"), py::arg("derived"));
    m.def("scenario1_solve", &sl::scenario1_solve, py::arg("h2"), py::arg("params"), py::arg("derived"));
    m.def("scenario3_solve", &sl::scenario3_solve, py::arg("params"), py::arg("derived"));
    m.def("baseline_solve", &sl::baseline_solve, py::arg("h2"), py::arg("params"), py::arg("derived"));
    m.def("practical_modulation", &sl::practical_modulation, py::arg("m_star"), py::arg("h2"), py::arg("params"));
    m.def("scenario2_table", &sl::scenario2_table, py::arg("params"), py::arg("derived"), py::arg("q"));
    m.def("threshold_gate", &sl::threshold_gate, py::arg("h2"), py::arg("derived"));

    py::class_<sl::GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("m_points", &sl::GridSpec::m_points)
        .def_readwrite("dcp_points", &sl::GridSpec::dcp_points)
        .def_readwrite("workers", &sl::GridSpec::workers);
    py::class_<sl::GridMinimum>(m, "GridMinimum")
        .def_readonly("m", &sl::GridMinimum::m)
        .def_readonly("d_cp", &sl::GridMinimum::d_cp)
        .def_readonly("p_t", &sl::GridMinimum::p_t)
        .def_readonly("psi", &sl::GridMinimum::psi)
        .def_readonly("feasible_points", &sl::GridMinimum::feasible_points);
    m.def("grid_minimize_s1", &sl::grid_minimize_s1, py::arg("h2"), py::arg("params"), py::arg("derived"), py::arg("grid"),
          py::call_guard<py::gil_scoped_release>());
    m.def("grid_minimize_s3", &sl::grid_minimize_s3, py::arg("params"), py::arg("derived"), py::arg("grid"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<sl::SweepRow>(m, "SweepRow")
        .def_readonly("swept_var", &sl::SweepRow::swept_var)
        .def_readonly("swept_value", &sl::SweepRow::swept_value)
        .def_readonly("feasible", &sl::SweepRow::feasible)
        .def_readonly("note", &sl::SweepRow::note)
        .def_readonly("e_psi", &sl::SweepRow::e_psi)
        .def_readonly("e_psi_stderr", &sl::SweepRow::e_psi_stderr)
        .def_readonly("lifetime_s", &sl::SweepRow::lifetime_s)
        .def_readonly("lifetime_days", &sl::SweepRow::lifetime_days)
        .def_readonly("mean_dcp_ratio", &sl::SweepRow::mean_dcp_ratio)
        .def_readonly("mean_rate_bps", &sl::SweepRow::mean_rate_bps)
        .def_readonly("mean_m", &sl::SweepRow::mean_m)
        .def_readonly("outage_frac", &sl::SweepRow::outage_frac)
        .def_readonly("branch_unconstrained", &sl::SweepRow::branch_unconstrained)
        .def_readonly("branch_delay_active", &sl::SweepRow::branch_delay_active)
        .def_readonly("branch_clamped", &sl::SweepRow::branch_clamped);
    py::class_<sl::SweepResult>(m, "SweepResult").def_readonly("rows", &sl::SweepResult::rows);

    m.def(
        "simulate",
        [](const std::string& scenario, const sl::SystemParams& params, std::int64_t blocks, std::uint64_t seed,
           int workers, bool practical) {
            sl::SimConfig cfg;
            cfg.scenario = sl::parse_scenario(scenario);
            cfg.blocks = blocks;
            cfg.seed = seed;
            cfg.workers = workers;
            cfg.practical = practical;
            py::gil_scoped_release release;
            return sl::simulate(cfg, params);
        },
        py::arg("scenario"), py::arg("params"), py::arg("blocks") = 100000, py::arg("seed") = 1, py::arg("workers") = 1,
        py::arg("practical") = false);
    m.def(
        "sweep",
        [](const std::string& scenario, const sl::SystemParams& params, const std::string& sweep_spec, std::int64_t blocks,
           std::uint64_t seed, int workers, bool practical) {
            sl::SimConfig cfg;
            cfg.scenario = sl::parse_scenario(scenario);
            cfg.blocks = blocks;
            cfg.seed = seed;
            cfg.workers = workers;
            cfg.practical = practical;
            cfg.sweep = sl::parse_sweep(sweep_spec);
            py::gil_scoped_release release;
            return sl::sweep(cfg, params);
        },
        py::arg("scenario"), py::arg("params"), py::arg("sweep"), py::arg("blocks") = 100000, py::arg("seed") = 1,
        py::arg("workers") = 1, py::arg("practical") = false);
    m.def("expected_psi_quantized", &sl::expected_psi_quantized, py::arg("params"), py::arg("derived"), py::arg("b"),
          py::arg("practical") = false);
    m.def("format_csv", &sl::format_csv);
    m.def("emit_csv", &sl::emit_csv, py::arg("result"), py::arg("path"));
    m.def("load_params", [](const std::string& source) { return sl::load_config(source).params; }, py::arg("source"));
}
