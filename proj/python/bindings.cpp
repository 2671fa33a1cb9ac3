#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rotabouss/critical.hpp"
#include "rotabouss/errors.hpp"
#include "rotabouss/reduction.hpp"
#include "rotabouss/simulator.hpp"
#include "rotabouss/spectrum.hpp"

namespace py = pybind11;
using namespace rotabouss;

namespace {

py::tuple index_tuple(const WaveIndex& i) { return py::make_tuple(i.j, i.k, i.l); }

void export_params(py::module_& m) {
    py::enum_<SpaceFlag>(m, "Space").value("FULL", SpaceFlag::Full).value("SYMMETRIC", SpaceFlag::Symmetric);
    py::enum_<LatticeClass>(m, "LatticeClass")
        .value("LAMBDA1", LatticeClass::Lambda1)
        .value("LAMBDA2", LatticeClass::Lambda2)
        .value("LAMBDA3", LatticeClass::Lambda3);

    py::class_<PhysicalParams>(m, "Params")
        .def(py::init([](double sigma, double ro, double rayleigh, double alpha1, double alpha2) {
                 PhysicalParams p{sigma, ro, rayleigh, alpha1, alpha2};
                 p.validate();
                 return p;
             }),
             py::arg("sigma"), py::arg("ro"), py::arg("rayleigh") = 0.0, py::arg("alpha1") = 1.0,
             py::arg("alpha2") = 1.0)
        .def_readwrite("sigma", &PhysicalParams::sigma)
        .def_readwrite("ro", &PhysicalParams::ro)
        .def_readwrite("rayleigh", &PhysicalParams::rayleigh)
        .def_readwrite("alpha1", &PhysicalParams::alpha1)
        .def_readwrite("alpha2", &PhysicalParams::alpha2)
        .def("with_rayleigh", &PhysicalParams::with_rayleigh, py::arg("r"))
        .def("__eq__", [](const PhysicalParams& a, const PhysicalParams& b) { return a == b; })
        .def("__repr__", [](const PhysicalParams& p) {
            return "Params(sigma=" + std::to_string(p.sigma) + ", ro=" + std::to_string(p.ro) +
                   ", rayleigh=" + std::to_string(p.rayleigh) + ", alpha1=" + std::to_string(p.alpha1) +
                   ", alpha2=" + std::to_string(p.alpha2) + ")";
        });

    py::class_<WaveIndex>(m, "WaveIndex")
        .def_readonly("j", &WaveIndex::j)
        .def_readonly("k", &WaveIndex::k)
        .def_readonly("l", &WaveIndex::l)
        .def_readonly("alpha_sq", &WaveIndex::alpha_sq)
        .def_readonly("gamma_sq", &WaveIndex::gamma_sq)
        .def_readonly("lattice_class", &WaveIndex::cls)
        .def("__iter__", [](const WaveIndex& i) { return py::iter(index_tuple(i)); })
        .def("__repr__", [](const WaveIndex& i) {
            return "WaveIndex(" + std::to_string(i.j) + ", " + std::to_string(i.k) + ", " + std::to_string(i.l) + ")";
        });
    m.def("make_index", py::overload_cast<int, int, int, const PhysicalParams&>(&make_index), py::arg("j"),
          py::arg("k"), py::arg("l"), py::arg("params"));

    py::class_<Truncation>(m, "Truncation")
        .def(py::init([](int jmax, int kmax, int lmax, int j_step) { return Truncation{jmax, kmax, lmax, j_step}; }),
             py::arg("jmax") = 8, py::arg("kmax") = 8, py::arg("lmax") = 4, py::arg("j_step") = 1)
        .def_readwrite("jmax", &Truncation::jmax)
        .def_readwrite("kmax", &Truncation::kmax)
        .def_readwrite("lmax", &Truncation::lmax)
        .def_readwrite("j_step", &Truncation::j_step);
    m.def("lattice", &lattice, py::arg("params"), py::arg("truncation") = Truncation{});
}

void export_spectrum(py::module_& m) {
    m.def(
        "cubic_coeffs",
        [](const PhysicalParams& p, int j, int k, int l) {
            const CubicCoeffs c = cubic_coeffs(p, make_index(j, k, l, p));
            return py::make_tuple(c.c2, c.c1, c.c0);
        },
        py::arg("params"), py::arg("j"), py::arg("k"), py::arg("l"),
        "(c2, c1, c0) of the monic cubic in the growth rate");
    m.def(
        "solve_cubic", [](double c2, double c1, double c0) { return solve_cubic({c2, c1, c0}).beta; },
        py::arg("c2"), py::arg("c1"), py::arg("c0"), "roots by descending real part");
    m.def(
        "eigenvalues",
        [](const PhysicalParams& p, int j, int k, int l) { return eigen_triple(p, make_index(j, k, l, p)).beta; },
        py::arg("params"), py::arg("j"), py::arg("k"), py::arg("l"));
    m.def(
        "spectrum",
        [](const PhysicalParams& p, const Truncation& t, SpaceFlag space) {
            py::list rows;
            for (const WaveIndex& idx : lattice(p, t))
                for (const SpectrumEntry& e : spectrum_at(p, idx, space))
                    rows.append(py::make_tuple(idx.j, idx.k, idx.l, std::string(to_string(idx.cls)), e.branch, e.beta));
            return rows;
        },
        py::arg("params"), py::arg("truncation") = Truncation{}, py::arg("space") = SpaceFlag::Full,
        "(j, k, l, class, branch, beta) for every eigenvalue of the truncated lattice");
    m.def(
        "growth_rate",
        [](const PhysicalParams& p, const Truncation& t, SpaceFlag space) {
            const GrowthRate g = growth_rate(p, t, space);
            return py::make_tuple(g.re, g.im, g.index);
        },
        py::arg("params"), py::arg("truncation") = Truncation{}, py::arg("space") = SpaceFlag::Full);
}

void export_critical(py::module_& m) {
    m.def("neutral_value", &neutral_value, py::arg("x"), py::arg("b"));
    m.def("x_star", &x_star, py::arg("b"));
    m.def("steady_threshold", [](const PhysicalParams& p, int j, int k, int l) {
        return steady_threshold(p, make_index(j, k, l, p));
    }, py::arg("params"), py::arg("j"), py::arg("k"), py::arg("l"));
    m.def("hopf_threshold", [](const PhysicalParams& p, int j, int k, int l) {
        return hopf_threshold(p, make_index(j, k, l, p));
    }, py::arg("params"), py::arg("j"), py::arg("k"), py::arg("l"));
    m.def("rc1_closed_form", &rc1_closed_form, py::arg("params"), py::arg("j1"));

    py::enum_<Onset>(m, "Onset").value("STEADY", Onset::Steady).value("HOPF", Onset::Hopf);
    py::class_<CriticalResult>(m, "CriticalResult")
        .def_readonly("r_crit", &CriticalResult::r_crit)
        .def_readonly("onset", &CriticalResult::onset)
        .def_readonly("argmin", &CriticalResult::argmin)
        .def_readonly("unique", &CriticalResult::unique)
        .def_readonly("hopf_admissible", &CriticalResult::hopf_admissible)
        .def_readonly("hopf_freq", &CriticalResult::hopf_freq)
        .def_readonly("minimizers", &CriticalResult::minimizers);
    m.def("rc1", &rc1, py::arg("params"), py::arg("jmax") = 8, py::arg("kmax") = 8, py::arg("j_step") = 1);
    m.def("rc2", &rc2, py::arg("params"), py::arg("jmax") = 8, py::arg("kmax") = 8, py::arg("j_step") = 1);

    py::enum_<Uniqueness>(m, "Uniqueness")
        .value("HOLDS", Uniqueness::Holds)
        .value("HOLDS_GENERICALLY", Uniqueness::HoldsGenerically)
        .value("FAILS", Uniqueness::Fails);
    py::class_<UniquenessCheck>(m, "UniquenessCheck")
        .def_readonly("status", &UniquenessCheck::status)
        .def_readonly("j_crit", &UniquenessCheck::j_crit)
        .def_readonly("witnesses", &UniquenessCheck::witnesses)
        .def_readonly("xb", &UniquenessCheck::xb);
    m.def("check_steady_uniqueness", &check_c6, py::arg("params"));
    m.def("check_hopf_uniqueness", &check_c7, py::arg("params"));

    m.def(
        "pes_scan",
        [](const PhysicalParams& p, double lo, double hi, int n, SpaceFlag space, const Truncation& t) {
            py::list rows;
            for (const PesRow& r : pes_scan(p, lo, hi, n, space, t).rows)
                rows.append(py::make_tuple(r.r, r.re_max, r.im_at_max, r.index));
            return rows;
        },
        py::arg("params"), py::arg("r_lo"), py::arg("r_hi"), py::arg("n"), py::arg("space") = SpaceFlag::Full,
        py::arg("truncation") = Truncation{}, "(R, max Re beta, Im beta at the max, index) per sample");
    m.def(
        "ro_asymptotics",
        [](double sigma, double a1, double a2, const std::vector<double>& ro) {
            const Asymptotics a = ro_asymptotics(sigma, a1, a2, ro);
            py::list rows;
            for (const AsymptoticsRow& r : a.rows)
                rows.append(py::make_tuple(r.ro, r.rc1_continuous, r.rc1_lattice, r.lattice_argmin));
            return py::make_tuple(a.slope, a.lattice_slope, rows);
        },
        py::arg("sigma"), py::arg("alpha1"), py::arg("alpha2"), py::arg("ro_list"),
        "(slope, lattice slope, rows of (Ro, continuous R_c1, lattice R_c1, index))");
}

void export_reduction(py::module_& m) {
    m.def("delta", &delta, py::arg("params"), py::arg("j1"));
    py::class_<AmplitudeModel>(m, "AmplitudeModel")
        .def_readonly("j1", &AmplitudeModel::j1)
        .def_readonly("r_c1", &AmplitudeModel::r_c1)
        .def_readonly("delta", &AmplitudeModel::delta)
        .def("beta_of_r", &AmplitudeModel::beta_of_r, py::arg("r"))
        .def("radius_pred", &AmplitudeModel::radius_pred, py::arg("r"));
    m.def("build_amplitude_model", &build_amplitude_model, py::arg("params"));
    m.def(
        "integrate_amplitude",
        [](const AmplitudeModel& model, double r, double x0, double y0, double t_end, double dt) {
            const Trajectory tr = integrate_amplitude(model, r, x0, y0, t_end, dt);
            return py::make_tuple(tr.t, tr.x, tr.y);
        },
        py::arg("model"), py::arg("r"), py::arg("x0"), py::arg("y0"), py::arg("t_end"), py::arg("dt") = 1e-2,
        "(t, x, y) lists from fixed-step RK4");
}

void export_simulator(py::module_& m) {
    m.def(
        "simulate",
        [](const PhysicalParams& p, int nx, int nz, double dt, double t_end, double seed_amp, SpaceFlag symmetry,
           double diag_every, int seed_j, int seed_l, int harmonic, const std::string& scheme, bool nonlinear,
           bool stop_when_steady) {
            SimConfig c;
            c.params = p;
            c.nx = nx;
            c.nz = nz;
            c.dt = dt;
            c.t_end = t_end;
            c.seed_amp = seed_amp;
            c.symmetry = symmetry;
            c.diag_every = diag_every;
            c.seed_mode = make_index(seed_j, 0, seed_l, p);
            c.harmonic = harmonic;
            c.scheme = parse_scheme(scheme);
            c.nonlinear = nonlinear;
            c.stop_when_steady = stop_when_steady;
            Diagnostics d;
            {
                py::gil_scoped_release release;
                d = Simulator(c).run();
            }
            py::dict out;
            std::vector<double> t, ke, te, growth, div;
            std::vector<std::complex<double>> w;
            for (const DiagnosticSample& s : d.samples) {
                t.push_back(s.t);
                ke.push_back(s.ke);
                te.push_back(s.te);
                w.push_back(s.wmode);
                growth.push_back(s.growth_rate);
                div.push_back(s.div_max);
            }
            out["t"] = t;
            out["ke"] = ke;
            out["te"] = te;
            out["wmode"] = w;
            out["growth_rate"] = growth;
            out["div_max"] = div;
            out["steady"] = d.steady;
            out["steady_time"] = d.steady_time;
            out["oscillating"] = d.oscillating;
            out["warnings"] = d.warnings;
            return out;
        },
        py::arg("params"), py::arg("nx") = 64, py::arg("nz") = 32, py::arg("dt") = 2e-3, py::arg("t_end") = 10.0,
        py::arg("seed_amp") = 1e-4, py::arg("symmetry") = SpaceFlag::Full, py::arg("diag_every") = 0.1,
        py::arg("seed_j") = 1, py::arg("seed_l") = 1, py::arg("harmonic") = 1, py::arg("scheme") = "etd2",
        py::arg("nonlinear") = true, py::arg("stop_when_steady") = false,
        "Runs the 2-D simulation; returns diagnostics as a dict of lists");
}

}  // namespace

PYBIND11_MODULE(_rotabouss, m) {
    m.doc() = "Rotating Boussinesq convection: spectra, onset thresholds, amplitude model, 2-D simulation";
    m.attr("__version__") = ROTABOUSS_VERSION;

    // Derived translators are registered last so they are tried first.
    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<OutOfLattice>(m, "OutOfLattice", base.ptr());
    py::register_exception<WrongClass>(m, "WrongClass", base.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
    py::register_exception<SingularShift>(m, "SingularShift", base.ptr());
    py::register_exception<TruncationTooSmall>(m, "TruncationTooSmall", base.ptr());
    py::register_exception<SigmaOutOfRange>(m, "SigmaOutOfRange", base.ptr());
    py::register_exception<PositiveDelta>(m, "PositiveDelta", base.ptr());
    py::register_exception<BlowUp>(m, "BlowUp", base.ptr());
    py::register_exception<InsufficientOscillations>(m, "InsufficientOscillations", base.ptr());

    export_params(m);
    export_spectrum(m);
    export_critical(m);
    export_reduction(m);
    export_simulator(m);
}
