#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rotabouss/fields.hpp"
#include "rotabouss/params.hpp"

namespace rotabouss {

using cd = std::complex<double>;

enum class TimeScheme {
    ImexEuler,  // first order: implicit diffusion, explicit rest
    ImexCnab2,  // Crank-Nicolson diffusion, Adams-Bashforth rest
    Etd2,       // exact per-mode linear propagator, second-order explicit nonlinearity
};
std::string_view to_string(TimeScheme s);
TimeScheme parse_scheme(std::string_view s);

// y-independent restriction of the Boussinesq system on one x-period.
struct SimConfig {
    PhysicalParams params;
    int nx = 64;  // collocation points in x (even)
    int nz = 32;  // retained vertical modes: l = 0 .. nz-1
    double dt = 2e-3;
    double t_end = 10.0;  // rounded up to a whole number of steps
    SpaceFlag symmetry = SpaceFlag::Full;
    bool dealias = true;
    WaveIndex seed_mode = make_index(1, 0, 1, 1.0, 1.0);
    double seed_amp = 1e-4;
    double diag_every = 0.1;
    TimeScheme scheme = TimeScheme::Etd2;
    bool nonlinear = true;
    // Keep only x-modes j that are multiples of this (invariant subspace).
    int harmonic = 1;
    bool stop_when_steady = false;
    double steady_tol = 1e-8;    // relative change over one time unit
    double steady_after = 5.0;   // no steady detection before this time

    void validate() const;
};

// Retained spectral coefficients, l-major: index l * cols + j for z-mode
// l < rows and x-mode 0 <= j < cols. u, v multiply cos(l pi z), w, T
// sin(l pi z); all multiply e^{i j alpha1 x} plus the conjugate for j > 0.
struct ModalFields {
    int rows = 0;
    int cols = 0;
    std::vector<cd> u, v, w, T;

    ModalFields() = default;
    ModalFields(int r, int c)
        : rows(r), cols(c), u(size()), v(size()), w(size()), T(size()) {}
    std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }
    std::size_t at(int l, int j) const { return static_cast<std::size_t>(l) * cols + j; }
    std::vector<cd>& comp(int c) { return c == 0 ? u : c == 1 ? v : c == 2 ? w : T; }
    const std::vector<cd>& comp(int c) const {
        return c == 0 ? u : c == 1 ? v : c == 2 ? w : T;
    }
};

struct SimState : ModalFields {
    double t = 0.0;
    using ModalFields::ModalFields;
};

struct DiagnosticSample {
    double t = 0.0;
    double ke = 0.0;
    double te = 0.0;
    cd wmode;  // 2 * w coefficient of (j1, l = 1): the amplitude in the eigenvector normalization
    cd tmode;  // same for T
    double growth_rate = 0.0;  // d log|wmode| / dt from the previous sample (NaN at the first)
    double div_max = 0.0;
};

struct Diagnostics {
    std::vector<DiagnosticSample> samples;
    bool steady = false;
    double steady_time = 0.0;
    bool oscillating = false;
    double max_cfl = 0.0;
    std::vector<std::string> warnings;
    SimState final_state;
};

class Simulator {
public:
    explicit Simulator(SimConfig cfg);
    ~Simulator();
    Simulator(Simulator&&) noexcept;
    Simulator& operator=(Simulator&&) noexcept;

    const SimConfig& config() const;
    int x_modes() const;  // cols: j = 0 .. x_modes()-1
    int z_modes() const;  // rows: l = 0 .. z_modes()-1
    GridShape grid() const;  // physical grid used for products and output

    SimState zero_state() const;
    // eps times the real part of the seed-mode eigenvector for its leading root.
    SimState seed_from_eigenvector(double eps) const;
    // Adds amp times the complex eigenvector of branch (0..2) of mode (j, l) to
    // the state and returns its eigenvalue. Branches for j = 0: thermal,
    // inertial+, inertial-; for l = 0: shear only.
    cd seed_mode(SimState& s, int j, int l, int branch, cd amp) const;

    // -(U . grad)(u, v, w, T) on the retained modes, before projection.
    ModalFields nonlinear_term(const SimState& s);
    // Leray projection of (u, w) mode by mode; v and T untouched.
    void project_divfree(ModalFields& f) const;
    // Zeroes the mean flow, modes outside the harmonic family and, in the
    // symmetric space, the parts that break (u,v odd, w,T even) in x.
    void apply_constraints(ModalFields& f) const;

    // Advances one step of the configured scheme. Multistep history lives in
    // the simulator; reset_history() starts a fresh sequence.
    void step(SimState& s);
    void reset_history();

    Diagnostics run();  // from seed_from_eigenvector(seed_amp)
    Diagnostics run(SimState initial);

    DiagnosticSample sample(const SimState& s);
    double kinetic_energy(const ModalFields& s) const;
    double thermal_energy(const ModalFields& s) const;
    double divergence_max(const ModalFields& s);
    FieldOnGrid fields_on_grid(const ModalFields& s);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Field translated by dx: f(x) -> f(x + dx).
SimState shift_x(const SimState& s, double dx, double alpha1);

// Relative L2 distance of coefficient sets.
double relative_change(const ModalFields& a, const ModalFields& b);

struct PeriodEstimate {
    double period = 0.0;
    double stddev = 0.0;
    int crossings = 0;
    double envelope_rate = 0.0;  // fitted exponential growth of the envelope
};

// Period from zero crossings after removing an exponential envelope (fit to
// the log of the local extrema) and the mean. Throws InsufficientOscillations
// with fewer than 5 crossings.
PeriodEstimate measure_period(std::span<const double> t, std::span<const double> signal);
PeriodEstimate measure_period(const Diagnostics& d);

// Binary checkpoint: "RBSIM1", u64 nx, u64 nz, u64 cols, f64 t, then the u,
// v, w, T coefficient arrays (rows = nz) as little-endian f64 (re, im) pairs.
void save_checkpoint(const std::filesystem::path& path, const SimState& s, const SimConfig& cfg);
SimState load_checkpoint(const std::filesystem::path& path, const Simulator& sim);

}  // namespace rotabouss
