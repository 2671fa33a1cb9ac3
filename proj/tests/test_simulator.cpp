#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "rotabouss/errors.hpp"
#include "rotabouss/reduction.hpp"
#include "rotabouss/simulator.hpp"
#include "rotabouss/spectrum.hpp"
#include "verify/oracles.hpp"

using namespace rotabouss;
namespace fz = oracle::frozen;

namespace {

SimConfig steady_config(double factor, int nx = 24, int nz = 12) {
    SimConfig c;
    c.params = oracle::steady_example(factor * fz::kSteadyRc1);
    c.nx = nx;
    c.nz = nz;
    c.dt = 5e-3;
    c.seed_mode = make_index(1, 0, 1, c.params);
    return c;
}

// Parseval pairing of two coefficient sets over one cell.
double modal_inner(const ModalFields& a, const ModalFields& b, double lx) {
    double total = 0.0;
    for (int c = 0; c < 4; ++c)
        for (int l = 0; l < a.rows; ++l)
            for (int j = 0; j < a.cols; ++j) {
                const std::size_t i = a.at(l, j);
                const double w = (l == 0 ? 1.0 : 0.5) * (j == 0 ? 1.0 : 2.0);
                total += w * (a.comp(c)[i] * std::conj(b.comp(c)[i])).real();
            }
    return lx * total;
}

SimState random_state(const Simulator& sim, std::uint64_t seed, double amp) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N;
    SimState s = sim.zero_state();
    for (int c = 0; c < 4; ++c)
        for (int l = 0; l < s.rows; ++l)
            for (int j = 0; j < s.cols; ++j) {
                const double decay = amp * std::exp(-0.3 * (j + l));
                s.comp(c)[s.at(l, j)] = j == 0 ? cd(decay * N(rng), 0.0) : decay * cd(N(rng), N(rng));
            }
    sim.project_divfree(s);
    sim.apply_constraints(s);
    return s;
}

double max_abs(const std::vector<cd>& v) {
    double m = 0.0;
    for (const cd& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

TEST_CASE("configuration checks") {
    SimConfig c = steady_config(1.0);
    CHECK_NOTHROW(Simulator{c});
    auto bad = [&](auto mutate) {
        SimConfig b = c;
        mutate(b);
        CHECK_THROWS_AS(Simulator{b}, PreconditionError);
    };
    bad([](SimConfig& b) { b.nx = 25; });
    bad([](SimConfig& b) { b.nz = 1; });
    bad([](SimConfig& b) { b.dt = 0.0; });
    bad([](SimConfig& b) { b.seed_mode = make_index(1, 1, 1, 1.0, 1.0); });
    bad([](SimConfig& b) { b.seed_mode = make_index(1, 0, 0, 1.0, 1.0); });
    bad([](SimConfig& b) { b.seed_mode = make_index(20, 0, 1, 1.0, 1.0); });
    bad([](SimConfig& b) { b.harmonic = 2; });
    CHECK(parse_scheme(to_string(TimeScheme::ImexCnab2)) == TimeScheme::ImexCnab2);
    CHECK_THROWS_AS(parse_scheme("rk4"), PreconditionError);

    const Simulator sim(c);
    CHECK(sim.x_modes() == (24 - 1) / 3 + 1);
    CHECK(sim.z_modes() == 12);
    CHECK(sim.grid().nz == (3 * 12 + 1) / 2);
    c.dealias = false;
    CHECK(Simulator(c).x_modes() == 12);
    CHECK(Simulator(c).grid().nz == 12);
    const SimState z = sim.seed_from_eigenvector(0.0);
    for (int k = 0; k < 4; ++k) CHECK(max_abs(z.comp(k)) == 0.0);
    CHECK_THROWS_AS(sim.seed_from_eigenvector(-1.0), PreconditionError);
}

TEST_CASE("nonlinear term: zero velocity and the critical self-interaction") {
    SimConfig c = steady_config(1.0, 32, 16);
    Simulator sim(c);
    SimState s = random_state(sim, 1, 1.0);
    std::fill(s.u.begin(), s.u.end(), cd{});
    std::fill(s.w.begin(), s.w.end(), cd{});
    const ModalFields n0 = sim.nonlinear_term(s);
    for (int k = 0; k < 4; ++k) CHECK(max_abs(n0.comp(k)) == 0.0);

    // real critical eigenvector psi_1 with w = cos(a x) sin(pi z)
    const SimState psi = sim.seed_from_eigenvector(1.0);
    ModalFields n = sim.nonlinear_term(psi);
    sim.project_divfree(n);
    const double beta = eigen_triple(c.params, c.seed_mode).beta[0].real();
    const InteractionTable t = interaction_closed_form(c.params, 1, beta);
    const auto& g = t.direct[0][0];
    // v = g sin(2 a x): e^{2iax} coefficient is -i g / 2; T = g sin(2 pi z) on (l = 2, j = 0)
    ModalFields want(n.rows, n.cols);
    want.v[want.at(0, 2)] = cd(0.0, -0.5 * g[VSin2x]);
    want.T[want.at(2, 0)] = g[TSin2z];
    for (int k = 0; k < 4; ++k) {
        double diff = 0.0;
        for (std::size_t i = 0; i < n.size(); ++i) diff = std::max(diff, std::abs(n.comp(k)[i] - want.comp(k)[i]));
        CHECK(diff <= 1e-10);
    }
}

TEST_CASE("nonlinear term conserves the quadratic energy") {
    Simulator sim(steady_config(1.0, 32, 16));
    const double lx = sim.grid().lx();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SimState s = random_state(sim, seed, 1.0);
        ModalFields n = sim.nonlinear_term(s);
        sim.project_divfree(n);
        const double e = modal_inner(s, s, lx);
        CHECK(std::abs(modal_inner(n, s, lx)) <= 1e-10 * e * std::sqrt(e));
    }
}

TEST_CASE("projection: gradients vanish, solenoidal fields and v, T are untouched") {
    Simulator sim(steady_config(1.0));
    const double a = sim.config().params.alpha1;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> N;
    // gradient of phi = sum c e^{ijax} cos(l pi z): (ij a c, -l pi c)
    ModalFields grad(sim.z_modes(), sim.x_modes());
    for (int l = 1; l < grad.rows; ++l)
        for (int j = 1; j < grad.cols; ++j) {
            const cd c(N(rng), N(rng));
            grad.u[grad.at(l, j)] = cd(0.0, j * a) * c;
            grad.w[grad.at(l, j)] = -l * kPi * c;
        }
    sim.project_divfree(grad);
    CHECK(max_abs(grad.u) < 1e-12);
    CHECK(max_abs(grad.w) < 1e-12);

    SimState s = random_state(sim, 4, 1.0);
    const SimState before = s;
    sim.project_divfree(s);
    CHECK(relative_change(s, before) < 1e-15);
    CHECK(sim.divergence_max(s) < 1e-13);

    ModalFields r = random_state(sim, 5, 1.0);
    for (auto& z : r.u) z += cd(N(rng), N(rng));
    const ModalFields vt = r;
    sim.project_divfree(r);
    ModalFields r2 = r;
    sim.project_divfree(r2);
    CHECK(relative_change(r2, r) < 1e-15);
    CHECK(r.v == vt.v);
    CHECK(r.T == vt.T);
    CHECK(sim.divergence_max(r) < 1e-12);
}

TEST_CASE("linear operator reproduces the spectrum mode by mode") {
    for (const PhysicalParams& p :
         {oracle::steady_example(1.05 * fz::kSteadyRc1), oracle::hopf_example(1.03 * fz::kHopfRc2)}) {
        SimConfig c;
        c.params = p;
        c.nx = 24;
        c.nz = 8;
        c.dt = 1e-3;
        c.nonlinear = false;
        c.seed_mode = make_index(3, 0, 1, p);
        Simulator sim(c);
        for (auto [j, l] : {std::pair{1, 1}, {3, 1}, {2, 2}, {0, 1}, {0, 3}, {1, 0}, {4, 3}})
            for (int branch = 0; branch < 3; ++branch) {
                if (l == 0 && branch > 0) continue;
                SimState s = sim.zero_state();
                const cd beta = sim.seed_mode(s, j, l, branch, cd(1e-3, 2e-4));
                auto pick = [&] {
                    const std::size_t i = s.at(l, j);
                    return j >= 1 && l >= 1 ? s.w[i] : j == 0 ? s.u[i] + s.T[i] : s.v[i];
                };
                // one time unit, shortened for branches that would decay below round-off
                const int steps = static_cast<int>(std::lround(std::min(1.0, 10.0 / std::abs(beta.real())) / c.dt));
                cd rate = 0.0, prev = pick();
                sim.reset_history();
                for (int n = 0; n < steps; ++n) {
                    sim.step(s);
                    const cd cur = pick();
                    rate += std::log(cur / prev);
                    prev = cur;
                }
                rate /= steps * c.dt;
                CHECK(std::abs(rate - beta) <= 1e-4 * std::abs(beta));
            }
    }
}

TEST_CASE("semi-implicit schemes converge at their nominal order") {
    auto error_at = [](TimeScheme scheme, double dt) {
        SimConfig c = steady_config(0.5);
        c.scheme = scheme;
        c.dt = dt;
        c.nonlinear = false;
        Simulator sim(c);
        SimState s = sim.zero_state();
        const cd beta = sim.seed_mode(s, 1, 1, 0, 1.0);
        const cd w0 = s.w[s.at(1, 1)];
        const int steps = static_cast<int>(std::lround(0.5 / dt));
        for (int n = 0; n < steps; ++n) sim.step(s);
        return std::abs(s.w[s.at(1, 1)] - w0 * std::exp(beta * 0.5));
    };
    const double e1 = error_at(TimeScheme::ImexEuler, 2e-4), e2 = error_at(TimeScheme::ImexEuler, 1e-4);
    CHECK(std::log2(e1 / e2) == doctest::Approx(1.0).epsilon(0.1));
    const double c1 = error_at(TimeScheme::ImexCnab2, 2e-4), c2 = error_at(TimeScheme::ImexCnab2, 1e-4);
    CHECK(std::log2(c1 / c2) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(error_at(TimeScheme::Etd2, 1e-2) < 1e-12);
}

TEST_CASE("constraints: mean flow, symmetric subspace, harmonic family") {
    SimConfig c = steady_config(1.05);
    c.symmetry = SpaceFlag::Symmetric;
    Simulator sim(c);
    SimState s = random_state(sim, 6, 0.5);
    for (int n = 0; n < 50; ++n) {
        sim.step(s);
        CHECK(s.u[0] == cd{});
        CHECK(s.v[0] == cd{});
        double asym = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            asym = std::max({asym, std::abs(s.u[i].real()), std::abs(s.v[i].real()), std::abs(s.w[i].imag()),
                             std::abs(s.T[i].imag())});
        CHECK(asym <= 1e-12);
    }
    CHECK(max_abs(s.w) > 0.0);

    SimConfig h = steady_config(1.05, 48, 12);
    h.harmonic = 3;
    h.seed_mode = make_index(3, 0, 1, h.params);
    Simulator hs(h);
    SimState t = random_state(hs, 7, 0.5);
    for (int n = 0; n < 20; ++n) hs.step(t);
    for (int l = 0; l < t.rows; ++l)
        for (int j = 0; j < t.cols; ++j)
            if (j % 3 != 0)
                for (int k = 0; k < 4; ++k) CHECK(t.comp(k)[t.at(l, j)] == cd{});
}

TEST_CASE("no buoyancy: kinetic energy decays monotonically") {
    SimConfig c = steady_config(0.0);
    c.t_end = 3.0;
    c.diag_every = 0.05;
    Simulator sim(c);
    const Diagnostics d = sim.run(random_state(sim, 8, 0.05));
    REQUIRE(d.samples.size() > 10);
    for (std::size_t i = 1; i < d.samples.size(); ++i) CHECK(d.samples[i].ke <= d.samples[i - 1].ke);
    CHECK(d.samples.back().ke < 1e-6 * d.samples.front().ke);
    for (const auto& smp : d.samples) CHECK(smp.div_max <= 1e-10);
}

TEST_CASE("early growth follows the leading eigenvalue") {
    SimConfig c = steady_config(1.05);
    c.t_end = 8.0;
    c.seed_amp = 1e-4;
    c.diag_every = 0.5;
    Simulator sim(c);
    const Diagnostics d = sim.run();
    const double beta = fz::kSteadyRootsAt105[0];
    for (const auto& smp : d.samples)
        if (smp.t >= 2.0) CHECK(smp.growth_rate == doctest::Approx(beta).epsilon(0.02));
    CHECK(std::abs(d.samples.back().wmode) < 0.1);  // still linear after 8 time units
}

TEST_CASE("saturated amplitude: steady detection and grid refinement") {
    auto saturate = [](int nx, int nz) {
        SimConfig c = steady_config(1.05, nx, nz);
        c.t_end = 60.0;
        c.seed_amp = 0.1;
        c.diag_every = 0.5;
        c.stop_when_steady = true;
        Simulator sim(c);
        const Diagnostics d = sim.run();
        CHECK(d.steady);
        CHECK(d.steady_time >= c.steady_after);
        CHECK_FALSE(d.oscillating);
        for (const auto& smp : d.samples) CHECK(smp.div_max <= 1e-10);
        return std::abs(d.samples.back().wmode);
    };
    const double coarse = saturate(24, 12), fine = saturate(48, 24);
    CHECK(std::abs(coarse - fine) < 0.01 * fine);
    const double pred = build_amplitude_model(oracle::steady_example()).radius_pred(1.05 * fz::kSteadyRc1);
    CHECK(std::abs(fine - pred) < 0.15 * pred);
}

TEST_CASE("translation maps steady states to steady states") {
    SimConfig c = steady_config(1.05);
    c.t_end = 40.0;
    c.seed_amp = 0.1;
    c.diag_every = 1.0;
    Simulator sim(c);
    const Diagnostics d = sim.run();
    REQUIRE(d.steady);
    const double lx = sim.grid().lx();
    const SimState same = shift_x(d.final_state, lx, c.params.alpha1);
    CHECK(relative_change(same, d.final_state) < 1e-12);

    const double dx = 0.3 * lx;
    const SimState moved = shift_x(d.final_state, dx, c.params.alpha1);
    SimConfig c2 = c;
    c2.t_end = 3.0;
    Simulator sim2(c2);
    const Diagnostics e = sim2.run(moved);
    CHECK(relative_change(e.final_state, moved) < 1e-7);
    const cd w0 = d.samples.back().wmode, w1 = e.samples.back().wmode;
    CHECK(std::abs(std::abs(w1) - std::abs(w0)) < 1e-7 * std::abs(w0));
    CHECK(std::abs(w1 - w0 * std::polar(1.0, c.params.alpha1 * dx)) < 1e-7 * std::abs(w0));
}

TEST_CASE("blow-up and advisory warnings") {
    SimConfig c = steady_config(1.05);
    c.seed_amp = 1e7;
    c.t_end = 1.0;
    CHECK_THROWS_AS(Simulator(c).run(), BlowUp);

    SimConfig w = steady_config(1.05, 32, 16);
    w.dt = 1e-2;
    w.t_end = 15.0;
    w.seed_amp = 0.5;
    const Diagnostics d = Simulator(w).run();
    CHECK(d.max_cfl >= 0.5);
    CHECK_FALSE(d.warnings.empty());
}

TEST_CASE("period measurement") {
    std::vector<double> t, s;
    for (int i = 0; i <= 4000; ++i) {
        t.push_back(0.01 * i);
        s.push_back(std::exp(0.01 * t.back()) * std::sin(4.47 * t.back()));
    }
    const PeriodEstimate pe = measure_period(t, s);
    CHECK(pe.period == doctest::Approx(2 * kPi / 4.47).epsilon(0.01));
    CHECK(pe.envelope_rate == doctest::Approx(0.01).epsilon(0.2));
    CHECK(pe.crossings >= 5);

    std::vector<double> u;
    for (double x : t) u.push_back(std::sin(2 * kPi * x) + 0.3);
    CHECK(measure_period(t, u).period == doctest::Approx(1.0).epsilon(1e-3));

    std::vector<double> mono;
    for (double x : t) mono.push_back(std::exp(0.1 * x));
    CHECK_THROWS_AS(measure_period(t, mono), InsufficientOscillations);
    CHECK_THROWS_AS(measure_period(std::span(t).first(10), std::span(s).first(9)), PreconditionError);
}

TEST_CASE("checkpoints round-trip") {
    const auto dir = std::filesystem::temp_directory_path() / "rotabouss_ckpt_test";
    std::filesystem::create_directories(dir);
    SimConfig c = steady_config(1.05);
    Simulator sim(c);
    SimState s = random_state(sim, 9, 1.0);
    s.t = 12.375;
    save_checkpoint(dir / "a.bin", s, c);
    const SimState r = load_checkpoint(dir / "a.bin", sim);
    CHECK(r.t == s.t);
    for (int k = 0; k < 4; ++k) CHECK(r.comp(k) == s.comp(k));
    CHECK(std::filesystem::file_size(dir / "a.bin") == 6 + 4 * 8 + 4 * s.size() * 16);

    SimConfig other = steady_config(1.05, 32, 16);
    CHECK_THROWS_AS(load_checkpoint(dir / "a.bin", Simulator(other)), PreconditionError);
    std::ofstream(dir / "junk.bin") << "not a checkpoint";
    CHECK_THROWS_AS(load_checkpoint(dir / "junk.bin", sim), PreconditionError);
    CHECK_THROWS_AS(load_checkpoint(dir / "missing.bin", sim), PreconditionError);
    std::filesystem::remove_all(dir);
}
