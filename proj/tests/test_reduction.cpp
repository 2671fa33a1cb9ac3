#include <random>

#include "doctest.h"
#include "rotabouss/critical.hpp"
#include "rotabouss/errors.hpp"
#include "rotabouss/reduction.hpp"
#include "rotabouss/spectrum.hpp"
#include "verify/oracles.hpp"

using namespace rotabouss;
namespace fz = oracle::frozen;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double largest(const InteractionBlock& b) {
    double m = 0.0;
    for (const auto& r : b)
        for (const auto& c : r)
            for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

// Admissible steady parameter sets (sigma > 1, uniqueness not refuted).
std::vector<PhysicalParams> random_admissible(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<PhysicalParams> out;
    while (static_cast<int>(out.size()) < count) {
        const PhysicalParams p{1.05 + 8 * U(rng), std::pow(10.0, -1.5 + 3 * U(rng)), 0.0,
                               0.3 + 4 * U(rng), 0.3 + 8 * U(rng)};
        if (check_c6(p).status != Uniqueness::Fails) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("interaction table: printed entries and sign pattern") {
    const PhysicalParams p = oracle::steady_example(fz::kSteadyRc1);
    const InteractionTable t = interaction_closed_form(p, 1, 0.0);
    const double g2 = 5.0 + kPi2;
    const double a1 = -1.0 / (p.ro * p.sigma * g2);
    CHECK(rel(t.direct[0][0][TSin2z], fz::kSteadyG11Temperature) < 1e-14);
    CHECK(rel(t.direct[0][0][TSin2z], -kPi / (2 * g2)) < 1e-14);
    CHECK(rel(t.direct[0][0][VSin2x], -a1 * kPi2 / (2 * p.alpha1)) < 1e-14);
    CHECK(t.direct[0][0][UCos2z] == 0.0);
    CHECK(t.direct[1][1][UCos2z] == 0.0);
    for (int m : {UCos2z, VCos2z}) CHECK(t.direct[0][1][m] == -t.direct[1][0][m]);
    CHECK(t.direct[0][1][VCos2x] == t.direct[1][0][VCos2x]);
    CHECK(t.direct[1][1][VSin2x] == -t.direct[0][0][VSin2x]);
    CHECK(t.direct[1][1][TSin2z] == t.direct[0][0][TSin2z]);
    // the dual table replaces the eigenvector weights by the dual weights
    const double c2 = p.sigma * p.rayleigh / g2;
    CHECK(rel(t.dual[0][0][TSin2z], -c2 * kPi / 2) < 1e-14);
    CHECK(t.dual[0][1][UCos2z] == t.direct[0][1][UCos2z]);
}

TEST_CASE("interaction table agrees with quadrature and with the pointwise oracle") {
    struct Case {
        PhysicalParams p;
        int j1;
        double beta;
    };
    const std::vector<Case> cases = {
        {oracle::steady_example(fz::kSteadyRc1), 1, 0.0},
        {oracle::steady_example(1.05 * fz::kSteadyRc1), 1, fz::kSteadyRootsAt105[0]},
        {PhysicalParams{3.0, 0.2, 2000.0, 0.7, 2.0}, 2, 0.0},
        {PhysicalParams{1.5, 0.05, 9000.0, 0.4, 5.0}, 3, -0.3},
    };
    for (const Case& c : cases) {
        const InteractionTable closed = interaction_integrals(c.p, c.j1, c.beta);
        CHECK(closed.quadrature_mismatch <= 1e-10);
        CHECK(closed.quadrature_remainder <= 1e-10);
        const double scale = std::max(largest(closed.direct), largest(closed.dual));
        for (bool dual : {false, true})
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const auto pw = oracle::interaction_pointwise(c.p, c.j1, c.beta, a, b, dual, 48, 24);
                    const auto& row = dual ? closed.dual[a][b] : closed.direct[a][b];
                    for (int m = 0; m < kInteractionModes; ++m) CHECK(std::abs(pw[m] - row[m]) <= 1e-10 * scale);
                }
    }
    CHECK_THROWS_AS(interaction_closed_form(oracle::steady_example(600.0), 1, -(5.0 + kPi2)), SingularShift);
}

TEST_CASE("center-manifold coefficients") {
    const PhysicalParams p = oracle::steady_example();
    const CenterManifoldCoeffs c = center_manifold_coeffs(p, 1, fz::kSteadyRc1);
    CHECK(rel(c.phi_002, fz::kSteadyPhi002) < 1e-9);
    CHECK(rel(c.phi_2j, fz::kSteadyPhi2j) < 1e-9);
    CHECK(c.phi_2j < 0.0);
    CHECK(c.phi_002 < 0.0);
    const auto v = c.evaluate(0.3, -0.7);
    CHECK(v[0] == doctest::Approx(c.phi_2j * (0.09 - 0.49)));
    CHECK(v[1] == doctest::Approx(c.phi_2j * 2 * 0.3 * -0.7));
    CHECK(v[2] == doctest::Approx(c.phi_002 * 0.58));
    for (double s : {1e-2, 1e-4, 1e-8}) {
        const auto w = c.evaluate(s, s);
        for (double x : w) CHECK(std::abs(x) <= 1e-2 * s * s);
    }
}

TEST_CASE("cubic coefficient on the steady example") {
    const PhysicalParams p = oracle::steady_example();
    const double d = delta(p, 1);
    CHECK(rel(d, fz::kSteadyDelta) < 1e-12);
    CHECK(rel(d, oracle::delta_arithmetic(p.sigma, p.ro, p.alpha1, 1)) < 1e-12);
    CHECK(d == doctest::Approx(-0.0833).epsilon(1e-3));
    const PhysicalParams pc = p.with_rayleigh(fz::kSteadyRc1);
    const EigenvectorCoeffs e = eigvec_coeffs(0.0, pc, make_index(1, 0, 1, pc));
    CHECK(rel((e.a1 * e.c1d).real(), fz::kSteadyA1C1) < 1e-12);
    CHECK(rel((e.a2 * e.c2d).real(), fz::kSteadyA2C2) < 1e-12);
    CHECK_THROWS_AS(delta(p, 2), PreconditionError);
    CHECK_THROWS_AS(delta(oracle::hopf_example(), 3), PreconditionError);
    CHECK_THROWS_AS(delta(PhysicalParams{2.0, 1.0, 0.0, 3.0, 3.0}, 1), PreconditionError);
}

TEST_CASE("cubic coefficient without rotation") {
    const PhysicalParams p{2.0, 1e12, 0.0, 2.5, 4.0};
    const double a1s = p.alpha1 * p.alpha1;
    const double g2 = a1s + kPi2;
    const double rc = std::pow(g2, 3) / a1s;
    const double ac2 = p.sigma * rc / (g2 * g2);
    const double want = -(ac2 / 8) / (kPi2 / a1s + 1 + ac2);
    CHECK(rel(delta(p, 1), want) < 1e-10);
}

TEST_CASE("cubic coefficient is negative across an admissible sweep") {
    for (const PhysicalParams& p : random_admissible(31, 20)) {
        const int j1 = check_c6(p).j_crit;
        double d = 0.0;
        CHECK_NOTHROW(d = delta(p, j1));
        CHECK(d < 0.0);
        CHECK(rel(d, oracle::delta_arithmetic(p.sigma, p.ro, p.alpha1, j1)) < 1e-10);
    }
}

TEST_CASE("amplitude model and predicted radius") {
    const AmplitudeModel m = build_amplitude_model(oracle::steady_example());
    CHECK(m.j1 == 1);
    CHECK(rel(m.r_c1, fz::kSteadyRc1) < 1e-13);
    CHECK(predicted_radius(m, m.r_c1) == 0.0);
    CHECK(m.radius_pred(m.r_c1) == 0.0);
    const double r105 = 1.05 * fz::kSteadyRc1;
    CHECK(rel(m.beta_of_r(r105), fz::kSteadyRootsAt105[0]) < 1e-10);
    CHECK(rel(predicted_radius(m, r105), fz::kSteadyRadiusAt105) < 1e-10);
    CHECK_THROWS_AS(predicted_radius(m, 0.99 * m.r_c1), PreconditionError);
    double prev = 0.0;
    for (double f : {1.01, 1.02, 1.05, 1.1, 1.2}) {
        const double r = predicted_radius(m, f * m.r_c1);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("amplitude right-hand side") {
    CHECK(amplitude_rhs(0, 0, 0.3, -1)[0] == 0.0);
    CHECK(amplitude_rhs(0, 0, 0.3, -1)[1] == 0.0);
    const auto a = amplitude_rhs(1, 0, -1, -1);
    CHECK(a[0] == -2.0);
    CHECK(a[1] == 0.0);
    const double beta = 0.4, d = -0.2, r = std::sqrt(-beta / d);
    for (double th : {0.0, 0.7, 2.0, 4.5}) {
        const double x = r * std::cos(th), y = r * std::sin(th);
        const auto f = amplitude_rhs(x, y, beta, d);
        CHECK(std::abs(x * f[0] + y * f[1]) < 1e-14);
    }
}

TEST_CASE("amplitude trajectories") {
    const double beta = 0.1, d = -0.0833, r_inf = std::sqrt(beta / 0.0833);
    CHECK(r_inf == doctest::Approx(1.0955).epsilon(1e-4));
    const Trajectory t = integrate_amplitude(beta, d, 0.01, 0.0, 300.0, 0.05);
    CHECK(std::abs(std::hypot(t.x.back(), t.y.back()) - r_inf) < 1e-6);
    CHECK(t.t.back() == 300.0);
    CHECK(t.t.size() == 6001);

    // the polar angle is conserved
    const double th = 37.0 * kPi / 180.0;
    const Trajectory a = integrate_amplitude(beta, d, 0.02 * std::cos(th), 0.02 * std::sin(th), 200.0, 0.05);
    for (std::size_t i = 0; i < a.t.size(); i += 100)
        CHECK(std::abs(std::atan2(a.y[i], a.x[i]) - th) < 1e-9);
    // same terminal radius from any angle and from outside the circle
    for (double start : {0.3, 2.0, 4.0}) {
        const Trajectory b = integrate_amplitude(beta, d, 3.0 * std::cos(start), 3.0 * std::sin(start), 300.0, 0.05);
        CHECK(std::abs(std::hypot(b.x.back(), b.y.back()) - r_inf) < 1e-6);
    }
    const Trajectory decay = integrate_amplitude(-0.2, d, 0.5, 0.5, 200.0, 0.05);
    CHECK(std::hypot(decay.x.back(), decay.y.back()) < 1e-12);
    CHECK_THROWS_AS(integrate_amplitude(beta, d, 1, 0, 1, 0.0), PreconditionError);
}

TEST_CASE("amplitude integrator is fourth order") {
    // radial equation r' = beta r + delta r^3 has a closed-form solution
    const double beta = 0.5, d = -0.4, r0 = 0.1, T = 6.0;
    const double exact = r0 * std::exp(beta * T) /
                         std::sqrt(1.0 - d / beta * r0 * r0 * (std::exp(2 * beta * T) - 1.0));
    double prev_err = 0.0;
    for (double dt : {0.4, 0.2, 0.1}) {
        const Trajectory t = integrate_amplitude(beta, d, r0, 0.0, T, dt);
        const double err = std::abs(t.x.back() - exact);
        if (prev_err > 0.0) CHECK(std::log2(prev_err / err) == doctest::Approx(4.0).epsilon(0.1));
        prev_err = err;
    }
}

TEST_CASE("model trajectory settles on the predicted circle") {
    const AmplitudeModel m = build_amplitude_model(oracle::steady_example());
    const double r = 1.05 * m.r_c1;
    const Trajectory t = integrate_amplitude(m, r, 0.1, 0.05, 200.0, 0.02);
    CHECK(std::abs(std::hypot(t.x.back(), t.y.back()) - predicted_radius(m, r)) < 1e-6);
}
