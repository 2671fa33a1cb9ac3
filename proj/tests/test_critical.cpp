#include <random>

#include "doctest.h"
#include "rotabouss/critical.hpp"
#include "rotabouss/errors.hpp"
#include "rotabouss/spectrum.hpp"
#include "verify/oracles.hpp"

using namespace rotabouss;
namespace fz = oracle::frozen;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double xstar_residual(double x, double b) {
    return std::abs((2 * x - kPi2) * (x + kPi2) * (x + kPi2) - b);
}
}  // namespace

TEST_CASE("x_star: examples, residual and monotonicity") {
    CHECK(x_star(0.0) == fz::kXStarZero);
    CHECK(rel(x_star(kPi2 / 4), fz::kXStarQuarter) < 1e-14);
    double prev = x_star(0.0);
    for (double b : {1e-6, 0.1, 1.0, 10.0, 100.0, 1e4, 1e8, 1e12, 1e16}) {
        const double x = x_star(b);
        CHECK(xstar_residual(x, b) <= 1e-12 * (1 + b));
        CHECK(rel(x, oracle::x_star_bisection(b)) < 1e-12);
        CHECK(x > kPi2 / 2);
        CHECK(x > prev);
        prev = x;
    }
    CHECK(x_star(10.0) < x_star(100.0));
    CHECK_THROWS_AS(x_star(-1.0), PreconditionError);
}

TEST_CASE("neutral curve decreases then increases around x_star") {
    for (double b : {0.0, 2.0, 500.0}) {
        const double xs = x_star(b);
        std::vector<double> grid;
        for (int i = 1; i <= 200; ++i) grid.push_back(xs * 3.0 * i / 200);
        const NeutralCurve c = neutral_curve(b, grid);
        CHECK(c.x_star == xs);
        REQUIRE(c.samples.size() == grid.size());
        for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) {
            const auto [x0, f0] = c.samples[i];
            const auto [x1, f1] = c.samples[i + 1];
            if (x1 <= xs) CHECK(f1 < f0);
            if (x0 >= xs) CHECK(f1 > f0);
        }
    }
}

TEST_CASE("steady critical value on the steady example") {
    const PhysicalParams p = oracle::steady_example();
    const CriticalResult r = rc1(p);
    CHECK(rel(r.r_crit, fz::kSteadyRc1) < 1e-13);
    CHECK(r.r_crit == doctest::Approx(658.03).epsilon(1e-4));
    CHECK(r.argmin.same_point(make_index(1, 0, 1, p)));
    CHECK(r.unique);
    CHECK(r.onset == Onset::Steady);
    CHECK(rel(r.r_crit, rc1_closed_form(p, 1)) < 1e-12);
    CHECK(rel(r.r_crit, oracle::rc1_closed(p.sigma, p.ro, p.alpha1, 1)) < 1e-12);
}

TEST_CASE("steady critical value without rotation is the classical value") {
    const PhysicalParams p{2.0, 1e30, 0.0, std::sqrt(kPi2 / 2), 10.0};
    const CriticalResult r = rc1(p);
    CHECK(rel(r.r_crit, 27 * kPi2 * kPi2 / 4) < 1e-14);
    CHECK(r.r_crit == doctest::Approx(657.51).epsilon(1e-5));
}

TEST_CASE("steady threshold grows with the vertical mode") {
    const PhysicalParams p = oracle::steady_example();
    for (int j = 0; j <= 6; ++j)
        for (int k = -6; k <= 6; ++k) {
            if (j == 0 && k == 0) continue;
            CHECK(steady_threshold(p, make_index(j, k, 2, p)) > steady_threshold(p, make_index(j, k, 1, p)));
            CHECK(steady_threshold(p, make_index(j, k, 3, p)) > steady_threshold(p, make_index(j, k, 2, p)));
        }
}

TEST_CASE("lattice minimum equals the closed form whenever uniqueness is not refuted") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int tested = 0;
    for (int n = 0; n < 300; ++n) {
        const PhysicalParams p{1.1 + 5 * U(rng), std::pow(10.0, -1.5 + 2.5 * U(rng)), 0.0,
                               0.3 + 3 * U(rng), 0.3 + 6 * U(rng)};
        const UniquenessCheck c = check_c6(p);
        if (c.status == Uniqueness::Fails) continue;
        ++tested;
        const Truncation t = covering_truncation(p, c.xb);
        const CriticalResult r = rc1(p, t.jmax, t.kmax);
        CHECK(r.argmin.k == 0);
        CHECK(r.argmin.j == c.j_crit);
        CHECK(r.unique);
        CHECK(rel(r.r_crit, rc1_closed_form(p, r.argmin.j)) < 1e-12);
    }
    CHECK(tested > 30);
}

TEST_CASE("sign of the leading root flips across the steady critical value") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int n = 0; n < 40; ++n) {
        const PhysicalParams p{0.2 + 5 * U(rng), 0.05 + 3 * U(rng), 0.0, 0.5 + 2 * U(rng), 0.5 + 2 * U(rng)};
        const CriticalResult r = rc1(p, 12, 12);
        const double eps = 1e-3 * r.r_crit;
        CHECK(eigen_triple(p.with_rayleigh(r.r_crit - eps), r.argmin).beta[0].real() < 0.0);
        CHECK(eigen_triple(p.with_rayleigh(r.r_crit + eps), r.argmin).beta[0].real() > 0.0);
    }
}

TEST_CASE("truncation boundary detection") {
    const PhysicalParams p = oracle::steady_example();
    // at Ro = 1e-3 the neutral minimum sits near j = 8 for this alpha1
    const PhysicalParams fast{2.0, 1e-3, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(rc1(fast, 2, 2), TruncationTooSmall);
    const Truncation t = covering_truncation(fast, x_star(steady_offset(fast)));
    CHECK_NOTHROW(rc1(fast, t.jmax, t.kmax));
    // a boundary minimizer past the neutral minimum is genuine
    CHECK_NOTHROW(rc1(p, 1, 0));
    CHECK_THROWS_AS(rc1(p, 0, 0), PreconditionError);
}

TEST_CASE("oscillatory critical value on the oscillatory example") {
    const PhysicalParams p = oracle::hopf_example();
    const CriticalResult r = rc2(p);
    CHECK(rel(r.r_crit, fz::kHopfRc2) < 1e-13);
    CHECK(r.r_crit == doctest::Approx(3153.5).epsilon(1e-4));
    CHECK(r.argmin.same_point(make_index(3, 0, 1, p)));
    CHECK(r.onset == Onset::Hopf);
    CHECK(r.hopf_admissible);
    CHECK(rel(hopf_admissibility_bound(p, r.argmin), fz::kHopfBound) < 1e-12);
    CHECK(rel(r.hopf_freq, fz::kHopfFreq) < 1e-12);
    CHECK(r.hopf_freq == doctest::Approx(4.47).epsilon(2e-3));
    const EigenTriple t = eigen_triple(p.with_rayleigh(r.r_crit), r.argmin);
    CHECK(rel(t.beta[0].imag(), r.hopf_freq) < 1e-9);
    CHECK(rel(t.beta[2].real(), fz::kHopfBeta3) < 1e-12);
    CHECK_THROWS_AS(rc2(oracle::steady_example()), SigmaOutOfRange);
    CHECK_THROWS_AS(rc2(PhysicalParams{1.0, 1.0, 0.0, 1.0, 1.0}), SigmaOutOfRange);
}

TEST_CASE("oscillatory threshold lies below the steady one per index when admissible") {
    const PhysicalParams p = oracle::hopf_example();
    for (int j = 0; j <= 8; ++j)
        for (int k = -8; k <= 8; ++k) {
            if (j == 0 && k == 0) continue;
            const WaveIndex idx = make_index(j, k, 1, p);
            if (p.ro * p.ro < hopf_admissibility_bound(p, idx))
                CHECK(hopf_threshold(p, idx) < steady_threshold(p, idx));
            else
                CHECK(hopf_threshold(p, idx) >= steady_threshold(p, idx) * (1 - 1e-12));
        }
    // The steady minimum over the full lattice sits at (0, +-1, 1) below the
    // oscillatory minimum; the comparison only holds index by index.
    const CriticalResult s = rc1(p);
    CHECK(s.r_crit == doctest::Approx(fz::kHopfFullLatticeRc1).epsilon(5e-6));
    CHECK(s.argmin.j == 0);
    CHECK(std::abs(s.argmin.k) == 1);
    CHECK(s.r_crit < rc2(p).r_crit);
}

TEST_CASE("steady uniqueness check") {
    const UniquenessCheck a = check_c6(oracle::steady_example());
    CHECK(a.status == Uniqueness::Holds);
    CHECK(a.j_crit == 1);
    CHECK(rel(a.xb, fz::kXStarQuarter) < 1e-14);

    // alpha1^2 = x_b / 5 exactly, wide in y
    PhysicalParams g{2.0, 0.37, 0.0, 1.0, 10.0};
    const double xb = x_star(steady_offset(g));
    g.alpha1 = std::sqrt(xb / 5.0) * (1 - 1e-15);
    const UniquenessCheck b = check_c6(g);
    CHECK(b.status == Uniqueness::HoldsGenerically);
    REQUIRE(b.witnesses.size() == 2);
    CHECK((b.j_crit == b.witnesses[0].j || b.j_crit == b.witnesses[1].j));
    CHECK(rc1(g).argmin.j == b.j_crit);

    // square cell: (1,0,1) and (0,+-1,1) tie
    const UniquenessCheck c = check_c6(PhysicalParams{2.0, 1.0, 0.0, 3.0, 3.0});
    CHECK(c.status == Uniqueness::Fails);
    bool has_x = false, has_y = false;
    for (const auto& w : c.witnesses) {
        has_x |= w.j == 1 && w.k == 0;
        has_y |= w.j == 0 && std::abs(w.k) == 1;
    }
    CHECK(has_x);
    CHECK(has_y);
    CHECK_THROWS_AS(check_c6(oracle::hopf_example()), PreconditionError);
}

TEST_CASE("oscillatory uniqueness check") {
    const UniquenessCheck a = check_c7(oracle::hopf_example());
    CHECK(a.status == Uniqueness::HoldsGenerically);
    CHECK(a.j_crit == 3);
    CHECK(rel(a.xb, fz::kHopfXb2) < 1e-12);
    const PhysicalParams h{0.5, 0.5, 0.0, 3.0, 4.0};
    REQUIRE(x_star(hopf_offset(h)) <= 9.0);
    const UniquenessCheck b = check_c7(h);
    CHECK(b.status == Uniqueness::Holds);
    CHECK(b.j_crit == 1);
    CHECK_THROWS_AS(check_c7(oracle::steady_example()), PreconditionError);
}

TEST_CASE("principle of exchange of stabilities scan") {
    const PhysicalParams p = oracle::steady_example();
    const PesScan s = pes_scan(p, 0.9 * fz::kSteadyRc1, 1.1 * fz::kSteadyRc1, 41, SpaceFlag::Full);
    CHECK(s.bracketed);
    CHECK(s.r_below < fz::kSteadyRc1);
    CHECK(s.r_above >= fz::kSteadyRc1);
    CHECK(s.r_above - s.r_below <= 0.2 * fz::kSteadyRc1 / 40 * (1 + 1e-12));
    for (const auto& row : s.rows) {
        CHECK(row.index.same_point(make_index(1, 0, 1, p)));
        CHECK(row.im_at_max == 0.0);
    }

    const PesScan zero = pes_scan(p, 0.0, 1.0, 5, SpaceFlag::Full);
    for (const auto& row : zero.rows) CHECK(row.re_max < 0.0);
    CHECK_FALSE(zero.bracketed);
    CHECK_THROWS_AS(pes_scan(p, 1.0, 0.5, 5, SpaceFlag::Full), PreconditionError);
    CHECK_THROWS_AS(pes_scan(p, 0.0, 1.0, 2, SpaceFlag::Full), PreconditionError);
}

TEST_CASE("oscillatory onset in the symmetric multiple-of-three subspace") {
    const PhysicalParams p = oracle::hopf_example();
    const double rc = fz::kHopfRc2;
    const Truncation t{9, 0, 3, 3};
    const PesScan s = pes_scan(p, 0.95 * rc, 1.05 * rc, 21, SpaceFlag::Symmetric, t);
    CHECK(s.bracketed);
    CHECK(s.r_below < rc);
    CHECK(s.r_above >= rc);
    for (const auto& row : s.rows) {
        CHECK(row.index.same_point(make_index(3, 0, 1, p)));
        CHECK(row.im_at_max > 0.0);
    }
    // the frequency drifts with R; compare at the sample closest to onset
    const auto& mid = s.rows[10];
    CHECK(mid.r == doctest::Approx(rc));
    CHECK(mid.im_at_max == doctest::Approx(fz::kHopfFreq).epsilon(1e-6));
}

TEST_CASE("small-Rossby asymptotics") {
    const std::vector<double> ro = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    const Asymptotics a = ro_asymptotics(2.0, 1.0, 1.3, ro);
    REQUIRE(a.rows.size() == ro.size());
    for (std::size_t i = 0; i + 1 < a.rows.size(); ++i) {
        CHECK(a.rows[i + 1].b1 > a.rows[i].b1);
        CHECK(a.rows[i + 1].x_b1 > a.rows[i].x_b1);
        CHECK(a.rows[i + 1].rc1_continuous > a.rows[i].rc1_continuous);
    }
    for (const auto& r : a.rows) CHECK(r.rc1_lattice >= r.rc1_continuous * (1 - 1e-12));
    // the local exponent approaches -4/3 from above as Ro -> 0
    CHECK(a.slope < -1.0);
    CHECK(a.slope > -4.0 / 3.0);
    const std::vector<double> deep = {1e-8, 1e-9, 1e-10, 1e-11};
    CHECK(ro_asymptotics(2.0, 1.0, 1.3, deep).slope == doctest::Approx(-4.0 / 3.0).epsilon(0.01));

    const std::vector<double> one = {1e-2};
    CHECK_THROWS_AS(ro_asymptotics(2.0, 1.0, 1.0, one), PreconditionError);
    const std::vector<double> narrow = {1e-2, 8e-3, 6e-3, 4e-3};
    CHECK_THROWS_AS(ro_asymptotics(2.0, 1.0, 1.0, narrow), PreconditionError);
    CHECK_THROWS_AS(ro_asymptotics(0.5, 1.0, 1.0, ro), PreconditionError);
}
