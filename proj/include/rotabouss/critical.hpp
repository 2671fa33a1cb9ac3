#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotabouss/params.hpp"

namespace rotabouss {

// f_b(x) = ((x + pi^2)^3 + b) / x: the l = 1 neutral curve as a function of the
// horizontal wavenumber squared x, with b carrying the rotation.
double neutral_value(double x, double b);

// Unique minimizer of f_b on (0, inf): the root of (2x - pi^2)(x + pi^2)^2 = b,
// and pi^2 / 2 for b = 0.
double x_star(double b);

struct NeutralCurve {
    double b = 0.0;
    std::vector<std::pair<double, double>> samples;  // (x, f_b(x))
    double x_star = 0.0;
};
NeutralCurve neutral_curve(double b, std::span<const double> xs);

// Rotation offsets for the steady and oscillatory neutral curves.
double steady_offset(const PhysicalParams& p);  // pi^2 / (sigma^2 Ro^2)
double hopf_offset(const PhysicalParams& p);    // pi^2 / ((sigma+1)^2 Ro^2)

// Rayleigh numbers at which the cubic of idx has a zero root (steady) or a
// purely imaginary pair (oscillatory). idx must be in Lambda1.
double steady_threshold(const PhysicalParams& p, const WaveIndex& idx);
double hopf_threshold(const PhysicalParams& p, const WaveIndex& idx);

// Closed-form steady critical value for the 2-D mode (j1, 0, 1).
double rc1_closed_form(const PhysicalParams& p, int j1);

// Upper bound on Ro^2 below which the oscillatory threshold at idx lies below
// the steady one (l = 1 form).
double hopf_admissibility_bound(const PhysicalParams& p, const WaveIndex& idx);

// a with a^2 = c0 / ((2 sigma + 1) gamma^2) at Rayleigh number r; 0 when that
// quotient is not positive.
double hopf_frequency(const PhysicalParams& p, const WaveIndex& idx, double r);

enum class Onset { Steady, Hopf };

struct CriticalResult {
    double r_crit = 0.0;
    Onset onset = Onset::Steady;
    WaveIndex argmin{};
    bool unique = false;
    bool hopf_admissible = false;
    double hopf_freq = 0.0;
    std::vector<WaveIndex> minimizers;  // every index within 1e-9 relative of the minimum
};

inline constexpr double kTieTolerance = 1e-9;

// Minimum over the l = 1 layer of the truncated lattice. Throws
// TruncationTooSmall when a minimizer sits on the truncation boundary while
// the neutral curve is still decreasing there.
CriticalResult rc1(const PhysicalParams& p, int jmax = 8, int kmax = 8, int j_step = 1);
// Requires sigma < 1 (SigmaOutOfRange otherwise).
CriticalResult rc2(const PhysicalParams& p, int jmax = 8, int kmax = 8, int j_step = 1);

// Smallest truncation whose boundary lies beyond the minimizer x_b of the
// neutral curve in both directions.
Truncation covering_truncation(const PhysicalParams& p, double xb);

enum class Uniqueness { Holds, HoldsGenerically, Fails };
std::string_view to_string(Uniqueness u);

struct UniquenessCheck {
    Uniqueness status = Uniqueness::Fails;
    int j_crit = 0;                    // j1 (or j2) when status != Fails
    std::vector<WaveIndex> witnesses;  // candidate or tied/violating indices
    double xb = 0.0;
};

// Sufficient conditions for a single 2-D critical mode: steady (sigma > 1)
// and oscillatory (sigma < 1) versions.
UniquenessCheck check_c6(const PhysicalParams& p);
UniquenessCheck check_c7(const PhysicalParams& p);

struct PesRow {
    double r = 0.0;
    double re_max = 0.0;
    double im_at_max = 0.0;
    WaveIndex index{};
};

struct PesScan {
    std::vector<PesRow> rows;
    bool bracketed = false;
    double r_below = 0.0;  // last sample with re_max < 0 before the first crossing
    double r_above = 0.0;  // first sample with re_max >= 0
};

// Uniform scan of the leading growth rate in R. Samples run concurrently.
PesScan pes_scan(const PhysicalParams& p, double r_lo, double r_hi, int n, SpaceFlag space,
                 const Truncation& t = {});

struct AsymptoticsRow {
    double ro = 0.0;
    double b1 = 0.0;
    double x_b1 = 0.0;
    double rc1_continuous = 0.0;
    double rc1_lattice = 0.0;
    WaveIndex lattice_argmin{};
};

struct Asymptotics {
    double slope = 0.0;          // d log R_c1 / d log Ro, continuous minimum
    double lattice_slope = 0.0;  // same fit on the lattice-constrained values
    std::vector<AsymptoticsRow> rows;
};

Asymptotics ro_asymptotics(double sigma, double alpha1, double alpha2,
                           std::span<const double> ro_list);

}  // namespace rotabouss
