#pragma once

// Reference values and independent re-implementations used to check the
// library. Nothing here calls the code path it is meant to check.

#include <array>
#include <complex>
#include <cstdint>

#include "rotabouss/fields.hpp"
#include "rotabouss/params.hpp"

namespace rotabouss::oracle {

using cd = std::complex<double>;

// Values computed once with 50-digit arithmetic and frozen here.
namespace frozen {
// Steady example: sigma = 2, Ro = 1, alpha1^2 = 5, alpha2^2 = 9.
inline constexpr double kSteadyRc1 = 658.04265805346305;
inline constexpr double kSteadyC2AtZero = 74.348022005446793;
inline constexpr double kSteadyC0AtZero = 13160.853161069261;
inline constexpr double kSteadyA1C1 = -0.0011306838258154284;
inline constexpr double kSteadyA2C2 = 5.9523055212611469;
inline constexpr double kSteadyDelta = -0.083344161764397100;
inline constexpr double kSteadyPhi002 = -0.0026758436001201808;
inline constexpr double kSteadyPhi2j = -0.00041483973509267939;
inline constexpr double kSteadyG11Temperature = -0.10563807108949172;
inline constexpr std::array<double, 3> kSteadyRootsAt105 = {
    0.49051116422658594, -29.760493788268547, -45.078039381404832};
inline constexpr double kSteadyRadiusAt105 = 2.4259779922622064;
// Oscillatory example: sigma = 0.5, Ro = 0.04, alpha1 = 1, alpha2 = 4.5.
inline constexpr double kHopfRc2 = 3153.4350996794873;
inline constexpr double kHopfXb2 = 8.8475865134124375;
inline constexpr double kHopfBound = 0.0019586195991317277;
inline constexpr double kHopfFreqSq = 19.951687662250482;
inline constexpr double kHopfFreq = 4.4667312055070520;
inline constexpr double kHopfBeta3 = -37.739208802178717;
inline constexpr double kHopfFullLatticeRc1 = 2567.81;  // at (0, +-1, 1), 6 digits
// x_star at b = pi^2 / 4 and b = 0.
inline constexpr double kXStarQuarter = 4.94042688037870444;
inline constexpr double kXStarZero = 4.9348022005446793;
}  // namespace frozen

inline PhysicalParams steady_example(double r = 0.0) {
    return {2.0, 1.0, r, 2.2360679774997897, 3.0};  // alpha1 = sqrt(5)
}
inline PhysicalParams hopf_example(double r = 0.0) { return {0.5, 0.04, r, 1.0, 4.5}; }

// Simultaneous (Weierstrass) iteration on the monic cubic.
std::array<cd, 3> durand_kerner(double c2, double c1, double c0);

// Plain bisection on (2x - pi^2)(x + pi^2)^2 = b.
double x_star_bisection(double b);

// ((j^2 a^2 + pi^2)^3 + pi^2/(sigma^2 Ro^2)) / (j^2 a^2), written out directly.
double rc1_closed(double sigma, double ro, double alpha1, int j1);

// Straight-line arithmetic for the cubic coefficient of the amplitude system.
double delta_arithmetic(double sigma, double ro, double alpha1, int j1);

// Coefficients of G(psi_a, psi_b) on the five interaction modes, computed from
// analytic derivatives of the eigenfields sampled pointwise (no transforms).
// The modes are divergence-free, so projecting onto them needs no pressure.
std::array<double, 5> interaction_pointwise(const PhysicalParams& p, int j1, double beta, int a,
                                            int b, bool dual, int nx, int nz);

// Random field with a stream-function velocity (divergence-free, w = 0 on the
// walls) plus random v and T, band-limited to x-modes <= jmax and z-modes
// <= lmax so that triple products are integrated exactly on the grid.
FieldOnGrid random_solenoidal(const GridShape& shape, std::uint64_t seed, int jmax, int lmax);

}  // namespace rotabouss::oracle
