#pragma once

#include <array>
#include <vector>

#include "rotabouss/fields.hpp"
#include "rotabouss/params.hpp"

namespace rotabouss {

// Fields onto which the quadratic self-interaction of the critical pair lands,
// for critical mode (j1, 0, 1):
//   UCos2z: u = cos(2 pi z)         VCos2z: v = cos(2 pi z)
//   VCos2x: v = cos(2 j1 alpha1 x)  VSin2x: v = sin(2 j1 alpha1 x)
//   TSin2z: T = sin(2 pi z)
enum InteractionMode { UCos2z = 0, VCos2z, VCos2x, VSin2x, TSin2z };
inline constexpr int kInteractionModes = 5;

using InteractionBlock = std::array<std::array<std::array<double, kInteractionModes>, 2>, 2>;

struct InteractionTable {
    int j1 = 1;
    double beta = 0.0;
    // [a][b][mode]: coefficient of G(psi_a, psi_b) on the mode, a, b = 0 for
    // the cosine member of the critical pair and 1 for the sine member.
    InteractionBlock direct{};  // eigenvectors
    InteractionBlock dual{};    // dual vectors
    // Filled by interaction_integrals: largest entry mismatch against
    // quadrature, relative to the largest entry, and the norm of whatever the
    // quadrature finds outside the five modes.
    double quadrature_mismatch = 0.0;
    double quadrature_remainder = 0.0;
};

InteractionTable interaction_closed_form(const PhysicalParams& p, int j1, double beta);
// Projects G(psi_a, psi_b), computed on the grid, onto the five modes.
InteractionTable interaction_quadrature(const PhysicalParams& p, int j1, double beta,
                                        const GridShape& shape);
// Closed form, cross-checked against quadrature on a 64 x 32 grid.
InteractionTable interaction_integrals(const PhysicalParams& p, int j1, double beta);

// Quadratic slaved-mode coefficients: Phi1_(2j1)00 = phi_2j (x^2 - y^2),
// Phi2_(2j1)00 = phi_2j (2xy), Phi1_0021 = phi_002 (x^2 + y^2).
struct CenterManifoldCoeffs {
    double phi_2j = 0.0;
    double phi_002 = 0.0;
    std::array<double, 3> evaluate(double x, double y) const {
        return {phi_2j * (x * x - y * y), phi_2j * 2.0 * x * y, phi_002 * (x * x + y * y)};
    }
};

// Coefficients at Rayleigh number r, with the eigenvector weights evaluated at
// the leading root of the (j1, 0, 1) cubic.
CenterManifoldCoeffs center_manifold_coeffs(const PhysicalParams& p, int j1, double r);

// Cubic coefficient of the reduced amplitude system with eigenvector weights at
// beta = 0 and R = R_c1. Requires sigma > 1, check_c6 != fails and j1 equal to
// its critical j. Throws PositiveDelta if the value is not negative.
double delta(const PhysicalParams& p, int j1);

struct AmplitudeModel {
    PhysicalParams params;  // rayleigh unused
    int j1 = 1;
    double r_c1 = 0.0;
    double delta = 0.0;
    CenterManifoldCoeffs cm;  // at R_c1

    // Leading real eigenvalue of the (j1, 0, 1) cubic.
    double beta_of_r(double r) const;
    double radius_pred(double r) const;
};

AmplitudeModel build_amplitude_model(const PhysicalParams& p);

// sqrt(-beta / delta); requires r >= R_c1 and reports 0 at onset.
double predicted_radius(const AmplitudeModel& m, double r);

std::array<double, 2> amplitude_rhs(double x, double y, double beta, double delta);

struct Trajectory {
    std::vector<double> t, x, y;
};

// Classical fourth-order Runge-Kutta with fixed step.
Trajectory integrate_amplitude(double beta, double delta, double x0, double y0, double t_end,
                               double dt);
Trajectory integrate_amplitude(const AmplitudeModel& m, double r, double x0, double y0,
                               double t_end, double dt);

}  // namespace rotabouss
