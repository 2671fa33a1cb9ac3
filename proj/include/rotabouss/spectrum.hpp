#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "rotabouss/fields.hpp"
#include "rotabouss/params.hpp"

namespace rotabouss {

using cd = std::complex<double>;

// beta^3 + c2 beta^2 + c1 beta + c0 for one Lambda1 index.
struct CubicCoeffs {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
};

// Roots sorted by descending real part, ties by descending imaginary part.
// Complex roots come as exact conjugate pairs.
struct EigenTriple {
    std::array<cd, 3> beta{};
    WaveIndex index{};
};

struct EigenvectorCoeffs {
    cd a1, a2;    // eigenvector weights on the v- and T-basis fields
    cd c1d, c2d;  // dual-vector weights
};

struct SpectrumEntry {
    cd beta;
    std::string branch;  // "1".."3" for Lambda1, named for the other classes
};

struct GrowthRate {
    double re = 0.0;
    double im = 0.0;
    WaveIndex index{};
};

// Throws WrongClass unless idx is in Lambda1.
CubicCoeffs cubic_coeffs(const PhysicalParams& p, const WaveIndex& idx);

// Throws NonConvergence on non-finite input or solver failure.
EigenTriple solve_cubic(const CubicCoeffs& c);
EigenTriple eigen_triple(const PhysicalParams& p, const WaveIndex& idx);

// Lambda1 roots appear twice in the full space (x-cosine and x-sine families)
// and once in the symmetric space. Lambda2 always twice. Lambda3 keeps only
// the thermal root in the symmetric space.
std::vector<SpectrumEntry> spectrum_at(const PhysicalParams& p, const WaveIndex& idx,
                                       SpaceFlag space);

// Largest real part over the truncated lattice; first index in lattice order
// wins ties.
GrowthRate growth_rate(const PhysicalParams& p, const Truncation& t, SpaceFlag space);

// Throws SingularShift when |beta + sigma gamma^2| or |beta + gamma^2| is below
// 1e-12 gamma^2.
EigenvectorCoeffs eigvec_coeffs(cd beta, const PhysicalParams& p, const WaveIndex& idx);

// Samples the (k = 0) eigenfield for root beta. variant 1 is even in x for w
// (cosine family), variant 2 its x-shifted copy. For complex beta both real and
// imaginary parts are filled. dual = true uses the dual-vector weights.
EigenField assemble_eigenvector(const PhysicalParams& p, const WaveIndex& idx, cd beta,
                                int variant, const GridShape& shape, bool dual = false);

// ||L psi - beta psi|| / ||psi|| with L the linearized operator discretized
// spectrally on the field's grid (pressure removed by exact projection).
double linear_residual(const PhysicalParams& p, const EigenField& psi, cd beta);
double linear_residual(const PhysicalParams& p, const FieldOnGrid& psi, cd beta);

}  // namespace rotabouss
