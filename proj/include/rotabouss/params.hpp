#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rotabouss {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPi2 = kPi * kPi;

// Dimensionless controls of the rotating Boussinesq system on one periodicity
// cell [0, 2pi/alpha1] x [0, 2pi/alpha2] x [0, 1].
struct PhysicalParams {
    double sigma = 1.0;     // Prandtl number
    double ro = 1.0;        // Rossby number
    double rayleigh = 0.0;  // thermal Rayleigh number
    double alpha1 = 1.0;    // base x-wavenumber
    double alpha2 = 1.0;    // base y-wavenumber

    // Throws PreconditionError unless all fields are finite, rayleigh >= 0 and
    // the rest strictly positive.
    void validate() const;
    PhysicalParams with_rayleigh(double r) const {
        PhysicalParams p = *this;
        p.rayleigh = r;
        return p;
    }
    bool operator==(const PhysicalParams&) const = default;
};

enum class LatticeClass { Lambda1, Lambda2, Lambda3 };
enum class SpaceFlag { Full, Symmetric };

std::string_view to_string(LatticeClass c);
std::string_view to_string(SpaceFlag s);
SpaceFlag parse_space(std::string_view s);  // "full" | "sym" | "symmetric"

// Lattice point with its derived wavenumbers. Always built through
// make_index so the derived fields match (j,k,l) exactly.
struct WaveIndex {
    int j = 0;
    int k = 0;
    int l = 0;
    double alpha_sq = 0.0;  // j^2 alpha1^2 + k^2 alpha2^2
    double gamma_sq = 0.0;  // alpha_sq + l^2 pi^2
    LatticeClass cls = LatticeClass::Lambda1;

    bool same_point(const WaveIndex& o) const { return j == o.j && k == o.k && l == o.l; }
};

// Throws OutOfLattice for j < 0, l < 0 or (0,0,0).
LatticeClass classify(int j, int k, int l);

double horizontal_wavenumber_sq(int j, int k, double alpha1, double alpha2);
WaveIndex make_index(int j, int k, int l, double alpha1, double alpha2);
inline WaveIndex make_index(int j, int k, int l, const PhysicalParams& p) {
    return make_index(j, k, l, p.alpha1, p.alpha2);
}

struct Truncation {
    int jmax = 8;
    int kmax = 8;
    int lmax = 4;
    // Keep only j that are multiples of j_step: the invariant subspace of
    // fields with x-period 2pi/(j_step alpha1).
    int j_step = 1;
};

// All members of the lattice with j <= jmax, |k| <= kmax, l <= lmax, ordered
// lexicographically in (l, j, k). Requires lmax >= 1, jmax, kmax >= 0 and
// (jmax, kmax) != (0, 0).
std::vector<WaveIndex> lattice(const PhysicalParams& p, const Truncation& t);

}  // namespace rotabouss
