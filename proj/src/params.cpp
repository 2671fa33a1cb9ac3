#include "rotabouss/params.hpp"

#include <cmath>

#include "rotabouss/errors.hpp"

namespace rotabouss {

void PhysicalParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(sigma)) throw PreconditionError("sigma must be finite and > 0");
    if (!positive(ro)) throw PreconditionError("ro must be finite and > 0");
    if (!std::isfinite(rayleigh) || rayleigh < 0.0)
        throw PreconditionError("rayleigh must be finite and >= 0");
    if (!positive(alpha1)) throw PreconditionError("alpha1 must be finite and > 0");
    if (!positive(alpha2)) throw PreconditionError("alpha2 must be finite and > 0");
}

std::string_view to_string(LatticeClass c) {
    switch (c) {
        case LatticeClass::Lambda1: return "Lambda1";
        case LatticeClass::Lambda2: return "Lambda2";
        case LatticeClass::Lambda3: return "Lambda3";
    }
    return "?";
}

std::string_view to_string(SpaceFlag s) { return s == SpaceFlag::Full ? "full" : "sym"; }

SpaceFlag parse_space(std::string_view s) {
    if (s == "full") return SpaceFlag::Full;
    if (s == "sym" || s == "symmetric") return SpaceFlag::Symmetric;
    throw PreconditionError("space must be 'full' or 'sym', got '" + std::string(s) + "'");
}

LatticeClass classify(int j, int k, int l) {
    if (j < 0 || l < 0)
        throw OutOfLattice("(" + std::to_string(j) + "," + std::to_string(k) + "," +
                           std::to_string(l) + ") needs j >= 0 and l >= 0");
    const bool horizontal = (j != 0 || k != 0);
    if (horizontal) return l >= 1 ? LatticeClass::Lambda1 : LatticeClass::Lambda2;
    if (l >= 1) return LatticeClass::Lambda3;
    throw OutOfLattice("(0,0,0) is not a lattice member");
}

double horizontal_wavenumber_sq(int j, int k, double alpha1, double alpha2) {
    const double a = j * alpha1;
    const double b = k * alpha2;
    return a * a + b * b;
}

WaveIndex make_index(int j, int k, int l, double alpha1, double alpha2) {
    WaveIndex w;
    w.cls = classify(j, k, l);
    w.j = j;
    w.k = k;
    w.l = l;
    w.alpha_sq = horizontal_wavenumber_sq(j, k, alpha1, alpha2);
    w.gamma_sq = w.alpha_sq + static_cast<double>(l) * l * kPi2;
    return w;
}

std::vector<WaveIndex> lattice(const PhysicalParams& p, const Truncation& t) {
    if (t.lmax < 1 || t.jmax < 0 || t.kmax < 0 || (t.jmax == 0 && t.kmax == 0))
        throw PreconditionError("truncation needs lmax >= 1, jmax, kmax >= 0, (jmax,kmax) != (0,0)");
    if (t.j_step < 1) throw PreconditionError("j_step must be >= 1");
    std::vector<WaveIndex> out;
    for (int l = 0; l <= t.lmax; ++l)
        for (int j = 0; j <= t.jmax; j += t.j_step)
            for (int k = -t.kmax; k <= t.kmax; ++k) {
                if (j == 0 && k == 0 && l == 0) continue;
                out.push_back(make_index(j, k, l, p));
            }
    return out;
}

}  // namespace rotabouss
