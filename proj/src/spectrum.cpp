#include "rotabouss/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "rotabouss/errors.hpp"

namespace rotabouss {
namespace {

std::string label(const WaveIndex& i) {
    return "(" + std::to_string(i.j) + "," + std::to_string(i.k) + "," + std::to_string(i.l) + ")";
}

cd eval_cubic(const CubicCoeffs& c, cd z) { return ((z + c.c2) * z + c.c1) * z + c.c0; }
cd eval_cubic_prime(const CubicCoeffs& c, cd z) { return (3.0 * z + 2.0 * c.c2) * z + c.c1; }

bool root_order(const cd& a, const cd& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

}  // namespace

CubicCoeffs cubic_coeffs(const PhysicalParams& p, const WaveIndex& idx) {
    if (idx.cls != LatticeClass::Lambda1)
        throw WrongClass(label(idx) + " is not in Lambda1");
    const double g2 = idx.gamma_sq;
    const double g4 = g2 * g2;
    const double a2 = idx.alpha_sq;
    const double s = p.sigma;
    const double rot = static_cast<double>(idx.l) * idx.l * kPi2 / (p.ro * p.ro);
    CubicCoeffs c;
    c.c2 = (2.0 * s + 1.0) * g2;
    c.c1 = (s * s + 2.0 * s) * g4 + rot / g2 - s * p.rayleigh * a2 / g2;
    c.c0 = s * s * g4 * g2 - s * s * p.rayleigh * a2 + rot;
    return c;
}

EigenTriple solve_cubic(const CubicCoeffs& c) {
    if (!std::isfinite(c.c2) || !std::isfinite(c.c1) || !std::isfinite(c.c0))
        throw NonConvergence("non-finite cubic coefficients");
    // Rescale beta = s mu so the companion matrix entries are O(1).
    const double s = std::max({1.0, std::abs(c.c2), std::sqrt(std::abs(c.c1)),
                               std::cbrt(std::abs(c.c0))});
    Eigen::Matrix3d comp;
    comp << -c.c2 / s, -c.c1 / (s * s), -c.c0 / (s * s * s), 1, 0, 0, 0, 1, 0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp, false);
    if (es.info() != Eigen::Success) throw NonConvergence("companion eigensolver failed");

    EigenTriple t;
    for (int i = 0; i < 3; ++i) t.beta[i] = es.eigenvalues()[i] * s;
    for (cd& z : t.beta) {
        const cd d = eval_cubic_prime(c, z);
        if (std::abs(d) == 0.0) continue;
        const cd polished = z - eval_cubic(c, z) / d;
        if (std::abs(eval_cubic(c, polished)) < std::abs(eval_cubic(c, z))) {
            z = z.imag() == 0.0 ? cd(polished.real(), 0.0) : polished;
        }
    }
    // Real Schur gives exact conjugate pairs; polishing can break them.
    for (int i = 0; i < 3; ++i) {
        if (t.beta[i].imag() <= 0.0) continue;
        for (int k = 0; k < 3; ++k)
            if (k != i && t.beta[k].imag() < 0.0) t.beta[k] = std::conj(t.beta[i]);
    }
    for (const cd& z : t.beta)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NonConvergence("non-finite cubic root");
    std::sort(t.beta.begin(), t.beta.end(), root_order);
    return t;
}

EigenTriple eigen_triple(const PhysicalParams& p, const WaveIndex& idx) {
    EigenTriple t = solve_cubic(cubic_coeffs(p, idx));
    t.index = idx;
    return t;
}

std::vector<SpectrumEntry> spectrum_at(const PhysicalParams& p, const WaveIndex& idx,
                                       SpaceFlag space) {
    // Rebuild through classify so hand-made indices are rejected consistently.
    const LatticeClass cls = classify(idx.j, idx.k, idx.l);
    std::vector<SpectrumEntry> out;
    switch (cls) {
        case LatticeClass::Lambda1: {
            const EigenTriple t = eigen_triple(p, idx);
            const int copies = space == SpaceFlag::Full ? 2 : 1;
            for (int q = 0; q < 3; ++q)
                for (int c = 0; c < copies; ++c) out.push_back({t.beta[q], std::to_string(q + 1)});
            break;
        }
        case LatticeClass::Lambda2: {
            const cd b = -p.sigma * idx.alpha_sq;
            out.push_back({b, "shear"});
            out.push_back({b, "shear"});
            break;
        }
        case LatticeClass::Lambda3: {
            const double lz = static_cast<double>(idx.l) * idx.l * kPi2;
            out.push_back({-lz, "thermal"});
            if (space == SpaceFlag::Full) {
                out.push_back({cd(-p.sigma * lz, 1.0 / p.ro), "inertial+"});
                out.push_back({cd(-p.sigma * lz, -1.0 / p.ro), "inertial-"});
            }
            break;
        }
    }
    return out;
}

GrowthRate growth_rate(const PhysicalParams& p, const Truncation& t, SpaceFlag space) {
    if (t.jmax < 1 && t.kmax < 1) throw PreconditionError("truncation too small");
    GrowthRate g;
    bool first = true;
    for (const WaveIndex& idx : lattice(p, t)) {
        for (const SpectrumEntry& e : spectrum_at(p, idx, space)) {
            if (first || e.beta.real() > g.re) {
                g = {e.beta.real(), e.beta.imag(), idx};
                first = false;
            }
        }
    }
    return g;
}

EigenvectorCoeffs eigvec_coeffs(cd beta, const PhysicalParams& p, const WaveIndex& idx) {
    const double g2 = idx.gamma_sq;
    const cd d1 = beta + p.sigma * g2;
    const cd d2 = beta + g2;
    const double tol = 1e-12 * g2;
    if (std::abs(d1) < tol || std::abs(d2) < tol)
        throw SingularShift("eigenvector formula undefined at " + label(idx));
    EigenvectorCoeffs e;
    e.a1 = -1.0 / (p.ro * d1);
    e.a2 = 1.0 / d2;
    e.c1d = 1.0 / (p.ro * d1);
    e.c2d = p.sigma * p.rayleigh / d2;
    return e;
}

EigenField assemble_eigenvector(const PhysicalParams& p, const WaveIndex& idx, cd beta,
                                int variant, const GridShape& shape, bool dual) {
    if (idx.cls != LatticeClass::Lambda1) throw WrongClass(label(idx) + " is not in Lambda1");
    if (idx.k != 0) throw PreconditionError("eigenfield assembly needs k = 0");
    if (variant != 1 && variant != 2) throw PreconditionError("variant must be 1 or 2");
    if (shape.alpha1 != p.alpha1) throw PreconditionError("grid alpha1 differs from params");
    const EigenvectorCoeffs e = eigvec_coeffs(beta, p, idx);
    const cd b1 = dual ? e.c1d : e.a1;
    const cd b2 = dual ? e.c2d : e.a2;
    const double kx = idx.j * p.alpha1;
    const double kz = idx.l * kPi;
    const double q = kz / kx;
    EigenField f{FieldOnGrid(shape), FieldOnGrid(shape)};
    for (int m = 0; m <= shape.nz; ++m) {
        const double cz = std::cos(kz * shape.z(m));
        const double sz = std::sin(kz * shape.z(m));
        for (int i = 0; i < shape.nx; ++i) {
            const std::size_t n = static_cast<std::size_t>(m) * shape.nx + i;
            const double cx = std::cos(kx * shape.x(i));
            const double sx = std::sin(kx * shape.x(i));
            // variant 1: u ~ -q sin cos, w ~ cos sin; variant 2 shifts x by a quarter period
            const double hu = variant == 1 ? -q * sx * cz : q * cx * cz;
            const double hw = variant == 1 ? cx * sz : sx * sz;
            f.re.u[n] = hu;
            f.re.w[n] = hw;
            f.re.v[n] = b1.real() * hu;
            f.im.v[n] = b1.imag() * hu;
            f.re.T[n] = b2.real() * hw;
            f.im.T[n] = b2.imag() * hw;
        }
    }
    return f;
}

namespace {

// Applies the linearized operator to a real field in spectral form.
SpectralFields apply_linear(const PhysicalParams& p, const SpectralFields& s) {
    const GridShape& g = s.shape;
    const int rows = g.rows(), cols = g.spec_cols();
    SpectralFields out(g);
    for (int r = 0; r < rows; ++r) {
        for (int j = 0; j < cols; ++j) {
            const std::size_t i = static_cast<std::size_t>(r) * cols + j;
            const double kx = j * p.alpha1;
            const double kz = r * kPi;
            const double k2 = kx * kx + kz * kz;
            out.u[i] = -p.sigma * k2 * s.u[i] + s.v[i] / p.ro;
            out.v[i] = -p.sigma * k2 * s.v[i] - s.u[i] / p.ro;
            out.w[i] = -p.sigma * k2 * s.w[i] + p.sigma * p.rayleigh * s.T[i];
            out.T[i] = -k2 * s.T[i] + s.w[i];
        }
    }
    leray_project(out.u, out.w, rows, cols, p.alpha1);
    return out;
}

double spectral_norm_sq(const SpectralFields& s) {
    const GridShape& g = s.shape;
    const int rows = g.rows(), cols = g.spec_cols();
    double total = 0.0;
    for (int c = 0; c < 4; ++c) {
        const auto& a = s.comp(c);
        for (int r = 0; r < rows; ++r) {
            const double wz = r == 0 ? 1.0 : 0.5;
            for (int j = 0; j < cols; ++j) {
                const double wx = (j == 0 || 2 * j == g.nx) ? 1.0 : 2.0;
                total += wz * wx * std::norm(a[static_cast<std::size_t>(r) * cols + j]);
            }
        }
    }
    return total * g.lx();
}

}  // namespace

double linear_residual(const PhysicalParams& p, const EigenField& psi, cd beta) {
    const GridShape& g = psi.re.shape;
    if (!(psi.im.shape == g)) throw PreconditionError("real and imaginary grids differ");
    GridTransform tr(g.nx, g.nz);
    const SpectralFields sr = to_spectral(psi.re, tr);
    const SpectralFields si = to_spectral(psi.im, tr);
    const double denom = spectral_norm_sq(sr) + spectral_norm_sq(si);
    if (!(denom > 0.0)) throw PreconditionError("linear_residual needs a nonzero field");
    SpectralFields rr = apply_linear(p, sr);
    SpectralFields ri = apply_linear(p, si);
    const double br = beta.real(), bi = beta.imag();
    for (int c = 0; c < 4; ++c) {
        auto& xr = rr.comp(c);
        auto& xi = ri.comp(c);
        const auto& yr = sr.comp(c);
        const auto& yi = si.comp(c);
        for (std::size_t i = 0; i < xr.size(); ++i) {
            xr[i] += -br * yr[i] + bi * yi[i];
            xi[i] += -br * yi[i] - bi * yr[i];
        }
    }
    return std::sqrt((spectral_norm_sq(rr) + spectral_norm_sq(ri)) / denom);
}

double linear_residual(const PhysicalParams& p, const FieldOnGrid& psi, cd beta) {
    return linear_residual(p, EigenField{psi, FieldOnGrid(psi.shape)}, beta);
}

}  // namespace rotabouss
