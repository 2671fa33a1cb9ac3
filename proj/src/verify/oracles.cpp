#include "verify/oracles.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace rotabouss::oracle {

std::array<cd, 3> durand_kerner(double c2, double c1, double c0) {
    auto f = [&](cd z) { return ((z + c2) * z + c1) * z + c0; };
    const double r = 1.0 + std::max({std::abs(c2), std::sqrt(std::abs(c1)), std::cbrt(std::abs(c0))});
    std::array<cd, 3> z = {cd(0.4, 0.9) * r, std::pow(cd(0.4, 0.9), 2) * r,
                           std::pow(cd(0.4, 0.9), 3) * r};
    for (int it = 0; it < 2000; ++it) {
        double moved = 0.0;
        for (int i = 0; i < 3; ++i) {
            cd den = 1.0;
            for (int k = 0; k < 3; ++k)
                if (k != i) den *= z[i] - z[k];
            const cd step = f(z[i]) / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (moved < 1e-16) break;
    }
    return z;
}

double x_star_bisection(double b) {
    const double pi2 = kPi * kPi;
    if (b == 0.0) return 0.5 * pi2;
    double lo = 0.5 * pi2, hi = 1.0;
    auto F = [&](double x) { return (2 * x - pi2) * (x + pi2) * (x + pi2) - b; };
    while (F(hi) < 0) hi *= 2;
    for (int i = 0; i < 400 && hi - lo > 0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (F(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double rc1_closed(double sigma, double ro, double alpha1, int j1) {
    const double pi2 = kPi * kPi;
    const double x = static_cast<double>(j1) * j1 * alpha1 * alpha1;
    return std::pow(x + pi2, 3) / x + pi2 / (sigma * sigma * ro * ro * x);
}

double delta_arithmetic(double sigma, double ro, double alpha1, int j1) {
    const double pi2 = kPi * kPi;
    const double a2 = static_cast<double>(j1) * j1 * alpha1 * alpha1;
    const double g2 = a2 + pi2;
    const double r = rc1_closed(sigma, ro, alpha1, j1);
    // beta = 0 weights
    const double A1 = -1.0 / (ro * sigma * g2);
    const double A2 = 1.0 / g2;
    const double C1 = 1.0 / (ro * sigma * g2);
    const double C2 = sigma * r / g2;
    const double a4 = 16.0 * a2 * a2;  // alpha^4 of (2 j1, 0)
    const double top = 2.0 * A1 * C1 * pi2 * pi2 / (sigma * a4) + A2 * C2 / 8.0;
    const double bottom = pi2 / a2 * (1.0 + A1 * C1) + 1.0 + A2 * C2;
    return -top / bottom;
}

std::array<double, 5> interaction_pointwise(const PhysicalParams& p, int j1, double beta, int a,
                                            int b, bool dual, int nx, int nz) {
    const double kx = j1 * p.alpha1, kz = kPi, q = kz / kx;
    const double g2 = kx * kx + kz * kz;
    const double w1 = dual ? 1.0 / (p.ro * (beta + p.sigma * g2)) : -1.0 / (p.ro * (beta + p.sigma * g2));
    const double w2 = dual ? p.sigma * p.rayleigh / (beta + g2) : 1.0 / (beta + g2);
    const double lx = 2.0 * kPi / p.alpha1;

    struct Pt {
        double u, v, w, T;                  // values
        double ux, vx, wx, Tx, uz, vz, wz, Tz;  // derivatives
    };
    // Member 0: u = -q s C, w = c S; member 1: u = q c C, w = s S; v, T follow.
    auto field = [&](int member, double x, double z) {
        const double c = std::cos(kx * x), s = std::sin(kx * x);
        const double C = std::cos(kz * z), S = std::sin(kz * z);
        Pt f{};
        if (member == 0) {
            f.u = -q * s * C, f.ux = -q * kx * c * C, f.uz = q * kz * s * S;
            f.w = c * S, f.wx = -kx * s * S, f.wz = kz * c * C;
        } else {
            f.u = q * c * C, f.ux = -q * kx * s * C, f.uz = -q * kz * c * S;
            f.w = s * S, f.wx = kx * c * S, f.wz = kz * s * C;
        }
        f.v = w1 * f.u, f.vx = w1 * f.ux, f.vz = w1 * f.uz;
        f.T = w2 * f.w, f.Tx = w2 * f.wx, f.Tz = w2 * f.wz;
        return f;
    };

    std::array<double, 5> num{}, den{};
    for (int m = 0; m <= nz; ++m) {
        const double z = static_cast<double>(m) / nz;
        const double wz = (m == 0 || m == nz) ? 0.5 : 1.0;
        for (int i = 0; i < nx; ++i) {
            const double x = lx * i / nx;
            const Pt fa = field(a, x, z), fb = field(b, x, z);
            const double gu = -(fa.u * fb.ux + fa.w * fb.uz);
            const double gv = -(fa.u * fb.vx + fa.w * fb.vz);
            const double gT = -(fa.u * fb.Tx + fa.w * fb.Tz);
            const double modes[5] = {std::cos(2 * kPi * z), std::cos(2 * kPi * z),
                                     std::cos(2 * kx * x), std::sin(2 * kx * x),
                                     std::sin(2 * kPi * z)};
            const double g[5] = {gu, gv, gv, gv, gT};
            for (int k = 0; k < 5; ++k) {
                num[k] += wz * g[k] * modes[k];
                den[k] += wz * modes[k] * modes[k];
            }
        }
    }
    std::array<double, 5> out{};
    for (int k = 0; k < 5; ++k) out[k] = num[k] / den[k];
    return out;
}

FieldOnGrid random_solenoidal(const GridShape& shape, std::uint64_t seed, int jmax, int lmax) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    FieldOnGrid f(shape);
    const double a = shape.alpha1;
    for (int j = 0; j <= jmax; ++j) {
        for (int l = 0; l <= lmax; ++l) {
            // psi = sin(l pi z)(c cos jax + s sin jax); u = -psi_z, w = psi_x.
            const double c = N(rng), s = N(rng);
            const double vc = N(rng), vs = N(rng), tc = N(rng), ts = N(rng);
            const double mean_u = j == 0 ? N(rng) : 0.0;
            for (int m = 0; m <= shape.nz; ++m) {
                const double z = shape.z(m);
                const double sz = std::sin(l * kPi * z), cz = std::cos(l * kPi * z);
                for (int i = 0; i < shape.nx; ++i) {
                    const double x = shape.x(i);
                    const double cx = std::cos(j * a * x), sx = std::sin(j * a * x);
                    const std::size_t n = static_cast<std::size_t>(m) * shape.nx + i;
                    f.u[n] += -l * kPi * cz * (c * cx + s * sx) + mean_u * cz;
                    f.w[n] += sz * j * a * (-c * sx + s * cx);
                    f.v[n] += cz * (vc * cx + vs * sx);
                    f.T[n] += sz * (tc * cx + ts * sx);
                }
            }
        }
    }
    return f;
}

}  // namespace rotabouss::oracle
