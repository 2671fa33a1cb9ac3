#include "rotabouss/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "rotabouss/critical.hpp"
#include "rotabouss/errors.hpp"
#include "rotabouss/spectrum.hpp"

namespace rotabouss {
namespace {

WaveIndex critical_index(const PhysicalParams& p, int j1) {
    if (j1 < 1) throw PreconditionError("j1 must be >= 1");
    return make_index(j1, 0, 1, p);
}

InteractionBlock closed_block(double w1, double w2, double half_q) {
    // w1, w2: weights on the v- and T-basis fields; half_q = pi^2 / (2 j1 alpha1).
    InteractionBlock g{};
    g[0][0][VSin2x] = -w1 * half_q;
    g[0][0][TSin2z] = -w2 * kPi / 2.0;
    g[0][1][UCos2z] = -half_q;
    g[0][1][VCos2z] = -w1 * half_q;
    g[0][1][VCos2x] = w1 * half_q;
    g[1][0][UCos2z] = half_q;
    g[1][0][VCos2z] = w1 * half_q;
    g[1][0][VCos2x] = w1 * half_q;
    g[1][1][VSin2x] = w1 * half_q;
    g[1][1][TSin2z] = -w2 * kPi / 2.0;
    return g;
}

FieldOnGrid mode_field(InteractionMode m, int j1, const GridShape& s) {
    FieldOnGrid f(s);
    const double kx = 2.0 * j1 * s.alpha1;
    for (int r = 0; r <= s.nz; ++r)
        for (int i = 0; i < s.nx; ++i) {
            const std::size_t n = static_cast<std::size_t>(r) * s.nx + i;
            const double x = s.x(i), z = s.z(r);
            switch (m) {
                case UCos2z: f.u[n] = std::cos(2.0 * kPi * z); break;
                case VCos2z: f.v[n] = std::cos(2.0 * kPi * z); break;
                case VCos2x: f.v[n] = std::cos(kx * x); break;
                case VSin2x: f.v[n] = std::sin(kx * x); break;
                case TSin2z: f.T[n] = std::sin(2.0 * kPi * z); break;
            }
        }
    return f;
}

}  // namespace

InteractionTable interaction_closed_form(const PhysicalParams& p, int j1, double beta) {
    const WaveIndex idx = critical_index(p, j1);
    const EigenvectorCoeffs e = eigvec_coeffs(beta, p, idx);
    const double half_q = kPi2 / (2.0 * j1 * p.alpha1);
    InteractionTable t;
    t.j1 = j1;
    t.beta = beta;
    t.direct = closed_block(e.a1.real(), e.a2.real(), half_q);
    t.dual = closed_block(e.c1d.real(), e.c2d.real(), half_q);
    return t;
}

InteractionTable interaction_quadrature(const PhysicalParams& p, int j1, double beta,
                                        const GridShape& shape) {
    const WaveIndex idx = critical_index(p, j1);
    InteractionTable t;
    t.j1 = j1;
    t.beta = beta;
    std::array<FieldOnGrid, kInteractionModes> modes;
    std::array<double, kInteractionModes> mode_norm2{};
    for (int m = 0; m < kInteractionModes; ++m) {
        modes[m] = mode_field(static_cast<InteractionMode>(m), j1, shape);
        mode_norm2[m] = inner(modes[m], modes[m]);
    }
    double remainder = 0.0;
    for (int side = 0; side < 2; ++side) {
        const bool dual = side == 1;
        const std::array<FieldOnGrid, 2> psi = {
            assemble_eigenvector(p, idx, beta, 1, shape, dual).re,
            assemble_eigenvector(p, idx, beta, 2, shape, dual).re};
        InteractionBlock& blk = dual ? t.dual : t.direct;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                FieldOnGrid g = bilinear_g(psi[a], psi[b]);
                const double gnorm = norm(g);
                for (int m = 0; m < kInteractionModes; ++m) {
                    blk[a][b][m] = inner(g, modes[m]) / mode_norm2[m];
                    FieldOnGrid part = modes[m];
                    part *= -blk[a][b][m];
                    g += part;
                }
                if (gnorm > 0.0) remainder = std::max(remainder, norm(g) / gnorm);
            }
    }
    t.quadrature_remainder = remainder;
    return t;
}

InteractionTable interaction_integrals(const PhysicalParams& p, int j1, double beta) {
    InteractionTable closed = interaction_closed_form(p, j1, beta);
    const InteractionTable quad = interaction_quadrature(p, j1, beta, GridShape{64, 32, p.alpha1});
    double scale = 0.0, worst = 0.0;
    for (const auto* blk : {&closed.direct, &closed.dual})
        for (const auto& row : *blk)
            for (const auto& entries : row)
                for (double v : entries) scale = std::max(scale, std::abs(v));
    for (int side = 0; side < 2; ++side) {
        const InteractionBlock& c = side ? closed.dual : closed.direct;
        const InteractionBlock& q = side ? quad.dual : quad.direct;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int m = 0; m < kInteractionModes; ++m)
                    worst = std::max(worst, std::abs(c[a][b][m] - q[a][b][m]));
    }
    closed.quadrature_mismatch = scale > 0.0 ? worst / scale : worst;
    closed.quadrature_remainder = quad.quadrature_remainder;
    return closed;
}

CenterManifoldCoeffs center_manifold_coeffs(const PhysicalParams& p, int j1, double r) {
    const WaveIndex idx = critical_index(p, j1);
    const PhysicalParams pr = p.with_rayleigh(r);
    const double beta = eigen_triple(pr, idx).beta[0].real();
    const EigenvectorCoeffs e = eigvec_coeffs(beta, pr, idx);
    const double a2j = 2.0 * j1 * p.alpha1;
    CenterManifoldCoeffs c;
    c.phi_2j = e.a1.real() * kPi2 / (p.sigma * std::pow(a2j, 4));
    c.phi_002 = -e.a2.real() / (8.0 * kPi);
    return c;
}

double delta(const PhysicalParams& p, int j1) {
    const UniquenessCheck chk = check_c6(p);
    if (chk.status == Uniqueness::Fails)
        throw PreconditionError("delta needs a single critical 2-D mode (uniqueness check fails)");
    if (chk.j_crit != j1)
        throw PreconditionError("delta: j1 = " + std::to_string(j1) + " is not the critical j (" +
                                std::to_string(chk.j_crit) + ")");
    const PhysicalParams pc = p.with_rayleigh(rc1_closed_form(p, j1));
    const WaveIndex idx = critical_index(pc, j1);
    const EigenvectorCoeffs e = eigvec_coeffs(0.0, pc, idx);
    const double ac1 = (e.a1 * e.c1d).real();
    const double ac2 = (e.a2 * e.c2d).real();
    const double a4 = std::pow(2.0 * j1 * p.alpha1, 4);
    const double a1s = j1 * j1 * p.alpha1 * p.alpha1;
    const double num = 2.0 * ac1 * kPi2 * kPi2 / (p.sigma * a4) + ac2 / 8.0;
    const double den = kPi2 / a1s * (1.0 + ac1) + 1.0 + ac2;
    const double d = -num / den;
    if (!(d < 0.0)) throw PositiveDelta("computed cubic coefficient " + std::to_string(d) + " >= 0");
    return d;
}

double AmplitudeModel::beta_of_r(double r) const {
    const WaveIndex idx = make_index(j1, 0, 1, params);
    return eigen_triple(params.with_rayleigh(r), idx).beta[0].real();
}

double AmplitudeModel::radius_pred(double r) const { return predicted_radius(*this, r); }

AmplitudeModel build_amplitude_model(const PhysicalParams& p) {
    const UniquenessCheck chk = check_c6(p);
    if (chk.status == Uniqueness::Fails)
        throw PreconditionError("amplitude model needs a single critical 2-D mode");
    AmplitudeModel m;
    m.params = p.with_rayleigh(0.0);
    m.j1 = chk.j_crit;
    m.r_c1 = rc1_closed_form(p, m.j1);
    m.delta = delta(p, m.j1);
    m.cm = center_manifold_coeffs(p, m.j1, m.r_c1);
    return m;
}

double predicted_radius(const AmplitudeModel& m, double r) {
    if (r < m.r_c1 * (1.0 - 1e-12))
        throw PreconditionError("predicted_radius needs R >= R_c1");
    const double beta = m.beta_of_r(r);
    return beta > 0.0 ? std::sqrt(-beta / m.delta) : 0.0;
}

std::array<double, 2> amplitude_rhs(double x, double y, double beta, double delta) {
    const double r2 = x * x + y * y;
    return {beta * x + delta * r2 * x, beta * y + delta * r2 * y};
}

Trajectory integrate_amplitude(double beta, double delta, double x0, double y0, double t_end,
                               double dt) {
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw PreconditionError("need dt > 0 and t_end >= 0");
    const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
    Trajectory tr;
    tr.t.reserve(steps + 1);
    tr.x.reserve(steps + 1);
    tr.y.reserve(steps + 1);
    double x = x0, y = y0, t = 0.0;
    tr.t.push_back(t), tr.x.push_back(x), tr.y.push_back(y);
    for (long n = 0; n < steps; ++n) {
        const double h = std::min(dt, t_end - t);
        const auto k1 = amplitude_rhs(x, y, beta, delta);
        const auto k2 = amplitude_rhs(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1], beta, delta);
        const auto k3 = amplitude_rhs(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1], beta, delta);
        const auto k4 = amplitude_rhs(x + h * k3[0], y + h * k3[1], beta, delta);
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        t = (n + 1 == steps) ? t_end : t + h;
        tr.t.push_back(t), tr.x.push_back(x), tr.y.push_back(y);
    }
    return tr;
}

Trajectory integrate_amplitude(const AmplitudeModel& m, double r, double x0, double y0,
                               double t_end, double dt) {
    return integrate_amplitude(m.beta_of_r(r), m.delta, x0, y0, t_end, dt);
}

}  // namespace rotabouss
