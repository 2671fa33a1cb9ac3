#include "rotabouss/simulator.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>

#include "rotabouss/errors.hpp"
#include "rotabouss/spectrum.hpp"

namespace rotabouss {

std::string_view to_string(TimeScheme s) {
    switch (s) {
        case TimeScheme::ImexEuler: return "imex-euler";
        case TimeScheme::ImexCnab2: return "imex-cnab2";
        case TimeScheme::Etd2: return "etd2";
    }
    return "?";
}

TimeScheme parse_scheme(std::string_view s) {
    if (s == "imex-euler") return TimeScheme::ImexEuler;
    if (s == "imex-cnab2") return TimeScheme::ImexCnab2;
    if (s == "etd2") return TimeScheme::Etd2;
    throw PreconditionError("scheme must be imex-euler, imex-cnab2 or etd2");
}

void SimConfig::validate() const {
    params.validate();
    if (nx < 8 || nx % 2 != 0) throw PreconditionError("nx must be even and >= 8");
    if (nz < 2) throw PreconditionError("nz must be >= 2");
    if (!(dt > 0.0)) throw PreconditionError("dt must be > 0");
    if (!(t_end >= 0.0)) throw PreconditionError("t_end must be >= 0");
    if (!(diag_every > 0.0)) throw PreconditionError("diag_every must be > 0");
    if (harmonic < 1) throw PreconditionError("harmonic must be >= 1");
    if (seed_mode.k != 0) throw PreconditionError("seed mode needs k = 0");
    if (seed_mode.j < 1 || seed_mode.l < 1) throw PreconditionError("seed mode must be in Lambda1");
    if (seed_mode.j % harmonic != 0)
        throw PreconditionError("seed mode j must be a multiple of the harmonic filter");
    if (!(seed_amp >= 0.0)) throw PreconditionError("seed_amp must be >= 0");
}

namespace {

using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

// Per-mode unknowns y = (a, v, T):
//   Full     (j >= 1, l >= 1): a = w; u follows from incompressibility
//   Coriolis (j = 0,  l >= 1): a = u; w = 0
//   Shear    (j >= 1, l = 0):  only v is nonzero
enum class Kind { Full, Coriolis, Shear };

struct ModeOp {
    int l = 0, j = 0;
    std::size_t at = 0;
    Kind kind = Kind::Full;
    Mat3 m;             // linear operator on y
    Eigen::Vector3d d;  // diffusive (implicit) diagonal
    Mat3 k;             // m - diag(d)
    Mat3 e, p1, p2;     // exponential propagator and dt*phi1, dt*phi2
};

}  // namespace

struct Simulator::Impl {
    SimConfig cfg;
    int cols = 0;  // retained x-modes
    int rows = 0;  // retained z-modes
    GridShape shape;
    GridTransform tr;
    std::vector<ModeOp> modes;

    // Full-size spectral buffers and grid buffers for the transforms.
    std::vector<cd> spec;
    std::array<std::vector<double>, 4> g;
    std::vector<double> prod;
    std::array<std::vector<cd>, 7> prods;

    std::vector<Vec3> prev;
    bool have_prev = false;
    double last_max_abs = 0.0;
    double last_max_vel = 0.0;

    explicit Impl(SimConfig c)
        : cfg((c.validate(), c)),
          cols(cfg.dealias ? (cfg.nx - 1) / 3 + 1 : cfg.nx / 2),
          rows(cfg.nz),
          shape{cfg.nx, cfg.dealias ? (3 * cfg.nz + 1) / 2 : cfg.nz, cfg.params.alpha1},
          tr(shape.nx, shape.nz) {
        cfg.seed_mode = make_index(cfg.seed_mode.j, 0, cfg.seed_mode.l, cfg.params);
        if (cfg.seed_mode.j >= cols || cfg.seed_mode.l >= rows)
            throw PreconditionError("seed mode is not resolved by the grid");
        spec.resize(shape.spec_size());
        for (auto& a : g) a.resize(shape.size());
        prod.resize(shape.size());
        for (auto& a : prods) a.resize(shape.spec_size());
        build_modes();
    }

    std::size_t full_at(int l, int j) const {
        return static_cast<std::size_t>(l) * shape.spec_cols() + j;
    }

    void build_modes() {
        const PhysicalParams& p = cfg.params;
        const double h = cfg.dt;
        for (int l = 0; l < rows; ++l)
            for (int j = 0; j < cols; ++j) {
                if ((l == 0 && j == 0) || j % cfg.harmonic != 0) continue;
                ModeOp op;
                op.l = l;
                op.j = j;
                op.at = static_cast<std::size_t>(l) * cols + j;
                const double kx = j * p.alpha1, kz = l * kPi;
                const double k2 = kx * kx + kz * kz;
                op.m.setZero();
                if (j >= 1 && l >= 1) {
                    op.kind = Kind::Full;
                    op.m(0, 0) = -p.sigma * k2;
                    op.m(0, 1) = cd(0.0, -kx * kz / (p.ro * k2));
                    op.m(0, 2) = p.sigma * p.rayleigh * kx * kx / k2;
                    op.m(1, 0) = cd(0.0, -kz / (kx * p.ro));
                    op.m(1, 1) = -p.sigma * k2;
                    op.m(2, 0) = 1.0;
                    op.m(2, 2) = -k2;
                } else if (j == 0) {
                    op.kind = Kind::Coriolis;
                    op.m(0, 0) = -p.sigma * k2;
                    op.m(0, 1) = 1.0 / p.ro;
                    op.m(1, 0) = -1.0 / p.ro;
                    op.m(1, 1) = -p.sigma * k2;
                    op.m(2, 2) = -k2;
                } else {
                    op.kind = Kind::Shear;
                    op.m(1, 1) = -p.sigma * k2;
                }
                for (int i = 0; i < 3; ++i) op.d(i) = op.m(i, i).real();
                op.k = op.m;
                for (int i = 0; i < 3; ++i) op.k(i, i) = 0.0;
                if (cfg.scheme == TimeScheme::Etd2) {
                    // exp([[hM, I, 0], [0, 0, I], [0, 0, 0]]) = [[e^{hM}, phi1, phi2], ...]
                    Eigen::MatrixXcd aug = Eigen::MatrixXcd::Zero(9, 9);
                    aug.block(0, 0, 3, 3) = op.m * h;
                    aug.block(0, 3, 3, 3) = Mat3::Identity();
                    aug.block(3, 6, 3, 3) = Mat3::Identity();
                    const Eigen::MatrixXcd ex = aug.exp();
                    op.e = ex.block(0, 0, 3, 3);
                    op.p1 = h * ex.block(0, 3, 3, 3);
                    op.p2 = h * ex.block(0, 6, 3, 3);
                }
                modes.push_back(op);
            }
        prev.assign(modes.size(), Vec3::Zero());
    }

    Vec3 gather(const ModalFields& s, const ModeOp& op) const {
        switch (op.kind) {
            case Kind::Full: return {s.w[op.at], s.v[op.at], s.T[op.at]};
            case Kind::Coriolis: return {s.u[op.at], s.v[op.at], s.T[op.at]};
            case Kind::Shear: return {0.0, s.v[op.at], 0.0};
        }
        return Vec3::Zero();
    }

    void scatter(ModalFields& s, const ModeOp& op, const Vec3& y) const {
        switch (op.kind) {
            case Kind::Full:
                s.w[op.at] = y(0);
                s.u[op.at] = cd(0.0, op.l * kPi / (op.j * cfg.params.alpha1)) * y(0);
                s.v[op.at] = y(1);
                s.T[op.at] = y(2);
                break;
            case Kind::Coriolis:
                s.u[op.at] = y(0);
                s.w[op.at] = 0.0;
                s.v[op.at] = y(1);
                s.T[op.at] = y(2);
                break;
            case Kind::Shear:
                s.u[op.at] = 0.0;
                s.w[op.at] = 0.0;
                s.v[op.at] = y(1);
                s.T[op.at] = 0.0;
                break;
        }
    }

    // Projected forcing in the y variables.
    Vec3 project(const ModalFields& n, const ModeOp& op) const {
        switch (op.kind) {
            case Kind::Full: {
                const double kx = op.j * cfg.params.alpha1, kz = op.l * kPi;
                const double k2 = kx * kx + kz * kz;
                const cd a = (kx * kx * n.w[op.at] - cd(0.0, kx * kz) * n.u[op.at]) / k2;
                return {a, n.v[op.at], n.T[op.at]};
            }
            case Kind::Coriolis: return {n.u[op.at], n.v[op.at], n.T[op.at]};
            case Kind::Shear: return {0.0, n.v[op.at], 0.0};
        }
        return Vec3::Zero();
    }

    void to_physical(const std::vector<cd>& c, Parity par, std::vector<double>& out) {
        std::fill(spec.begin(), spec.end(), cd{});
        for (int l = 0; l < rows; ++l)
            for (int j = 0; j < cols; ++j) spec[full_at(l, j)] = c[static_cast<std::size_t>(l) * cols + j];
        tr.inverse(par, spec, out);
    }

    ModalFields nonlinear(const ModalFields& s) {
        const auto& [gu, gv, gw, gT] = g;
        to_physical(s.u, Parity::Cos, g[0]);
        to_physical(s.v, Parity::Cos, g[1]);
        to_physical(s.w, Parity::Sin, g[2]);
        to_physical(s.T, Parity::Sin, g[3]);
        double mabs = 0.0, mvel = 0.0;
        for (std::size_t i = 0; i < gu.size(); ++i) {
            mvel = std::max({mvel, std::abs(gu[i]), std::abs(gw[i])});
            mabs = std::max({mabs, std::abs(gv[i]), std::abs(gT[i])});
        }
        last_max_vel = mvel;
        last_max_abs = std::max(mabs, mvel);
        if (!std::isfinite(last_max_abs) || last_max_abs > 1e6)
            throw BlowUp("field max-norm " + std::to_string(last_max_abs) + " exceeds 1e6");

        // Conservative form: products in physical space, derivatives spectrally.
        struct P {
            const std::vector<double>* a;
            const std::vector<double>* b;
            Parity par;
        };
        const P plan[7] = {{&gu, &gu, Parity::Cos}, {&gu, &gv, Parity::Cos},
                           {&gu, &gw, Parity::Sin}, {&gu, &gT, Parity::Sin},
                           {&gw, &gv, Parity::Sin}, {&gw, &gw, Parity::Cos},
                           {&gw, &gT, Parity::Cos}};
        for (int q = 0; q < 7; ++q) {
            const auto& a = *plan[q].a;
            const auto& b = *plan[q].b;
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i];
            tr.forward(plan[q].par, prod, prods[q]);
        }
        const auto& [uu, uv, uw, uT, wv, ww, wT] = prods;
        ModalFields n(rows, cols);
        for (int l = 0; l < rows; ++l)
            for (int j = 0; j < cols; ++j) {
                const std::size_t f = full_at(l, j), c = n.at(l, j);
                const cd ikx(0.0, j * cfg.params.alpha1);
                const double kz = l * kPi;
                n.u[c] = -(ikx * uu[f] + kz * uw[f]);
                n.v[c] = -(ikx * uv[f] + kz * wv[f]);
                n.w[c] = -(ikx * uw[f] - kz * ww[f]);
                n.T[c] = -(ikx * uT[f] - kz * wT[f]);
            }
        return n;
    }

    void constrain(ModalFields& f) const {
        f.u[0] = 0.0;
        f.v[0] = 0.0;
        f.w[0] = 0.0;
        f.T[0] = 0.0;
        for (int l = 0; l < rows; ++l)
            for (int j = 0; j < cols; ++j) {
                const std::size_t i = f.at(l, j);
                if (j % cfg.harmonic != 0) {
                    f.u[i] = f.v[i] = f.w[i] = f.T[i] = 0.0;
                    continue;
                }
                if (l == 0) f.w[i] = f.T[i] = 0.0;
                if (cfg.symmetry == SpaceFlag::Symmetric) {
                    f.u[i] = cd(0.0, f.u[i].imag());
                    f.v[i] = cd(0.0, f.v[i].imag());
                    f.w[i] = cd(f.w[i].real(), 0.0);
                    f.T[i] = cd(f.T[i].real(), 0.0);
                }
            }
    }
};

Simulator::Simulator(SimConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

const SimConfig& Simulator::config() const { return impl_->cfg; }
int Simulator::x_modes() const { return impl_->cols; }
int Simulator::z_modes() const { return impl_->rows; }
GridShape Simulator::grid() const { return impl_->shape; }

SimState Simulator::zero_state() const { return SimState(impl_->rows, impl_->cols); }

SimState Simulator::seed_from_eigenvector(double eps) const {
    if (!(eps >= 0.0)) throw PreconditionError("seed amplitude must be >= 0");
    const SimConfig& c = impl_->cfg;
    SimState s = zero_state();
    if (eps == 0.0) return s;
    const WaveIndex& idx = c.seed_mode;
    const cd beta = eigen_triple(c.params, idx).beta[0];
    const EigenvectorCoeffs e = eigvec_coeffs(beta, c.params, idx);
    // Real part of phi1 + A1 phi2 + A2 phi3: w = cos(j a x) sin(l pi z), so the
    // e^{ijax} coefficient of w is eps/2.
    const std::size_t i = s.at(idx.l, idx.j);
    const double q = idx.l * kPi / (idx.j * c.params.alpha1);
    s.w[i] = 0.5 * eps;
    s.u[i] = cd(0.0, 0.5 * eps * q);
    s.v[i] = e.a1.real() * s.u[i];
    s.T[i] = e.a2.real() * 0.5 * eps;
    return s;
}

cd Simulator::seed_mode(SimState& s, int j, int l, int branch, cd amp) const {
    const SimConfig& c = impl_->cfg;
    const PhysicalParams& p = c.params;
    if (j < 0 || l < 0 || j >= impl_->cols || l >= impl_->rows || (j == 0 && l == 0))
        throw PreconditionError("mode not retained");
    if (j % c.harmonic != 0) throw PreconditionError("mode outside the harmonic family");
    const std::size_t i = s.at(l, j);
    const double kx = j * p.alpha1, kz = l * kPi, k2 = kx * kx + kz * kz;
    if (j >= 1 && l >= 1) {
        if (branch < 0 || branch > 2) throw PreconditionError("branch must be 0, 1 or 2");
        const WaveIndex idx = make_index(j, 0, l, p);
        const cd beta = eigen_triple(p, idx).beta[branch];
        const EigenvectorCoeffs e = eigvec_coeffs(beta, p, idx);
        const cd iq(0.0, kz / kx);
        s.w[i] += amp;
        s.u[i] += iq * amp;
        s.v[i] += iq * e.a1 * amp;
        s.T[i] += e.a2 * amp;
        return beta;
    }
    if (j == 0) {
        switch (branch) {
            case 0: s.T[i] += amp; return -k2;
            case 1: s.u[i] += amp; s.v[i] += cd(0.0, 1.0) * amp; return {-p.sigma * k2, 1.0 / p.ro};
            case 2: s.u[i] += amp; s.v[i] -= cd(0.0, 1.0) * amp; return {-p.sigma * k2, -1.0 / p.ro};
            default: throw PreconditionError("branch must be 0, 1 or 2");
        }
    }
    if (branch != 0) throw PreconditionError("l = 0 modes have a single branch");
    s.v[i] += amp;
    return -p.sigma * k2;
}

ModalFields Simulator::nonlinear_term(const SimState& s) { return impl_->nonlinear(s); }

void Simulator::project_divfree(ModalFields& f) const {
    const double a = impl_->cfg.params.alpha1;
    for (int l = 0; l < f.rows; ++l)
        for (int j = 0; j < f.cols; ++j) {
            const std::size_t i = f.at(l, j);
            if (j == 0) {
                f.w[i] = 0.0;
            } else if (l == 0) {
                f.u[i] = 0.0;
                f.w[i] = 0.0;
            } else {
                project_mode(f.u[i], f.w[i], j, l, a);
            }
        }
}

void Simulator::apply_constraints(ModalFields& f) const { impl_->constrain(f); }

void Simulator::reset_history() {
    impl_->have_prev = false;
    std::fill(impl_->prev.begin(), impl_->prev.end(), Vec3::Zero());
}

void Simulator::step(SimState& s) {
    Impl& m = *impl_;
    const double h = m.cfg.dt;
    ModalFields n;
    if (m.cfg.nonlinear) n = m.nonlinear(s);
    for (std::size_t q = 0; q < m.modes.size(); ++q) {
        const ModeOp& op = m.modes[q];
        const Vec3 y = m.gather(s, op);
        const Vec3 f = m.cfg.nonlinear ? m.project(n, op) : Vec3::Zero();
        Vec3 next;
        switch (m.cfg.scheme) {
            case TimeScheme::Etd2:
                next = op.e * y + op.p1 * f;
                if (m.have_prev) next += op.p2 * (f - m.prev[q]);
                m.prev[q] = f;
                break;
            case TimeScheme::ImexEuler: {
                const Vec3 rhs = y + h * (op.k * y + f);
                for (int i = 0; i < 3; ++i) next(i) = rhs(i) / (1.0 - h * op.d(i));
                break;
            }
            case TimeScheme::ImexCnab2: {
                const Vec3 explicit_part = op.k * y + f;
                Vec3 rhs;
                if (m.have_prev) {
                    rhs = h * (1.5 * explicit_part - 0.5 * m.prev[q]);
                    for (int i = 0; i < 3; ++i) {
                        rhs(i) += (1.0 + 0.5 * h * op.d(i)) * y(i);
                        next(i) = rhs(i) / (1.0 - 0.5 * h * op.d(i));
                    }
                } else {
                    rhs = y + h * explicit_part;
                    for (int i = 0; i < 3; ++i) next(i) = rhs(i) / (1.0 - h * op.d(i));
                }
                m.prev[q] = explicit_part;
                break;
            }
        }
        m.scatter(s, op, next);
    }
    m.have_prev = true;
    m.constrain(s);
    s.t += h;
    for (const auto* a : {&s.u, &s.v, &s.w, &s.T})
        for (const cd& z : *a)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw BlowUp("non-finite coefficient at t = " + std::to_string(s.t));
}

double Simulator::kinetic_energy(const ModalFields& s) const {
    // Parseval on the cell: cos/sin in z average 1/2 except l = 0; j > 0
    // carries its conjugate.
    const double lx = impl_->shape.lx();
    double total = 0.0;
    for (int l = 0; l < s.rows; ++l)
        for (int j = 0; j < s.cols; ++j) {
            const std::size_t i = s.at(l, j);
            const double wgt = (l == 0 ? 1.0 : 0.5) * (j == 0 ? 1.0 : 2.0);
            total += wgt * (std::norm(s.u[i]) + std::norm(s.v[i]) + std::norm(s.w[i]));
        }
    return 0.5 * lx * total;
}

double Simulator::thermal_energy(const ModalFields& s) const {
    const double lx = impl_->shape.lx();
    double total = 0.0;
    for (int l = 1; l < s.rows; ++l)
        for (int j = 0; j < s.cols; ++j)
            total += 0.5 * (j == 0 ? 1.0 : 2.0) * std::norm(s.T[s.at(l, j)]);
    return 0.5 * lx * total;
}

double Simulator::divergence_max(const ModalFields& s) {
    Impl& m = *impl_;
    std::vector<cd> div(s.size());
    for (int l = 0; l < s.rows; ++l)
        for (int j = 0; j < s.cols; ++j) {
            const std::size_t i = s.at(l, j);
            div[i] = cd(0.0, j * m.cfg.params.alpha1) * s.u[i] + l * kPi * s.w[i];
        }
    m.to_physical(div, Parity::Cos, m.prod);
    double mx = 0.0;
    for (double x : m.prod) mx = std::max(mx, std::abs(x));
    return mx;
}

FieldOnGrid Simulator::fields_on_grid(const ModalFields& s) {
    Impl& m = *impl_;
    FieldOnGrid f(m.shape);
    for (int c = 0; c < 4; ++c) m.to_physical(s.comp(c), FieldOnGrid::parity(c), f.comp(c));
    return f;
}

DiagnosticSample Simulator::sample(const SimState& s) {
    const WaveIndex& idx = impl_->cfg.seed_mode;
    DiagnosticSample d;
    d.t = s.t;
    d.ke = kinetic_energy(s);
    d.te = thermal_energy(s);
    d.wmode = 2.0 * s.w[s.at(idx.l, idx.j)];
    d.tmode = 2.0 * s.T[s.at(idx.l, idx.j)];
    d.growth_rate = std::numeric_limits<double>::quiet_NaN();
    d.div_max = divergence_max(s);
    return d;
}

double relative_change(const ModalFields& a, const ModalFields& b) {
    double diff = 0.0, ref = 0.0;
    for (int c = 0; c < 4; ++c) {
        const auto& x = a.comp(c);
        const auto& y = b.comp(c);
        for (std::size_t i = 0; i < x.size(); ++i) {
            diff += std::norm(x[i] - y[i]);
            ref += std::norm(x[i]);
        }
    }
    return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

Diagnostics Simulator::run() { return run(seed_from_eigenvector(impl_->cfg.seed_amp)); }

Diagnostics Simulator::run(SimState s) {
    Impl& m = *impl_;
    const SimConfig& c = m.cfg;
    if (s.rows != m.rows || s.cols != m.cols) throw PreconditionError("state does not fit the grid");
    reset_history();
    m.constrain(s);

    const auto steps = static_cast<long>(std::ceil(c.t_end / c.dt - 1e-9));
    const long stride = std::max<long>(1, std::lround(c.diag_every / c.dt));
    const double kmax = std::max(c.nx * c.params.alpha1, c.nz * kPi);

    Diagnostics d;
    auto record = [&] {
        DiagnosticSample smp = sample(s);
        if (!d.samples.empty()) {
            const DiagnosticSample& last = d.samples.back();
            const double a0 = std::abs(last.wmode), a1 = std::abs(smp.wmode);
            if (a0 > 0.0 && a1 > 0.0) smp.growth_rate = std::log(a1 / a0) / (smp.t - last.t);
        }
        d.samples.push_back(smp);
        if (!c.nonlinear) {
            const FieldOnGrid f = fields_on_grid(s);
            for (int k = 0; k < 4; ++k)
                for (double x : f.comp(k))
                    if (!std::isfinite(x) || std::abs(x) > 1e6)
                        throw BlowUp("field max-norm exceeds 1e6 at t = " + std::to_string(s.t));
        }
    };
    record();

    SimState snapshot = s;
    bool cfl_warned = false;
    for (long n = 1; n <= steps; ++n) {
        step(s);
        if (c.nonlinear) {
            const double cfl = c.dt * m.last_max_vel * kmax;
            d.max_cfl = std::max(d.max_cfl, cfl);
            if (cfl >= 0.5 && !cfl_warned) {
                cfl_warned = true;
                d.warnings.push_back("advective CFL number " + std::to_string(cfl) +
                                     " >= 0.5 at t = " + std::to_string(s.t));
            }
        }
        if (n % stride != 0 && n != steps) continue;
        record();
        if (s.t + 1e-9 >= c.steady_after && s.t - snapshot.t >= 1.0 - 1e-9) {
            const double change = relative_change(s, snapshot);
            if (change < c.steady_tol && d.samples.back().ke > 0.0) {
                if (!d.steady) d.steady_time = s.t;
                d.steady = true;
                if (c.stop_when_steady) break;
            } else {
                d.steady = false;
            }
            snapshot = s;
        }
    }

    // Sustained oscillation: repeated sign changes of the mode's real part
    // about its mean over the second half of the record.
    if (!d.steady && d.samples.size() > 8) {
        const std::size_t start = d.samples.size() / 2;
        double mean = 0.0;
        for (std::size_t i = start; i < d.samples.size(); ++i) mean += d.samples[i].wmode.real();
        mean /= static_cast<double>(d.samples.size() - start);
        int crossings = 0;
        for (std::size_t i = start + 1; i < d.samples.size(); ++i) {
            const double a = d.samples[i - 1].wmode.real() - mean;
            const double b = d.samples[i].wmode.real() - mean;
            if ((a < 0.0) != (b < 0.0)) ++crossings;
        }
        d.oscillating = crossings >= 4;
    }
    d.final_state = std::move(s);
    return d;
}

SimState shift_x(const SimState& s, double dx, double alpha1) {
    SimState out = s;
    for (int l = 0; l < s.rows; ++l)
        for (int j = 0; j < s.cols; ++j) {
            const cd ph = std::polar(1.0, j * alpha1 * dx);
            const std::size_t i = s.at(l, j);
            for (int c = 0; c < 4; ++c) out.comp(c)[i] *= ph;
        }
    return out;
}

PeriodEstimate measure_period(std::span<const double> t, std::span<const double> signal) {
    if (t.size() != signal.size()) throw PreconditionError("time and signal lengths differ");
    const std::size_t n = t.size();
    if (n < 3) throw InsufficientOscillations("need at least 3 samples");

    // Envelope: least-squares line through log|extremum| vs time.
    std::vector<double> et, ea;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double a = std::abs(signal[i]);
        if (a > 0.0 && a >= std::abs(signal[i - 1]) && a > std::abs(signal[i + 1])) {
            et.push_back(t[i]);
            ea.push_back(std::log(a));
        }
    }
    double rate = 0.0;
    if (et.size() >= 2) {
        double mt = 0, ma = 0;
        for (std::size_t i = 0; i < et.size(); ++i) mt += et[i], ma += ea[i];
        mt /= et.size();
        ma /= et.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < et.size(); ++i) {
            sxy += (et[i] - mt) * (ea[i] - ma);
            sxx += (et[i] - mt) * (et[i] - mt);
        }
        if (sxx > 0.0) rate = sxy / sxx;
    }
    std::vector<double> y(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = signal[i] * std::exp(-rate * (t[i] - t[0]));
        mean += y[i];
    }
    mean /= static_cast<double>(n);
    for (double& v : y) v -= mean;

    std::vector<double> cross;
    for (std::size_t i = 1; i < n; ++i) {
        if ((y[i - 1] < 0.0) != (y[i] < 0.0) && y[i - 1] != y[i]) {
            const double f = y[i - 1] / (y[i - 1] - y[i]);
            cross.push_back(t[i - 1] + f * (t[i] - t[i - 1]));
        }
    }
    if (cross.size() < 5)
        throw InsufficientOscillations("found " + std::to_string(cross.size()) +
                                       " zero crossings, need 5");
    std::vector<double> gaps;
    for (std::size_t i = 1; i < cross.size(); ++i) gaps.push_back(cross[i] - cross[i - 1]);
    double mg = 0.0;
    for (double gap : gaps) mg += gap;
    mg /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double gap : gaps) var += (gap - mg) * (gap - mg);
    var /= static_cast<double>(gaps.size());
    PeriodEstimate pe;
    pe.period = 2.0 * mg;
    pe.stddev = 2.0 * std::sqrt(var);
    pe.crossings = static_cast<int>(cross.size());
    pe.envelope_rate = rate;
    return pe;
}

PeriodEstimate measure_period(const Diagnostics& d) {
    std::vector<double> t, s;
    for (const DiagnosticSample& x : d.samples) {
        t.push_back(x.t);
        s.push_back(x.wmode.real());
    }
    return measure_period(t, s);
}

namespace {

constexpr char kMagic[6] = {'R', 'B', 'S', 'I', 'M', '1'};

template <typename T>
void put_le(std::ostream& os, T value) {
    auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
    os.write(reinterpret_cast<const char*>(bits.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    std::array<unsigned char, sizeof(T)> bits{};
    is.read(reinterpret_cast<char*>(bits.data()), sizeof(T));
    if (!is) throw PreconditionError("checkpoint truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
    return std::bit_cast<T>(bits);
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const SimState& s, const SimConfig& cfg) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw PreconditionError("cannot write checkpoint '" + path.string() + "'");
    os.write(kMagic, sizeof kMagic);
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(cfg.nx));
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(s.rows));
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(s.cols));
    put_le<double>(os, s.t);
    for (int c = 0; c < 4; ++c)
        for (const cd& z : s.comp(c)) {
            put_le<double>(os, z.real());
            put_le<double>(os, z.imag());
        }
    if (!os) throw PreconditionError("failed writing checkpoint '" + path.string() + "'");
}

SimState load_checkpoint(const std::filesystem::path& path, const Simulator& sim) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw PreconditionError("cannot open checkpoint '" + path.string() + "'");
    char magic[6];
    is.read(magic, sizeof magic);
    if (!is || !std::equal(magic, magic + 6, kMagic))
        throw PreconditionError("'" + path.string() + "' is not a checkpoint");
    const auto nx = get_le<std::uint64_t>(is);
    const auto rows = get_le<std::uint64_t>(is);
    const auto cols = get_le<std::uint64_t>(is);
    if (nx != static_cast<std::uint64_t>(sim.config().nx) ||
        rows != static_cast<std::uint64_t>(sim.z_modes()) ||
        cols != static_cast<std::uint64_t>(sim.x_modes()))
        throw PreconditionError("checkpoint grid does not match the simulator configuration");
    SimState s = sim.zero_state();
    s.t = get_le<double>(is);
    for (int c = 0; c < 4; ++c)
        for (cd& z : s.comp(c)) {
            const double re = get_le<double>(is);
            const double im = get_le<double>(is);
            z = {re, im};
        }
    return s;
}

}  // namespace rotabouss
