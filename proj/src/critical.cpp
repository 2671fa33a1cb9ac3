#include "rotabouss/critical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rotabouss/errors.hpp"
#include "rotabouss/parallel.hpp"
#include "rotabouss/spectrum.hpp"

namespace rotabouss {

double neutral_value(double x, double b) {
    const double s = x + kPi2;
    return (s * s * s + b) / x;
}

double x_star(double b) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw PreconditionError("x_star needs finite b >= 0");
    const double lo0 = 0.5 * kPi2;
    if (b == 0.0) return lo0;
    auto F = [b](double x) { return (2.0 * x - kPi2) * (x + kPi2) * (x + kPi2) - b; };
    auto dF = [](double x) { return 6.0 * x * (x + kPi2); };
    double lo = lo0;
    double hi = lo0 + std::max(1.0, std::cbrt(0.5 * b));
    while (F(hi) < 0.0) hi *= 2.0;
    double x = std::min(hi, lo0 + std::cbrt(0.5 * b));
    for (int it = 0; it < 200; ++it) {
        const double f = F(x);
        if (f == 0.0) return x;
        (f < 0.0 ? lo : hi) = x;
        double next = x - f / dF(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const bool done = std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x;
        x = next;
        if (done) break;
    }
    // Newton stalls a few ulps out where F is dominated by rounding; settle on
    // the neighbouring double with the smallest residual.
    double best = x;
    double probe = x;
    for (int k = 0; k < 8; ++k) probe = std::nextafter(probe, 0.0);
    for (int k = 0; k < 17; ++k, probe = std::nextafter(probe, std::numeric_limits<double>::infinity()))
        if (std::abs(F(probe)) < std::abs(F(best))) best = probe;
    return best;
}

NeutralCurve neutral_curve(double b, std::span<const double> xs) {
    NeutralCurve c;
    c.b = b;
    c.x_star = x_star(b);
    for (double x : xs) {
        if (!(x > 0.0)) throw PreconditionError("neutral curve samples need x > 0");
        c.samples.emplace_back(x, neutral_value(x, b));
    }
    return c;
}

double steady_offset(const PhysicalParams& p) { return kPi2 / (p.sigma * p.sigma * p.ro * p.ro); }

double hopf_offset(const PhysicalParams& p) {
    const double s1 = p.sigma + 1.0;
    return kPi2 / (s1 * s1 * p.ro * p.ro);
}

namespace {

void require_lambda1(const WaveIndex& idx) {
    if (idx.cls != LatticeClass::Lambda1) throw WrongClass("threshold needs a Lambda1 index");
}

double rotation_term(const PhysicalParams& p, const WaveIndex& idx) {
    return static_cast<double>(idx.l) * idx.l * kPi2 / (p.ro * p.ro);
}

}  // namespace

double steady_threshold(const PhysicalParams& p, const WaveIndex& idx) {
    require_lambda1(idx);
    const double g2 = idx.gamma_sq;
    return (g2 * g2 * g2 + rotation_term(p, idx) / (p.sigma * p.sigma)) / idx.alpha_sq;
}

double hopf_threshold(const PhysicalParams& p, const WaveIndex& idx) {
    require_lambda1(idx);
    const double g2 = idx.gamma_sq;
    const double s1 = p.sigma + 1.0;
    return (2.0 * s1 * g2 * g2 * g2 + 2.0 * rotation_term(p, idx) / s1) / idx.alpha_sq;
}

double rc1_closed_form(const PhysicalParams& p, int j1) {
    if (j1 < 1) throw PreconditionError("j1 must be >= 1");
    const double x = j1 * j1 * p.alpha1 * p.alpha1;
    return neutral_value(x, steady_offset(p));
}

double hopf_admissibility_bound(const PhysicalParams& p, const WaveIndex& idx) {
    require_lambda1(idx);
    const double g6 = idx.gamma_sq * idx.gamma_sq * idx.gamma_sq;
    return (1.0 - p.sigma) * kPi2 / (p.sigma * p.sigma * (1.0 + p.sigma) * g6);
}

double hopf_frequency(const PhysicalParams& p, const WaveIndex& idx, double r) {
    const CubicCoeffs c = cubic_coeffs(p.with_rayleigh(r), idx);
    const double a2 = c.c0 / ((2.0 * p.sigma + 1.0) * idx.gamma_sq);
    return a2 > 0.0 ? std::sqrt(a2) : 0.0;
}

Truncation covering_truncation(const PhysicalParams& p, double xb) {
    Truncation t;
    t.jmax = static_cast<int>(std::floor(std::sqrt(xb) / p.alpha1)) + 2;
    t.kmax = static_cast<int>(std::floor(std::sqrt(xb) / p.alpha2)) + 2;
    t.lmax = 1;
    return t;
}

namespace {

CriticalResult scan_layer(const PhysicalParams& p, int jmax, int kmax, int j_step, double xb,
                          const std::function<double(const WaveIndex&)>& value) {
    p.validate();
    if (jmax < 0 || kmax < 0 || (jmax == 0 && kmax == 0) || j_step < 1)
        throw PreconditionError("truncation needs jmax, kmax >= 0, not both 0, j_step >= 1");
    std::vector<WaveIndex> idx;
    std::vector<double> vals;
    for (int j = 0; j <= jmax; j += j_step)
        for (int k = -kmax; k <= kmax; ++k) {
            if (j == 0 && k == 0) continue;
            idx.push_back(make_index(j, k, 1, p));
            vals.push_back(value(idx.back()));
        }
    const double vmin = *std::min_element(vals.begin(), vals.end());
    CriticalResult r;
    r.r_crit = vmin;
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (vals[i] - vmin <= kTieTolerance * std::abs(vmin)) r.minimizers.push_back(idx[i]);
    r.argmin = r.minimizers.front();
    r.unique = r.minimizers.size() == 1 && r.argmin.k == 0;

    const int j_edge = (jmax / j_step) * j_step;
    for (const WaveIndex& m : r.minimizers) {
        const bool on_j = j_edge >= 1 && m.j == j_edge;
        const bool on_k = kmax >= 1 && std::abs(m.k) == kmax;
        if ((on_j || on_k) && m.alpha_sq < xb)
            throw TruncationTooSmall("minimizer (" + std::to_string(m.j) + "," +
                                     std::to_string(m.k) + ",1) lies on the truncation boundary");
    }
    return r;
}

}  // namespace

CriticalResult rc1(const PhysicalParams& p, int jmax, int kmax, int j_step) {
    CriticalResult r = scan_layer(p, jmax, kmax, j_step, x_star(steady_offset(p)),
                                  [&](const WaveIndex& i) { return steady_threshold(p, i); });
    r.onset = Onset::Steady;
    return r;
}

CriticalResult rc2(const PhysicalParams& p, int jmax, int kmax, int j_step) {
    if (!(p.sigma < 1.0)) throw SigmaOutOfRange("oscillatory onset needs sigma < 1");
    CriticalResult r = scan_layer(p, jmax, kmax, j_step, x_star(hopf_offset(p)),
                                  [&](const WaveIndex& i) { return hopf_threshold(p, i); });
    r.onset = Onset::Hopf;
    r.hopf_admissible = p.ro * p.ro < hopf_admissibility_bound(p, r.argmin);
    r.hopf_freq = hopf_frequency(p, r.argmin, r.r_crit);
    return r;
}

std::string_view to_string(Uniqueness u) {
    switch (u) {
        case Uniqueness::Holds: return "holds";
        case Uniqueness::HoldsGenerically: return "holds_generically";
        case Uniqueness::Fails: return "fails";
    }
    return "?";
}

namespace {

// Shared logic of the two checks; `steady` selects the neutral curve.
UniquenessCheck check_uniqueness(const PhysicalParams& p, bool steady) {
    p.validate();
    const double b = steady ? steady_offset(p) : hopf_offset(p);
    UniquenessCheck c;
    c.xb = x_star(b);
    const double a1s = p.alpha1 * p.alpha1;
    const double a2s = p.alpha2 * p.alpha2;

    if (c.xb <= a1s && a1s < a2s) {
        c.status = Uniqueness::Holds;
        c.j_crit = 1;
        c.witnesses.push_back(make_index(1, 0, 1, p));
        return c;
    }
    if (a1s <= c.xb / 5.0 && 2.0 * c.xb < a2s) {
        int js = static_cast<int>(std::floor(std::sqrt(c.xb / a1s)));
        while (static_cast<double>(js + 1) * (js + 1) * a1s <= c.xb) ++js;
        while (js > 1 && static_cast<double>(js) * js * a1s > c.xb) --js;
        const double f0 = neutral_value(js * js * a1s, b);
        const double f1 = neutral_value((js + 1) * (js + 1) * a1s, b);
        c.witnesses = {make_index(js, 0, 1, p), make_index(js + 1, 0, 1, p)};
        if (std::abs(f0 - f1) > kTieTolerance * std::min(f0, f1)) {
            c.status = Uniqueness::HoldsGenerically;
            c.j_crit = f0 < f1 ? js : js + 1;
        }
        return c;
    }
    // Neither sufficient condition applies: report the actual minimizers.
    const Truncation t = covering_truncation(p, c.xb);
    const CriticalResult r = steady ? rc1(p, t.jmax, t.kmax) : rc2(p, t.jmax, t.kmax);
    c.witnesses = r.minimizers;
    return c;
}

}  // namespace

UniquenessCheck check_c6(const PhysicalParams& p) {
    if (!(p.sigma > 1.0)) throw PreconditionError("steady uniqueness check needs sigma > 1");
    return check_uniqueness(p, true);
}

UniquenessCheck check_c7(const PhysicalParams& p) {
    if (!(p.sigma < 1.0)) throw PreconditionError("oscillatory uniqueness check needs sigma < 1");
    return check_uniqueness(p, false);
}

PesScan pes_scan(const PhysicalParams& p, double r_lo, double r_hi, int n, SpaceFlag space,
                 const Truncation& t) {
    if (!(r_lo < r_hi) || r_lo < 0.0) throw PreconditionError("pes_scan needs 0 <= r_lo < r_hi");
    if (n < 3) throw PreconditionError("pes_scan needs n >= 3");
    p.validate();
    PesScan s;
    s.rows.resize(static_cast<std::size_t>(n));
    parallel_for(s.rows.size(), [&](std::size_t i) {
        const double r = r_lo + (r_hi - r_lo) * static_cast<double>(i) / (n - 1);
        const GrowthRate g = growth_rate(p.with_rayleigh(r), t, space);
        s.rows[i] = {r, g.re, g.im, g.index};
    });
    for (std::size_t i = 0; i + 1 < s.rows.size(); ++i) {
        if (s.rows[i].re_max < 0.0 && s.rows[i + 1].re_max >= 0.0) {
            s.bracketed = true;
            s.r_below = s.rows[i].r;
            s.r_above = s.rows[i + 1].r;
            break;
        }
    }
    return s;
}

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

Asymptotics ro_asymptotics(double sigma, double alpha1, double alpha2,
                           std::span<const double> ro_list) {
    if (!(sigma > 1.0)) throw PreconditionError("ro_asymptotics needs sigma > 1");
    if (ro_list.size() < 4) throw PreconditionError("ro_asymptotics needs at least 4 Ro values");
    for (std::size_t i = 0; i + 1 < ro_list.size(); ++i)
        if (!(ro_list[i + 1] < ro_list[i]))
            throw PreconditionError("Ro values must be strictly decreasing");
    if (!(ro_list.back() > 0.0) || std::log10(ro_list.front() / ro_list.back()) < 2.0)
        throw PreconditionError("Ro values must be positive and span at least two decades");

    Asymptotics a;
    a.rows.resize(ro_list.size());
    parallel_for(ro_list.size(), [&](std::size_t i) {
        const PhysicalParams p{sigma, ro_list[i], 0.0, alpha1, alpha2};
        AsymptoticsRow& row = a.rows[i];
        row.ro = p.ro;
        row.b1 = steady_offset(p);
        row.x_b1 = x_star(row.b1);
        row.rc1_continuous = neutral_value(row.x_b1, row.b1);
        const Truncation t = covering_truncation(p, row.x_b1);
        const CriticalResult r = rc1(p, t.jmax, t.kmax);
        row.rc1_lattice = r.r_crit;
        row.lattice_argmin = r.argmin;
    });
    std::vector<double> lx, ly, lz;
    for (const AsymptoticsRow& r : a.rows) {
        lx.push_back(std::log(r.ro));
        ly.push_back(std::log(r.rc1_continuous));
        lz.push_back(std::log(r.rc1_lattice));
    }
    a.slope = fit_slope(lx, ly);
    a.lattice_slope = fit_slope(lx, lz);
    return a;
}

}  // namespace rotabouss
