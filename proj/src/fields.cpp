#include "rotabouss/fields.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rotabouss/errors.hpp"
#include "rotabouss/params.hpp"

namespace rotabouss {

double GridShape::lx() const { return 2.0 * kPi / alpha1; }

FieldOnGrid& FieldOnGrid::operator+=(const FieldOnGrid& o) {
    if (!(shape == o.shape)) throw PreconditionError("field shapes differ");
    for (int c = 0; c < 4; ++c) {
        auto& a = comp(c);
        const auto& b = o.comp(c);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
    return *this;
}

FieldOnGrid& FieldOnGrid::operator*=(double s) {
    for (int c = 0; c < 4; ++c)
        for (double& x : comp(c)) x *= s;
    return *this;
}

namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct GridTransform::Impl {
    int nx = 0, nz = 0, cols = 0, rows = 0;
    double* grid = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan r2c = nullptr, c2r = nullptr, dct = nullptr, dst = nullptr;

    Impl(int nx_, int nz_) : nx(nx_), nz(nz_), cols(nx_ / 2 + 1), rows(nz_ + 1) {
        std::lock_guard lock(planner_mutex());
        grid = fftw_alloc_real(static_cast<std::size_t>(rows) * nx);
        spec = fftw_alloc_complex(static_cast<std::size_t>(rows) * cols);
        const int n[1] = {nx};
        r2c = fftw_plan_many_dft_r2c(1, n, rows, grid, nullptr, 1, nx, spec, nullptr, 1, cols,
                                     FFTW_ESTIMATE);
        c2r = fftw_plan_many_dft_c2r(1, n, rows, spec, nullptr, 1, cols, grid, nullptr, 1, nx,
                                     FFTW_ESTIMATE);
        // Real and imaginary parts of every x-mode are transformed together:
        // the spectral array is read as rows x (2 cols) doubles.
        double* flat = reinterpret_cast<double*>(spec);
        const int nc[1] = {rows};
        const fftw_r2r_kind redft[1] = {FFTW_REDFT00};
        dct = fftw_plan_many_r2r(1, nc, 2 * cols, flat, nullptr, 2 * cols, 1, flat, nullptr,
                                 2 * cols, 1, redft, FFTW_ESTIMATE);
        const int ns[1] = {nz - 1};
        const fftw_r2r_kind rodft[1] = {FFTW_RODFT00};
        dst = fftw_plan_many_r2r(1, ns, 2 * cols, flat + 2 * cols, nullptr, 2 * cols, 1,
                                 flat + 2 * cols, nullptr, 2 * cols, 1, rodft, FFTW_ESTIMATE);
        if (!grid || !spec || !r2c || !c2r || !dct || !dst) {
            release();
            throw PreconditionError("FFTW plan creation failed");
        }
    }
    ~Impl() {
        std::lock_guard lock(planner_mutex());
        release();
    }
    void release() {
        for (fftw_plan* p : {&r2c, &c2r, &dct, &dst})
            if (*p) fftw_destroy_plan(*p), *p = nullptr;
        if (grid) fftw_free(grid), grid = nullptr;
        if (spec) fftw_free(spec), spec = nullptr;
    }
    cd* spec_cd() { return reinterpret_cast<cd*>(spec); }
    void zero_row(int r) { std::fill_n(spec_cd() + static_cast<std::size_t>(r) * cols, cols, cd{}); }
};

GridTransform::GridTransform(int nx, int nz) {
    if (nx < 2 || nx % 2 != 0) throw PreconditionError("nx must be even and >= 2");
    if (nz < 2) throw PreconditionError("nz must be >= 2");
    impl_ = std::make_unique<Impl>(nx, nz);
}
GridTransform::~GridTransform() = default;
GridTransform::GridTransform(GridTransform&&) noexcept = default;
GridTransform& GridTransform::operator=(GridTransform&&) noexcept = default;

int GridTransform::nx() const { return impl_->nx; }
int GridTransform::nz() const { return impl_->nz; }

void GridTransform::forward(Parity p, std::span<const double> grid, std::span<cd> spec) {
    Impl& m = *impl_;
    const std::size_t ng = static_cast<std::size_t>(m.rows) * m.nx;
    const std::size_t ns = static_cast<std::size_t>(m.rows) * m.cols;
    if (grid.size() != ng || spec.size() != ns) throw PreconditionError("transform size mismatch");
    std::copy(grid.begin(), grid.end(), m.grid);
    fftw_execute(m.r2c);
    cd* s = m.spec_cd();
    if (p == Parity::Cos) {
        fftw_execute(m.dct);
        const double interior = 1.0 / (static_cast<double>(m.nx) * m.nz);
        const double edge = 0.5 * interior;
        for (int r = 0; r < m.rows; ++r) {
            const double f = (r == 0 || r == m.nz) ? edge : interior;
            cd* row = s + static_cast<std::size_t>(r) * m.cols;
            for (int j = 0; j < m.cols; ++j) row[j] *= f;
        }
    } else {
        fftw_execute(m.dst);
        const double f = 1.0 / (static_cast<double>(m.nx) * m.nz);
        for (std::size_t i = static_cast<std::size_t>(m.cols); i < ns - m.cols; ++i) s[i] *= f;
        m.zero_row(0);
        m.zero_row(m.nz);
    }
    std::copy(s, s + ns, spec.begin());
}

void GridTransform::inverse(Parity p, std::span<const cd> spec, std::span<double> grid) {
    Impl& m = *impl_;
    const std::size_t ng = static_cast<std::size_t>(m.rows) * m.nx;
    const std::size_t ns = static_cast<std::size_t>(m.rows) * m.cols;
    if (grid.size() != ng || spec.size() != ns) throw PreconditionError("transform size mismatch");
    cd* s = m.spec_cd();
    std::copy(spec.begin(), spec.end(), s);
    for (int r = 1; r < m.nz; ++r) {
        cd* row = s + static_cast<std::size_t>(r) * m.cols;
        for (int j = 0; j < m.cols; ++j) row[j] *= 0.5;
    }
    if (p == Parity::Cos) {
        fftw_execute(m.dct);
    } else {
        fftw_execute(m.dst);
        m.zero_row(0);
        m.zero_row(m.nz);
    }
    fftw_execute(m.c2r);
    std::copy(m.grid, m.grid + ng, grid.begin());
}

SpectralFields to_spectral(const FieldOnGrid& f, GridTransform& tr) {
    if (tr.nx() != f.shape.nx || tr.nz() != f.shape.nz) throw PreconditionError("grid mismatch");
    SpectralFields s(f.shape);
    for (int c = 0; c < 4; ++c) tr.forward(FieldOnGrid::parity(c), f.comp(c), s.comp(c));
    return s;
}

FieldOnGrid to_grid(const SpectralFields& s, GridTransform& tr) {
    if (tr.nx() != s.shape.nx || tr.nz() != s.shape.nz) throw PreconditionError("grid mismatch");
    FieldOnGrid f(s.shape);
    for (int c = 0; c < 4; ++c) tr.inverse(FieldOnGrid::parity(c), s.comp(c), f.comp(c));
    return f;
}

void apply_dx(std::span<cd> c, int rows, int cols, double alpha1) {
    for (int r = 0; r < rows; ++r)
        for (int j = 0; j < cols; ++j) c[static_cast<std::size_t>(r) * cols + j] *= cd(0.0, j * alpha1);
}

void apply_dz(std::span<const cd> in, std::span<cd> out, Parity in_parity, int rows, int cols) {
    const int nz = rows - 1;
    for (int r = 0; r < rows; ++r) {
        const double kz = r * kPi;
        for (int j = 0; j < cols; ++j) {
            const std::size_t i = static_cast<std::size_t>(r) * cols + j;
            if (r == 0 || r == nz) {
                out[i] = 0.0;
            } else {
                out[i] = in_parity == Parity::Cos ? -kz * in[i] : kz * in[i];
            }
        }
    }
}

void project_mode(cd& u, cd& w, int j, int l, double alpha1) {
    // Gradient direction in (u, w) coefficients is (i kx, -kz); divergence is
    // i kx u + kz w.
    const double kx = j * alpha1;
    const double kz = l * kPi;
    const cd div = cd(0.0, kx) * u + kz * w;
    const double k2 = kx * kx + kz * kz;
    u += cd(0.0, kx) * div / k2;
    w -= kz * div / k2;
}

void leray_project(std::span<cd> u, std::span<cd> w, int rows, int cols, double alpha1) {
    const int nz = rows - 1;
    for (int r = 0; r < rows; ++r) {
        for (int j = 0; j < cols; ++j) {
            const std::size_t i = static_cast<std::size_t>(r) * cols + j;
            if (j == 0) {
                w[i] = 0.0;
                continue;
            }
            if (r == 0 || r == nz) {
                u[i] = 0.0;
                w[i] = 0.0;
                continue;
            }
            project_mode(u[i], w[i], j, r, alpha1);
        }
    }
}

double integrate(std::span<const double> f, const GridShape& s) {
    double total = 0.0;
    for (int m = 0; m <= s.nz; ++m) {
        double row = 0.0;
        for (int i = 0; i < s.nx; ++i) row += f[static_cast<std::size_t>(m) * s.nx + i];
        total += (m == 0 || m == s.nz) ? 0.5 * row : row;
    }
    return total * (s.lx() / s.nx) / s.nz;
}

double inner(const FieldOnGrid& a, const FieldOnGrid& b) {
    if (!(a.shape == b.shape)) throw PreconditionError("field shapes differ");
    std::vector<double> prod(a.shape.size());
    double total = 0.0;
    for (int c = 0; c < 4; ++c) {
        const auto& x = a.comp(c);
        const auto& y = b.comp(c);
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = x[i] * y[i];
        total += integrate(prod, a.shape);
    }
    return total;
}

double norm(const FieldOnGrid& a) { return std::sqrt(inner(a, a)); }

cd inner(const EigenField& a, const EigenField& b) {
    return {inner(a.re, b.re) - inner(a.im, b.im), inner(a.re, b.im) + inner(a.im, b.re)};
}

FieldOnGrid bilinear_g(const FieldOnGrid& a, const FieldOnGrid& b) {
    if (!(a.shape == b.shape)) throw PreconditionError("field shapes differ");
    const GridShape& s = a.shape;
    GridTransform tr(s.nx, s.nz);
    const int rows = s.rows(), cols = s.spec_cols();
    SpectralFields sb = to_spectral(b, tr);
    SpectralFields out(s);
    std::vector<cd> dx(s.spec_size()), dz(s.spec_size());
    std::vector<double> gx(s.size()), gz(s.size()), prod(s.size());
    for (int c = 0; c < 4; ++c) {
        const Parity par = FieldOnGrid::parity(c);
        const Parity flipped = par == Parity::Cos ? Parity::Sin : Parity::Cos;
        dx = sb.comp(c);
        apply_dx(dx, rows, cols, s.alpha1);
        apply_dz(sb.comp(c), dz, par, rows, cols);
        tr.inverse(par, dx, gx);
        tr.inverse(flipped, dz, gz);
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = -(a.u[i] * gx[i] + a.w[i] * gz[i]);
        tr.forward(par, prod, out.comp(c));
    }
    leray_project(out.u, out.w, rows, cols, s.alpha1);
    return to_grid(out, tr);
}

double divergence_max(const FieldOnGrid& f) {
    const GridShape& s = f.shape;
    GridTransform tr(s.nx, s.nz);
    const int rows = s.rows(), cols = s.spec_cols();
    std::vector<cd> su(s.spec_size()), sw(s.spec_size()), dw(s.spec_size());
    tr.forward(Parity::Cos, f.u, su);
    tr.forward(Parity::Sin, f.w, sw);
    apply_dx(su, rows, cols, s.alpha1);
    apply_dz(sw, dw, Parity::Sin, rows, cols);
    for (std::size_t i = 0; i < su.size(); ++i) su[i] += dw[i];
    std::vector<double> g(s.size());
    tr.inverse(Parity::Cos, su, g);
    double m = 0.0;
    for (double x : g) m = std::max(m, std::abs(x));
    return m;
}

double boundary_violation(const FieldOnGrid& f) {
    const GridShape& s = f.shape;
    const double h = 1.0 / s.nz;
    double m = 0.0;
    auto at = [&](const std::vector<double>& a, int row, int i) {
        return a[static_cast<std::size_t>(row) * s.nx + i];
    };
    for (int i = 0; i < s.nx; ++i) {
        for (const auto* a : {&f.w, &f.T}) {
            m = std::max(m, std::abs(at(*a, 0, i)));
            m = std::max(m, std::abs(at(*a, s.nz, i)));
        }
        // One-sided second-order differences for the Neumann conditions.
        for (const auto* a : {&f.u, &f.v}) {
            const double d0 = (-3 * at(*a, 0, i) + 4 * at(*a, 1, i) - at(*a, 2, i)) / (2 * h);
            const double d1 =
                (3 * at(*a, s.nz, i) - 4 * at(*a, s.nz - 1, i) + at(*a, s.nz - 2, i)) / (2 * h);
            m = std::max({m, std::abs(d0), std::abs(d1)});
        }
    }
    return m;
}

}  // namespace rotabouss
