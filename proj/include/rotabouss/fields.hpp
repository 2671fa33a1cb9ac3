#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace rotabouss {

using cd = std::complex<double>;

// Collocation grid on [0, 2pi/alpha1) x [0, 1]: nx periodic points in x,
// nz intervals (nz + 1 points, endpoints included) in z. Arrays are row-major
// with z as the slow index.
struct GridShape {
    int nx = 0;
    int nz = 0;
    double alpha1 = 1.0;

    int rows() const { return nz + 1; }
    std::size_t size() const { return static_cast<std::size_t>(rows()) * nx; }
    double lx() const;
    double x(int i) const { return lx() * i / nx; }
    double z(int m) const { return static_cast<double>(m) / nz; }
    // Spectral layout matching GridTransform: rows() x (nx/2 + 1).
    int spec_cols() const { return nx / 2 + 1; }
    std::size_t spec_size() const { return static_cast<std::size_t>(rows()) * spec_cols(); }
    bool operator==(const GridShape&) const = default;
};

enum class Parity { Cos, Sin };

// u, v are cosine-type in z; w, T sine-type (free-slip, fixed temperature).
struct FieldOnGrid {
    GridShape shape;
    std::vector<double> u, v, w, T;

    FieldOnGrid() = default;
    explicit FieldOnGrid(const GridShape& s)
        : shape(s), u(s.size()), v(s.size()), w(s.size()), T(s.size()) {}

    std::vector<double>& comp(int c) { return c == 0 ? u : c == 1 ? v : c == 2 ? w : T; }
    const std::vector<double>& comp(int c) const {
        return c == 0 ? u : c == 1 ? v : c == 2 ? w : T;
    }
    static Parity parity(int c) { return c < 2 ? Parity::Cos : Parity::Sin; }

    FieldOnGrid& operator+=(const FieldOnGrid& o);
    FieldOnGrid& operator*=(double s);
};

// Real and imaginary parts of a complex eigenfield.
struct EigenField {
    FieldOnGrid re;
    FieldOnGrid im;
};

// Spectral coefficients of the four components: for each z-mode l (row) and
// x-mode j (column), f(x,z) = sum_l sum_j' c_{l,j} e^{i j alpha1 x} {cos|sin}(l pi z)
// with the usual Hermitian extension in j.
struct SpectralFields {
    GridShape shape;
    std::vector<cd> u, v, w, T;

    SpectralFields() = default;
    explicit SpectralFields(const GridShape& s)
        : shape(s), u(s.spec_size()), v(s.spec_size()), w(s.spec_size()), T(s.spec_size()) {}
    std::vector<cd>& comp(int c) { return c == 0 ? u : c == 1 ? v : c == 2 ? w : T; }
    const std::vector<cd>& comp(int c) const {
        return c == 0 ? u : c == 1 ? v : c == 2 ? w : T;
    }
};

// Fourier in x and DCT-I / DST-I in z on the endpoint grid, backed by FFTW.
// One instance owns its work buffers: do not share across threads.
class GridTransform {
public:
    GridTransform(int nx, int nz);
    ~GridTransform();
    GridTransform(GridTransform&&) noexcept;
    GridTransform& operator=(GridTransform&&) noexcept;
    GridTransform(const GridTransform&) = delete;
    GridTransform& operator=(const GridTransform&) = delete;

    int nx() const;
    int nz() const;
    int cols() const { return nx() / 2 + 1; }
    int rows() const { return nz() + 1; }

    // grid: rows x nx, spec: rows x cols. For Sin parity the endpoint rows of
    // the grid are ignored (forward) or written as zero (inverse), and spectral
    // rows 0 and nz are zero.
    void forward(Parity p, std::span<const double> grid, std::span<cd> spec);
    void inverse(Parity p, std::span<const cd> spec, std::span<double> grid);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

SpectralFields to_spectral(const FieldOnGrid& f, GridTransform& tr);
FieldOnGrid to_grid(const SpectralFields& s, GridTransform& tr);

// Spectral derivatives on rows x cols arrays.
void apply_dx(std::span<cd> c, int rows, int cols, double alpha1);
// d/dz maps a cosine series to a sine series and back.
void apply_dz(std::span<const cd> in, std::span<cd> out, Parity in_parity, int rows, int cols);

// Removes the gradient part of one (u, w) coefficient pair with x-mode j >= 1
// and z-mode l >= 1.
void project_mode(cd& u, cd& w, int j, int l, double alpha1);

// Removes the gradient part of the (u, w) pair mode by mode. The (0,0) mode
// is left alone; u is zeroed on rows with no matching w row (l = 0, l = nz)
// for j >= 1; w is zeroed for j = 0.
void leray_project(std::span<cd> u, std::span<cd> w, int rows, int cols, double alpha1);

// Trapezoid quadrature over one periodicity cell; exact for band-limited
// products below the grid Nyquist.
double integrate(std::span<const double> f, const GridShape& s);
double inner(const FieldOnGrid& a, const FieldOnGrid& b);
double norm(const FieldOnGrid& a);
// Bilinear (no conjugation) pairing of complex fields.
cd inner(const EigenField& a, const EigenField& b);

// -P[(a_u d/dx + a_w d/dz) b], evaluated pseudo-spectrally on the shared grid.
FieldOnGrid bilinear_g(const FieldOnGrid& a, const FieldOnGrid& b);

// max |du/dx + dw/dz| on the grid, computed spectrally.
double divergence_max(const FieldOnGrid& f);

// Max violation of w = T = 0 and du/dz = dv/dz = 0 on z = 0 and z = 1.
double boundary_violation(const FieldOnGrid& f);

}  // namespace rotabouss
