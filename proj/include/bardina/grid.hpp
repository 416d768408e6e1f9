#pragma once

// Truncated strip x1 in [0, Lx) (periodic) by x2 in [-M, M], its tensor
// grid, physical/modal fields and quadrature inner products.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace bardina {

/// Flat strip: walls at x2 = -M and x2 = +M, periodic truncation Lx in x1.
struct StripDomain {
    double lx = 0.0;
    double m = 0.0;

    double b_lo() const noexcept { return -m; }
    double b_hi() const noexcept { return m; }
};

namespace detail {
struct GridData;
}

/// Uniform periodic x1 nodes (i * dx) times uniform x2 nodes including both
/// walls (-M + j * dy). Cheap to copy; copies share transform plans.
class Grid {
public:
    /// Throws ConfigError for odd nx, nx < 8, ny < 9 or a degenerate domain.
    Grid(StripDomain domain, int nx, int ny);

    const StripDomain& domain() const noexcept;
    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    /// Number of stored Fourier columns, nx / 2 + 1.
    int modes() const noexcept { return nx_ / 2 + 1; }
    double dx() const noexcept;
    double dy() const noexcept;
    double x1(int i) const noexcept;
    double x2(int j) const noexcept;
    /// kappa_k = 2 pi k / Lx.
    double wavenumber(int k) const noexcept;
    /// Trapezoidal weights in x2; they sum to 2M.
    std::span<const double> quad_weights() const noexcept;
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx()) * ny(); }

    bool operator==(const Grid& other) const noexcept;

    // Raw transforms on nx-by-ny (x2 contiguous) arrays; used by ModalField.
    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
    void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

private:
    std::shared_ptr<const detail::GridData> d_;
    // Duplicated from d_ so the hot accessors inline.
    int nx_ = 0;
    int ny_ = 0;
};

Grid make_grid(StripDomain domain, int nx, int ny);

/// Real samples on the grid, values(i, j) with i the x1 index (outer).
class Field {
public:
    explicit Field(Grid grid, bool clamped = false);
    Field(Grid grid, std::vector<double> values, bool clamped = false);

    static Field from_function(Grid grid, const std::function<double(double, double)>& f,
                               bool clamped = false);

    const Grid& grid() const noexcept { return grid_; }
    bool clamped() const noexcept { return clamped_; }
    void set_clamped(bool c) noexcept { clamped_ = c; }

    double& operator()(int i, int j) noexcept { return values_[index(i, j)]; }
    double operator()(int i, int j) const noexcept { return values_[index(i, j)]; }
    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    bool all_finite() const noexcept;
    double max_abs() const noexcept;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s) noexcept;
    /// this += s * o
    Field& axpy(double s, const Field& o);

private:
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_.ny()) + j;
    }

    Grid grid_;
    std::vector<double> values_;
    bool clamped_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Fourier coefficients in x1 (k = 0 .. nx/2) for every x2 node, unnormalized
/// forward convention: a constant c maps to c * nx at k = 0.
class ModalField {
public:
    explicit ModalField(Grid grid, bool clamped = false);

    const Grid& grid() const noexcept { return grid_; }
    bool clamped() const noexcept { return clamped_; }
    void set_clamped(bool c) noexcept { clamped_ = c; }

    std::complex<double>& operator()(int k, int j) noexcept { return coeffs_[index(k, j)]; }
    std::complex<double> operator()(int k, int j) const noexcept { return coeffs_[index(k, j)]; }
    std::span<std::complex<double>> coeffs() noexcept { return coeffs_; }
    std::span<const std::complex<double>> coeffs() const noexcept { return coeffs_; }
    /// Contiguous x2 column of mode k.
    std::span<std::complex<double>> column(int k) noexcept;
    std::span<const std::complex<double>> column(int k) const noexcept;

private:
    std::size_t index(int k, int j) const noexcept {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(grid_.ny()) + j;
    }

    Grid grid_;
    std::vector<std::complex<double>> coeffs_;
    bool clamped_;
};

ModalField to_modal(const Field& f);
/// Imaginary parts of the k = 0 (and Nyquist) columns are ignored.
Field to_physical(const ModalField& m);

/// Rectangle rule in x1, trapezoid in x2.
double inner_product(const Field& f, const Field& h);
/// Weighted pairing of f * h * w; w must be positive.
double inner_product(const Field& f, const Field& h, const Field& w);
double l2_norm(const Field& f);

void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace bardina
