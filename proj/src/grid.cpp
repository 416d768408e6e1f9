#include "bardina/grid.hpp"

#include "bardina/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace bardina {

namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

namespace detail {

struct GridData {
    StripDomain domain;
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    std::vector<double> quad;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;

    GridData() = default;
    GridData(const GridData&) = delete;
    GridData& operator=(const GridData&) = delete;

    ~GridData() {
        std::lock_guard lock(planner_mutex());
        if (r2c != nullptr) fftw_destroy_plan(r2c);
        if (c2r != nullptr) fftw_destroy_plan(c2r);
    }
};

}  // namespace detail

Grid::Grid(StripDomain domain, int nx, int ny) {
    if (!(std::isfinite(domain.lx) && domain.lx > 0.0))
        throw ConfigError("strip length lx must be positive and finite");
    if (!(std::isfinite(domain.m) && domain.m > 0.0))
        throw ConfigError("strip half-width m must be positive and finite");
    if (nx % 2 != 0) throw ConfigError("nx must be even");
    if (nx < 8) throw ConfigError("nx must be at least 8");
    if (ny < 9) throw ConfigError("ny must be at least 9 (biharmonic stencil under-resolved)");

    auto d = std::make_shared<detail::GridData>();
    d->domain = domain;
    d->nx = nx;
    d->ny = ny;
    d->dx = domain.lx / nx;
    d->dy = 2.0 * domain.m / (ny - 1);
    d->quad.assign(static_cast<std::size_t>(ny), d->dy);
    d->quad.front() = 0.5 * d->dy;
    d->quad.back() = 0.5 * d->dy;

    const int modes = nx / 2 + 1;
    std::vector<double> rbuf(static_cast<std::size_t>(nx) * ny);
    std::vector<fftw_complex> cbuf(static_cast<std::size_t>(modes) * ny);
    int n[] = {nx};
    {
        std::lock_guard lock(planner_mutex());
        // ESTIMATE keeps plan selection, and hence output bits, reproducible.
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        d->r2c = fftw_plan_many_dft_r2c(1, n, ny, rbuf.data(), nullptr, ny, 1, cbuf.data(),
                                        nullptr, ny, 1, flags);
        d->c2r = fftw_plan_many_dft_c2r(1, n, ny, cbuf.data(), nullptr, ny, 1, rbuf.data(),
                                        nullptr, ny, 1, flags | FFTW_DESTROY_INPUT);
    }
    if (d->r2c == nullptr || d->c2r == nullptr) throw Error("FFTW planning failed");
    d_ = std::move(d);
    nx_ = nx;
    ny_ = ny;
}

Grid make_grid(StripDomain domain, int nx, int ny) { return Grid(domain, nx, ny); }

const StripDomain& Grid::domain() const noexcept { return d_->domain; }
double Grid::dx() const noexcept { return d_->dx; }
double Grid::dy() const noexcept { return d_->dy; }
double Grid::x1(int i) const noexcept { return i * d_->dx; }
double Grid::x2(int j) const noexcept {
    return j == d_->ny - 1 ? d_->domain.m : -d_->domain.m + j * d_->dy;
}
double Grid::wavenumber(int k) const noexcept {
    return 2.0 * std::numbers::pi * k / d_->domain.lx;
}
std::span<const double> Grid::quad_weights() const noexcept { return d_->quad; }

bool Grid::operator==(const Grid& other) const noexcept {
    if (d_ == other.d_) return true;
    return d_->nx == other.d_->nx && d_->ny == other.d_->ny &&
           d_->domain.lx == other.d_->domain.lx && d_->domain.m == other.d_->domain.m;
}

void Grid::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    if (in.size() != size() || out.size() != static_cast<std::size_t>(modes()) * ny())
        throw GridMismatch("forward transform: buffer size mismatch");
    // r2c leaves its input intact.
    fftw_execute_dft_r2c(d_->r2c, const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

void Grid::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
    if (out.size() != size() || in.size() != static_cast<std::size_t>(modes()) * ny())
        throw GridMismatch("inverse transform: buffer size mismatch");
    // c2r overwrites its input; reuse one buffer per thread.
    thread_local std::vector<std::complex<double>> scratch;
    scratch.assign(in.begin(), in.end());
    fftw_execute_dft_c2r(d_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    const double scale = 1.0 / nx();
    for (double& v : out) v *= scale;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw GridMismatch(std::string(what) + ": operands live on different grids");
}

// --- Field -----------------------------------------------------------------

Field::Field(Grid grid, bool clamped)
    : grid_(std::move(grid)), values_(grid_.size(), 0.0), clamped_(clamped) {}

Field::Field(Grid grid, std::vector<double> values, bool clamped)
    : grid_(std::move(grid)), values_(std::move(values)), clamped_(clamped) {
    if (values_.size() != grid_.size()) throw GridMismatch("field values do not match grid shape");
}

Field Field::from_function(Grid grid, const std::function<double(double, double)>& f,
                           bool clamped) {
    Field out(std::move(grid), clamped);
    const Grid& g = out.grid();
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) out(i, j) = f(g.x1(i), g.x2(j));
    if (clamped) {
        for (int i = 0; i < g.nx(); ++i) {
            out(i, 0) = 0.0;
            out(i, g.ny() - 1) = 0.0;
        }
    }
    return out;
}

bool Field::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field addition");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += o.values_[n];
    clamped_ = clamped_ && o.clamped_;
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field subtraction");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= o.values_[n];
    clamped_ = clamped_ && o.clamped_;
    return *this;
}

Field& Field::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

Field& Field::axpy(double s, const Field& o) {
    require_same_grid(grid_, o.grid_, "field axpy");
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += s * o.values_[n];
    clamped_ = clamped_ && o.clamped_;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

// --- ModalField ------------------------------------------------------------

ModalField::ModalField(Grid grid, bool clamped)
    : grid_(std::move(grid)),
      coeffs_(static_cast<std::size_t>(grid_.modes()) * grid_.ny()),
      clamped_(clamped) {}

std::span<std::complex<double>> ModalField::column(int k) noexcept {
    return {coeffs_.data() + index(k, 0), static_cast<std::size_t>(grid_.ny())};
}

std::span<const std::complex<double>> ModalField::column(int k) const noexcept {
    return {coeffs_.data() + index(k, 0), static_cast<std::size_t>(grid_.ny())};
}

ModalField to_modal(const Field& f) {
    ModalField m(f.grid(), f.clamped());
    f.grid().forward(f.values(), m.coeffs());
    return m;
}

Field to_physical(const ModalField& m) {
    Field f(m.grid(), m.clamped());
    m.grid().inverse(m.coeffs(), f.values());
    return f;
}

// --- quadrature ------------------------------------------------------------

double inner_product(const Field& f, const Field& h) {
    require_same_grid(f.grid(), h.grid(), "inner_product");
    const Grid& g = f.grid();
    const auto w = g.quad_weights();
    double total = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        double row = 0.0;
        for (int j = 0; j < g.ny(); ++j) row += w[j] * f(i, j) * h(i, j);
        total += row;
    }
    return total * g.dx();
}

double inner_product(const Field& f, const Field& h, const Field& w) {
    require_same_grid(f.grid(), h.grid(), "inner_product");
    require_same_grid(f.grid(), w.grid(), "inner_product weight");
    const Grid& g = f.grid();
    const auto q = g.quad_weights();
    double total = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        double row = 0.0;
        for (int j = 0; j < g.ny(); ++j) row += q[j] * f(i, j) * h(i, j) * w(i, j);
        total += row;
    }
    return total * g.dx();
}

double l2_norm(const Field& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

}  // namespace bardina
