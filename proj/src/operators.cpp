#include "bardina/operators.hpp"

#include "bardina/error.hpp"

#include <cmath>
#include <complex>

namespace bardina {

OperatorSet::OperatorSet(Grid grid, bool dealias) : grid_(std::move(grid)), dealias_(dealias) {}

int OperatorSet::retained_modes() const noexcept {
    return dealias_ ? (grid_.nx() - 1) / 3 : grid_.nx() / 2;
}

Field OperatorSet::modal_derivative(const Field& f, int order) const {
    require_same_grid(grid_, f.grid(), "d1");
    ModalField m = to_modal(f);
    const int nyq = grid_.nx() / 2;
    const std::complex<double> i1(0.0, 1.0);
    for (int k = 0; k < grid_.modes(); ++k) {
        std::complex<double> factor = std::pow(i1 * grid_.wavenumber(k), order);
        // The Nyquist mode has no odd derivative on a real grid.
        if (k == nyq && order % 2 == 1) factor = 0.0;
        for (auto& c : m.column(k)) c *= factor;
    }
    Field out = to_physical(m);
    out.set_clamped(f.clamped());
    return out;
}

Field OperatorSet::d1(const Field& f) const { return modal_derivative(f, 1); }

Field OperatorSet::d1_squared(const Field& f) const { return modal_derivative(f, 2); }

namespace {

// x2 stencils on one contiguous column; T is double or complex<double>.
template <class T>
void d2_column(const T* f, T* out, int ny, double h, bool clamped) {
    const double inv2h = 0.5 / h;
    for (int j = 1; j < ny - 1; ++j) out[j] = (f[j + 1] - f[j - 1]) * inv2h;
    if (clamped) {
        out[0] = T(0.0);
        out[ny - 1] = T(0.0);
    } else {
        out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
        out[ny - 1] = (3.0 * f[ny - 1] - 4.0 * f[ny - 2] + f[ny - 3]) * inv2h;
    }
}

template <class T>
void d2_squared_column(const T* f, T* out, int ny, double h, bool clamped) {
    const double inv_h2 = 1.0 / (h * h);
    for (int j = 1; j < ny - 1; ++j) out[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * inv_h2;
    if (clamped) {
        // ghost f(-1) = f(1) from d2 f = 0 at the wall
        out[0] = 2.0 * (f[1] - f[0]) * inv_h2;
        out[ny - 1] = 2.0 * (f[ny - 2] - f[ny - 1]) * inv_h2;
    } else {
        out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv_h2;
        out[ny - 1] = (2.0 * f[ny - 1] - 5.0 * f[ny - 2] + 4.0 * f[ny - 3] - f[ny - 4]) * inv_h2;
    }
}

}  // namespace

Field OperatorSet::d2(const Field& f) const {
    require_same_grid(grid_, f.grid(), "d2");
    const int ny = grid_.ny();
    Field out(grid_);
    for (int i = 0; i < grid_.nx(); ++i)
        d2_column(f.values().data() + static_cast<std::size_t>(i) * ny, &out(i, 0), ny, grid_.dy(), f.clamped());
    return out;
}

Field OperatorSet::d2_squared(const Field& f) const {
    require_same_grid(grid_, f.grid(), "d2_squared");
    const int ny = grid_.ny();
    Field out(grid_);
    for (int i = 0; i < grid_.nx(); ++i)
        d2_squared_column(f.values().data() + static_cast<std::size_t>(i) * ny,
                          &out(i, 0), ny, grid_.dy(), f.clamped());
    return out;
}

Field OperatorSet::laplacian(const Field& f) const {
    Field out = d1_squared(f);
    out += d2_squared(f);
    out.set_clamped(false);
    return out;
}

Field OperatorSet::biharmonic(const Field& f) const { return laplacian(laplacian(f)); }

Field OperatorSet::project(const Field& f) const {
    require_same_grid(grid_, f.grid(), "project");
    if (!dealias_) return f;
    ModalField m = to_modal(f);
    for (int k = retained_modes() + 1; k < grid_.modes(); ++k)
        for (auto& c : m.column(k)) c = 0.0;
    Field out = to_physical(m);
    out.set_clamped(f.clamped());
    return out;
}

Field OperatorSet::product(const Field& a, const Field& b) const {
    require_same_grid(a.grid(), b.grid(), "product");
    Field pa = project(a);
    const Field pb = project(b);
    auto x = pa.values();
    auto y = pb.values();
    for (std::size_t n = 0; n < x.size(); ++n) x[n] *= y[n];
    pa.set_clamped(false);
    return project(pa);
}

Field OperatorSet::bilinear_B(const Field& u, const Field& v) const {
    const Field lap_u = laplacian(u);
    Field out = product(d2(v), d1(lap_u));
    out -= product(d1(v), d2(lap_u));
    return out;
}

Field OperatorSet::bilinear_B_conservative(const Field& u, const Field& v) const {
    const Field lap_u = laplacian(u);
    Field out = d1(product(d2(v), lap_u));
    Field vertical_flux = product(d1(v), lap_u);
    // d1 v vanishes on walls whenever v does; keep the exact zero.
    if (v.clamped()) {
        for (int i = 0; i < grid_.nx(); ++i) {
            vertical_flux(i, 0) = 0.0;
            vertical_flux(i, grid_.ny() - 1) = 0.0;
        }
    }
    out -= d2(vertical_flux);
    out.set_clamped(false);
    return out;
}

Field OperatorSet::bilinear(const Field& u, const Field& v, BilinearForm form) const {
    return form == BilinearForm::conservative ? bilinear_B_conservative(u, v) : bilinear_B(u, v);
}

// --- modal counterparts ------------------------------------------------------

ModalField OperatorSet::modal_derivative(const ModalField& f, int order) const {
    require_same_grid(grid_, f.grid(), "modal d1");
    ModalField out = f;
    const int nyq = grid_.nx() / 2;
    const std::complex<double> i1(0.0, 1.0);
    for (int k = 0; k < grid_.modes(); ++k) {
        std::complex<double> factor = std::pow(i1 * grid_.wavenumber(k), order);
        if (k == nyq && order % 2 == 1) factor = 0.0;
        for (auto& c : out.column(k)) c *= factor;
    }
    return out;
}

ModalField OperatorSet::d1(const ModalField& f) const { return modal_derivative(f, 1); }

ModalField OperatorSet::d1_squared(const ModalField& f) const { return modal_derivative(f, 2); }

ModalField OperatorSet::d2(const ModalField& f) const {
    require_same_grid(grid_, f.grid(), "modal d2");
    ModalField out(grid_);
    for (int k = 0; k < grid_.modes(); ++k)
        d2_column(f.column(k).data(), out.column(k).data(), grid_.ny(), grid_.dy(), f.clamped());
    return out;
}

ModalField OperatorSet::d2_squared(const ModalField& f) const {
    require_same_grid(grid_, f.grid(), "modal d2_squared");
    ModalField out(grid_);
    for (int k = 0; k < grid_.modes(); ++k)
        d2_squared_column(f.column(k).data(), out.column(k).data(), grid_.ny(), grid_.dy(),
                          f.clamped());
    return out;
}

ModalField OperatorSet::laplacian(const ModalField& f) const {
    ModalField out = d2_squared(f);
    for (int k = 0; k < grid_.modes(); ++k) {
        const double q = grid_.wavenumber(k) * grid_.wavenumber(k);
        const auto in = f.column(k);
        auto o = out.column(k);
        for (std::size_t j = 0; j < o.size(); ++j) o[j] -= q * in[j];
    }
    out.set_clamped(false);
    return out;
}

void OperatorSet::project(ModalField& f) const {
    if (!dealias_) return;
    for (int k = retained_modes() + 1; k < grid_.modes(); ++k)
        for (auto& c : f.column(k)) c = 0.0;
}

ModalField OperatorSet::bilinear_B_conservative(const ModalField& u, const ModalField& v) const {
    ModalField lap_u = laplacian(u);
    project(lap_u);
    ModalField pv = v;
    project(pv);
    const Field l = to_physical(lap_u);
    Field horizontal = to_physical(d2(pv));
    Field vertical = to_physical(d1(pv));
    auto h = horizontal.values();
    auto w = vertical.values();
    const auto lv = l.values();
    for (std::size_t n = 0; n < h.size(); ++n) {
        h[n] *= lv[n];
        w[n] *= lv[n];
    }
    horizontal.set_clamped(false);
    vertical.set_clamped(false);
    ModalField hh = to_modal(horizontal);
    ModalField vh = to_modal(vertical);
    project(hh);
    project(vh);
    if (v.clamped()) {
        for (int k = 0; k < grid_.modes(); ++k) {
            vh(k, 0) = 0.0;
            vh(k, grid_.ny() - 1) = 0.0;
        }
    }
    ModalField out = d1(hh);
    const ModalField flux = d2(vh);
    auto o = out.coeffs();
    const auto fl = flux.coeffs();
    for (std::size_t n = 0; n < o.size(); ++n) o[n] -= fl[n];
    out.set_clamped(false);
    return out;
}

TrilinearResiduals OperatorSet::trilinear_identity_residuals(const Field& u, const Field& v,
                                                             const Field& w,
                                                             BilinearForm form) const {
    if (!v.clamped() || !w.clamped())
        throw ConfigError("trilinear identities require clamped v and w");
    const Field buv = bilinear(u, v, form);
    const Field buw = bilinear(u, w, form);
    TrilinearResiduals r;
    r.r1 = std::abs(inner_product(buv, w) + inner_product(buw, v));
    r.r2 = std::abs(inner_product(buv, v));
    return r;
}

}  // namespace bardina
