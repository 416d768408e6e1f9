#pragma once

// Discrete differential operators on the strip: spectral in x1, second-order
// finite differences in x2, and the vorticity-advection form B.

#include "bardina/grid.hpp"

namespace bardina {

enum class BilinearForm { pointwise, conservative };

struct TrilinearResiduals {
    double r1 = 0.0;  ///< |(B(u,v),w) + (B(u,w),v)|
    double r2 = 0.0;  ///< |(B(u,v),v)|
};

/// Operators bound to one grid. Wall closures in x2 depend on the field's
/// clamped flag: clamped fields use the ghost value implied by v = d2 v = 0,
/// all others use one-sided second-order differences.
class OperatorSet {
public:
    explicit OperatorSet(Grid grid, bool dealias = true);

    const Grid& grid() const noexcept { return grid_; }
    bool dealias() const noexcept { return dealias_; }
    /// Largest retained wavenumber index under the 2/3 rule.
    int retained_modes() const noexcept;

    Field d1(const Field& f) const;
    Field d1_squared(const Field& f) const;
    Field d2(const Field& f) const;
    Field d2_squared(const Field& f) const;
    Field laplacian(const Field& f) const;
    /// Laplacian applied twice. The intermediate field is not clamped, so its
    /// walls use the one-sided closure.
    Field biharmonic(const Field& f) const;

    /// Zero every Fourier mode above the retained band (no-op if dealias is off).
    Field project(const Field& f) const;
    /// Dealiased pointwise product.
    Field product(const Field& a, const Field& b) const;

    /// d2 v d1 lap u - d1 v d2 lap u
    Field bilinear_B(const Field& u, const Field& v) const;
    /// d1(d2 v lap u) - d2(d1 v lap u)
    Field bilinear_B_conservative(const Field& u, const Field& v) const;
    Field bilinear(const Field& u, const Field& v, BilinearForm form) const;

    /// Requires v and w clamped.
    TrilinearResiduals trilinear_identity_residuals(
        const Field& u, const Field& v, const Field& w,
        BilinearForm form = BilinearForm::conservative) const;

    // Modal counterparts. The x2 stencils act column by column and so commute
    // with the x1 transform; results match the physical versions to rounding.
    ModalField d1(const ModalField& f) const;
    ModalField d1_squared(const ModalField& f) const;
    ModalField d2(const ModalField& f) const;
    ModalField d2_squared(const ModalField& f) const;
    ModalField laplacian(const ModalField& f) const;
    void project(ModalField& f) const;
    /// Five transforms instead of the physical version's nineteen.
    ModalField bilinear_B_conservative(const ModalField& u, const ModalField& v) const;

private:
    Field modal_derivative(const Field& f, int order) const;
    ModalField modal_derivative(const ModalField& f, int order) const;

    Grid grid_;
    bool dealias_;
};

}  // namespace bardina
