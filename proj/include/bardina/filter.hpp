#pragma once

// Horizontal Helmholtz operator A_h = I - alpha^2 d1^2 and its inverse, the
// horizontal filter. Both are diagonal in the x1 Fourier basis.

#include "bardina/grid.hpp"

namespace bardina {

struct FilterSpec {
    double alpha = 0.0;  ///< filter length; 0 is the identity filter
};

void validate(const FilterSpec& spec);

/// Multiplier 1 + alpha^2 kappa^2 of mode k.
double filter_symbol(const Grid& grid, const FilterSpec& spec, int k) noexcept;

Field apply_Ah(const Field& f, const FilterSpec& spec);
Field invert_Ah(const Field& f, const FilterSpec& spec);

void apply_Ah(ModalField& m, const FilterSpec& spec);
void invert_Ah(ModalField& m, const FilterSpec& spec);

}  // namespace bardina
