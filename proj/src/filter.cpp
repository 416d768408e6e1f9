#include "bardina/filter.hpp"

#include "bardina/error.hpp"

#include <cmath>

namespace bardina {

void validate(const FilterSpec& spec) {
    if (!std::isfinite(spec.alpha) || spec.alpha < 0.0)
        throw ConfigError("alpha must be finite and non-negative");
}

double filter_symbol(const Grid& grid, const FilterSpec& spec, int k) noexcept {
    const double ak = spec.alpha * grid.wavenumber(k);
    return 1.0 + ak * ak;
}

void apply_Ah(ModalField& m, const FilterSpec& spec) {
    validate(spec);
    for (int k = 0; k < m.grid().modes(); ++k) {
        const double s = filter_symbol(m.grid(), spec, k);
        for (auto& c : m.column(k)) c *= s;
    }
}

void invert_Ah(ModalField& m, const FilterSpec& spec) {
    validate(spec);
    for (int k = 0; k < m.grid().modes(); ++k) {
        const double s = 1.0 / filter_symbol(m.grid(), spec, k);
        for (auto& c : m.column(k)) c *= s;
    }
}

Field apply_Ah(const Field& f, const FilterSpec& spec) {
    validate(spec);
    if (spec.alpha == 0.0) return f;
    ModalField m = to_modal(f);
    apply_Ah(m, spec);
    return to_physical(m);
}

Field invert_Ah(const Field& f, const FilterSpec& spec) {
    validate(spec);
    if (spec.alpha == 0.0) return f;
    ModalField m = to_modal(f);
    invert_Ah(m, spec);
    return to_physical(m);
}

}  // namespace bardina
