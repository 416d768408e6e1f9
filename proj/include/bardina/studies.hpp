#pragma once

// Multi-run studies: manufactured-solution convergence, the alpha -> 0 sweep,
// nested-grid Cauchy differences and sensitivity to initial data.

#include "bardina/solver.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bardina {

struct ConvergenceTable {
    std::string label;           ///< "dy" or "dt"
    std::vector<double> h;       ///< step sizes, coarse to fine
    std::vector<double> errors;  ///< one per h (self-convergence: per consecutive pair)
    std::vector<double> orders;  ///< log2 ratios of consecutive errors
    double fitted_order = 0.0;   ///< least-squares slope of log error vs log h
    std::string to_text() const;
};

/// Discrete L2 error at t_end against the reference solution, for each ny
/// (nx from base). base must use mms forcing and initial data.
ConvergenceTable mms_spatial_study(SolverConfig base, const std::vector<int>& ny_list);

/// Self-convergence in dt: errors are ||v_dt - v_dt/2|| at t_end on the base grid.
ConvergenceTable mms_temporal_study(SolverConfig base, const std::vector<double>& dt_list);

struct AlphaSweep {
    std::vector<double> alphas;
    std::vector<double> differences;  ///< ||v_alpha(T) - v_0(T)||
    double slope = 0.0;
    bool monotone = false;
    std::string to_text() const;
};

/// Runs alpha = 0 once and every alpha in the list (descending, positive).
AlphaSweep alpha_sweep(SolverConfig base, const std::vector<double>& alphas);

/// Coarse field prolonged to a nested fine grid: Fourier zero-padding in x1,
/// linear interpolation in x2.
Field prolong(const Field& coarse, const Grid& fine);

struct GalerkinStudy {
    std::vector<std::pair<int, int>> resolutions;
    /// ||v^(m+1) - P v^m|| in L2(tau, T; H^{2,h}), one per consecutive pair
    std::vector<double> deltas;
    bool cauchy_decrease = false;
    std::string to_text() const;
};

/// record_every is the trajectory sampling interval in time units (a multiple of dt).
GalerkinStudy galerkin_refinement_study(SolverConfig base,
                                        const std::vector<std::pair<int, int>>& resolutions,
                                        double record_every, double tau);

struct ContinuousDependence {
    std::vector<double> deltas;
    std::vector<double> constants;      ///< ||grad(v_delta - v)(T)|| / delta
    std::vector<double> max_constants;  ///< sup over records of the same ratio
    double spread = 0.0;                ///< max / min of constants
    std::string to_text() const;
};

/// Perturbs the initial data by delta p with p random, clamped and ||grad p|| = 1.
ContinuousDependence continuous_dependence(SolverConfig base, const std::vector<double>& deltas,
                                           std::uint64_t seed);

}  // namespace bardina
