#pragma once

// Property checks with measured value, bound and verdict per line. The CLI
// verify suites and the acceptance binary both call into this layer.

#include "bardina/config.hpp"
#include "bardina/solver.hpp"
#include "bardina/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bardina {

struct VerifyLine {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    std::string relation;  ///< "<=", ">=" or "<"
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyLine> lines;
    double seconds = 0.0;

    /// Appends a line; the verdict follows from measured, relation and bound.
    /// Non-finite measurements always fail.
    VerifyLine& check(std::string name, double measured, std::string relation, double bound,
                      std::string note = {});
    void append(const VerifyReport& other);
    bool passed() const noexcept;
    std::string to_text() const;
};

/// Pointwise and conservative skew-symmetry residuals on smooth clamped test
/// fields at ny, 2ny - 1 and 4ny - 3 nodes.
VerifyReport verify_operator_identities(const Grid& grid);
/// Eigenfunction, round-trip and self-adjointness checks of the horizontal filter.
VerifyReport verify_filter(const Grid& grid, double alpha);

/// MMS orders. base supplies domain, nx, nu, alpha, t_end and the reference id
/// (poly_trig if the initial data is not an mms kind). Spatial levels are
/// ny, (ny-1)/2+1, (ny-1)/4+1 at dt/8; temporal runs use dt, dt/2, dt/4, dt/8
/// on ny for both schemes.
VerifyReport verify_mms(SolverConfig base);

/// Unweighted energy decay, the positive budget excess and its shrinkage when
/// dt halves.
VerifyReport verify_energy_decay(const SolverConfig& config);
/// sup E_w, the D_w integral and their change when both grid sizes double.
VerifyReport verify_weighted_estimates(const SolverConfig& config);
/// Translation modulus in the weighted H^{2,h} norm for k = 2dt .. 64dt.
VerifyReport verify_compactness(const SolverConfig& config);

/// rho sweep {1, 10, 100} at spec.gamma, the gamma = 1 contrast and the
/// first-derivative constant of the limit weight.
VerifyReport verify_weight_certification(const Grid& grid, const WeightSpec& spec);
VerifyReport verify_poincare(const Grid& grid, const WeightSpec& spec, std::size_t samples,
                             std::uint64_t seed);

/// alpha -> 0 differences and slope; with check_doubling, the slope again on
/// a grid with both sizes doubled.
VerifyReport verify_alpha_sweep(const SolverConfig& base, const std::vector<double>& alphas,
                                bool check_doubling);
/// Nested resolutions (nx, ny), (2nx, 2ny-1), (4nx, 4ny-3).
VerifyReport verify_galerkin(const SolverConfig& base);
VerifyReport verify_dependence(const SolverConfig& base, std::uint64_t seed);

/// operators, weights, poincare, budget, compactness, mms, alpha_sweep,
/// galerkin, dependence.
const std::vector<std::string>& suite_names();
VerifyReport run_suite(const std::string& suite, const RunConfig& config);

}  // namespace bardina
