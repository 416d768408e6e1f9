#pragma once

// Discrete counterparts of the energy and weighted-energy estimates, the
// Poincare-type inequalities, and the time-translation modulus.

#include "bardina/grid.hpp"
#include "bardina/operators.hpp"
#include "bardina/weights.hpp"

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

namespace bardina {

/// Quadratic energy functionals of one state.
struct EnergyMeasures {
    double E = 0.0;    ///< ||grad v||^2 + alpha^2 ||d1 grad v||^2
    double D = 0.0;    ///< nu (||lap v||^2 + alpha^2 ||d1 lap v||^2)
    double E_w = 0.0;  ///< same with psi weight
    double D_w = 0.0;
    double gv = 0.0;    ///< (g, v)
    double gv_w = 0.0;  ///< (g, psi^2 v)
    double g_sq = 0.0;  ///< ||g||^2
};

struct DiagnosticsRecord {
    double t = 0.0;
    double E = 0.0;
    double D = 0.0;
    double E_w = 0.0;
    double D_w = 0.0;
    double norm_l2 = 0.0;
    double norm_h1h = 0.0;
    double norm_h2h_gamma = 0.0;
    double norm_h3h_gamma = 0.0;
    double budget_residual = 0.0;
    double weighted_budget_residual = 0.0;
    double cfl = 0.0;
    // Not written to the time series.
    double gv = 0.0;
    double gv_w = 0.0;
    double g_sq = 0.0;
    double norm_vt = 0.0;  ///< ||v_t|| from a backward difference, 0 on the first row
};

/// Time quadrature of the dissipation and forcing terms over one step.
/// end_point matches implicit Euler, trapezoid matches Crank-Nicolson.
enum class BudgetQuadrature { end_point, trapezoid };

double budget_residual(const EnergyMeasures& before, const EnergyMeasures& after, double dt,
                       BudgetQuadrature q);
double weighted_budget_residual(const EnergyMeasures& before, const EnergyMeasures& after,
                                double dt, BudgetQuadrature q);

/// Measures carried by a record.
EnergyMeasures measures_of(const DiagnosticsRecord& r);

class DiagnosticsEngine {
public:
    DiagnosticsEngine(OperatorSet ops, double alpha, double nu, WeightField weight);

    const OperatorSet& ops() const noexcept { return ops_; }
    const WeightField& weight() const noexcept { return weight_; }

    EnergyMeasures measure(const Field& v, const Field& g) const;
    /// Record for state v at time t. When the previous step's measures are
    /// given, the budget residuals refer to the step (t - dt, t]; a previous
    /// state adds ||v_t||.
    DiagnosticsRecord record(double t, const Field& v, const Field& g,
                             const EnergyMeasures* previous_measures, const Field* previous,
                             double dt, BudgetQuadrature q, double cfl) const;

private:
    OperatorSet ops_;
    double alpha_;
    double nu_;
    WeightField weight_;
};

/// First Dirichlet eigenvalue of -d2^2 on the discrete x2 grid.
double lambda1(const Grid& grid);
/// (pi / 2M)^2
double lambda1_continuum(const StripDomain& domain);

struct BudgetReport {
    std::vector<double> residuals;  ///< one per consecutive record pair
    double max_abs_residual = 0.0;
    /// max over steps of dt * max(0, residual): energy created beyond the identity.
    double max_positive_excess = 0.0;
    /// max(0, dE/dt + D - ||g||^2 / (nu lambda1^2)), the integrated a-priori bound.
    double max_bound_excess = 0.0;
    /// max over steps of E(n+1) - E(n), clipped at 0.
    double max_energy_increase = 0.0;
};

/// records must come from consecutive steps of size dt.
BudgetReport energy_budget(const std::vector<DiagnosticsRecord>& records, double dt, double nu,
                           double lambda1_value, BudgetQuadrature q);

struct WeightedBudgetReport {
    std::vector<double> residuals;
    double sup_E_w = 0.0;
    double E_w0 = 0.0;
    double integral_D_w = 0.0;
    double growth() const noexcept { return E_w0 > 0.0 ? sup_E_w / E_w0 : 0.0; }
};

/// Residuals assume consecutive steps; the D_w integral uses the record times.
WeightedBudgetReport weighted_energy_budget(const std::vector<DiagnosticsRecord>& records,
                                            double dt, BudgetQuadrature q);

enum class ModulusNorm { H1h, H2h };

struct TranslationModulusResult {
    std::vector<int> k_steps;
    std::vector<double> k;
    std::vector<double> modulus;
    double slope = 0.0;
    /// C with M(k_max) = C k_max^(1/2).
    double envelope_constant = 0.0;
    bool envelope_dominates = false;
    std::string to_text() const;
};

/// Streams states at a fixed cadence and accumulates
/// M(k)^2 = sum dt ||v(t + k) - v(t)||^2 over t in [tau, T - k].
class TranslationModulus {
public:
    TranslationModulus(OperatorSet ops, WeightField weight, std::vector<int> k_steps,
                       double record_dt, double tau, ModulusNorm norm);

    void push(double t, const Field& v);
    TranslationModulusResult result() const;

private:
    struct Snapshot {
        double t;
        Field f;
        Field f1;
        Field f11;
    };
    double sq_distance(const Snapshot& a, const Snapshot& b) const;

    OperatorSet ops_;
    WeightField weight_;
    std::vector<int> k_steps_;
    double dt_;
    double tau_;
    ModulusNorm norm_;
    std::deque<Snapshot> ring_;
    std::vector<double> sums_;
    double last_t_ = 0.0;
    bool any_ = false;
};

struct TimedField {
    double t;
    Field v;
};

/// Trajectory version; every k must be a positive multiple of the record
/// spacing and smaller than T - tau.
TranslationModulusResult translation_modulus(const std::vector<TimedField>& trajectory,
                                             const std::vector<double>& k_list, ModulusNorm norm,
                                             const WeightField& weight, double tau);

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Random smooth field with v = d2 v = 0 on the walls.
Field random_clamped_field(const Grid& grid, std::uint64_t seed, int max_mode = 4,
                           int max_degree = 4);

struct PoincareReport {
    double lambda1 = 0.0;
    double lambda1_exact = 0.0;
    std::size_t samples = 0;
    /// max ||psi v|| / (2 lambda1^-1 ||psi grad v||); the inequality holds iff <= 1.
    double worst_first = 0.0;
    /// max ||psi grad v|| / (2 lambda1^-1/2 ||psi lap v||)
    double worst_second = 0.0;
    /// max ||psi v||_L4 / ||grad(psi v)||, reported only.
    double l4_constant = 0.0;
    std::string to_text() const;
};

PoincareReport poincare_check(const Grid& grid, const WeightSpec& spec, std::size_t sample_count,
                              std::uint64_t seed);

/// ||v||_inf / (||v||^(1/2) ||lap v||^(1/2)), informational.
double agmon_ratio(const OperatorSet& ops, const Field& v);

}  // namespace bardina
