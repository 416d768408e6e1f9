#pragma once

// Per-mode IMEX time stepping for the filtered stream-function model
//   (1 - alpha^2 d1^2) lap v_t + B(v, v) - nu (1 - alpha^2 d1^2) lap^2 v = g
// with v = d2 v = 0 on both walls.

#include "bardina/diagnostics.hpp"
#include "bardina/filter.hpp"
#include "bardina/grid.hpp"
#include "bardina/mms.hpp"
#include "bardina/operators.hpp"
#include "bardina/weights.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bardina {

enum class Scheme { imex_euler, imex_cnab2 };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

/// Analytic families for forcing and initial data.
struct FieldSpec {
    enum class Kind { zero, trig_clamped, mms, file };
    Kind kind = Kind::zero;
    /// trig_clamped: A sin(2 pi k1 x1 / Lx) (1 - (x2/M)^2)^2 cos(pi k2 x2 / (2M))
    double amplitude = 1.0;
    int k1 = 1;
    double k2 = 0.0;
    /// mms: reference solution id (see ManufacturedSolution::by_id)
    std::string reference;
    /// file: snapshot path
    std::string path;
};

FieldSpec::Kind parse_field_kind(const std::string& name);
std::string to_string(FieldSpec::Kind k);

/// Default initial condition: amplitude 1, k1 = 1, k2 = 0.
inline FieldSpec trig_ic() {
    FieldSpec f;
    f.kind = FieldSpec::Kind::trig_clamped;
    return f;
}

struct SolverConfig {
    StripDomain domain{8.0, 1.0};
    int nx = 64;
    int ny = 65;
    double alpha = 0.5;
    double nu = 0.01;
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::imex_cnab2;
    FieldSpec forcing;
    FieldSpec ic = trig_ic();
    /// Diagnostics cadence in steps.
    int output_every = 1;
    bool dealias = true;
    /// Off gives the linear (Stokes-type) problem.
    bool nonlinear = true;
    /// Weight behind E_w, D_w and the gamma norms.
    WeightSpec weight;
};

void validate(const SolverConfig& config);

struct SolverState {
    double t = 0.0;
    long steps = 0;
    Field v;
    ModalField v_hat;
    /// B^(n-1) / (1 + alpha^2 kappa^2), for the AB2 extrapolation.
    std::optional<ModalField> prev_nonlinear;
};

class BardinaSolver {
public:
    /// Factors every per-mode implicit matrix; throws ConfigError if one is singular.
    explicit BardinaSolver(SolverConfig config);

    const SolverConfig& config() const noexcept { return config_; }
    const Grid& grid() const noexcept { return grid_; }
    const OperatorSet& ops() const noexcept { return ops_; }

    SolverState initial_state() const;
    SolverState state_from(Field v, double t = 0.0) const;

    Field forcing(double t) const;
    bool forcing_is_steady() const noexcept;

    /// Advances by dt. Throws BlowUpError if the new state is not finite.
    void step(SolverState& s) const;

    /// dt max|grad^perp v| / min(dx, dy); the advective limit is 0.5.
    double cfl(const Field& v) const;

    /// (A_h lap v_t + B - nu A_h lap^2 v - g, h) over one step, with v_t the
    /// difference quotient and the rest averaged with the scheme's implicit weight.
    double weak_form_residual(const Field& v0, const Field& v1, const Field& h, double t0) const;

private:
    struct ModeFactor {
        std::vector<double> band;  ///< 3 x n, LAPACK upper band storage
        double s0, s1;             ///< S diagonal and off-diagonal
        double l0, l0_edge, l1, l2;
    };

    Field make_field(const FieldSpec& spec, double t, bool clamped) const;
    ModalField nonlinear_term(const ModalField& v_hat) const;
    ModalField filtered_forcing(double t) const;
    /// Implicit solve for every mode given v_hat^n and the explicit term.
    ModalField solve(const ModalField& v_hat, const ModalField& explicit_term) const;

    SolverConfig config_;
    Grid grid_;
    OperatorSet ops_;
    FilterSpec filter_;
    std::optional<ManufacturedSolution> forcing_ref_;
    std::optional<ManufacturedSolution> ic_ref_;
    std::optional<Field> fixed_forcing_;
    std::optional<ModalField> fixed_forcing_hat_;
    std::vector<ModeFactor> modes_;
    double implicit_weight_;
};

struct RunResult {
    SolverState final_state;
    std::vector<DiagnosticsRecord> records;
    std::vector<std::string> warnings;
    BudgetQuadrature quadrature = BudgetQuadrature::trapezoid;
};

using RunObserver = std::function<void(const DiagnosticsRecord&, const SolverState&)>;

/// Budget quadrature matching the scheme's implicit part.
BudgetQuadrature quadrature_for(Scheme s) noexcept;

/// Steps to t_end, recording diagnostics at t = 0, every output_every steps
/// and at the end.
RunResult run(const SolverConfig& config, const RunObserver& observer = {});
/// Same code path with alpha = 0.
RunResult nse_run(SolverConfig config, const RunObserver& observer = {});

/// Number of steps covering t_end; throws unless t_end is a multiple of dt.
long step_count(const SolverConfig& config);

}  // namespace bardina
