#include "bardina/solver.hpp"

#include "bardina/error.hpp"
#include "bardina/io.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bardina {

Scheme parse_scheme(const std::string& name) {
    if (name == "imex_euler") return Scheme::imex_euler;
    if (name == "imex_cnab2") return Scheme::imex_cnab2;
    throw ConfigError("unknown scheme '" + name + "' (expected imex_euler or imex_cnab2)");
}

std::string to_string(Scheme s) { return s == Scheme::imex_euler ? "imex_euler" : "imex_cnab2"; }

FieldSpec::Kind parse_field_kind(const std::string& name) {
    if (name == "zero") return FieldSpec::Kind::zero;
    if (name == "trig_clamped") return FieldSpec::Kind::trig_clamped;
    if (name == "mms") return FieldSpec::Kind::mms;
    if (name == "file") return FieldSpec::Kind::file;
    throw ConfigError("unknown field kind '" + name + "' (expected zero, trig_clamped, mms, file)");
}

std::string to_string(FieldSpec::Kind k) {
    switch (k) {
        case FieldSpec::Kind::zero: return "zero";
        case FieldSpec::Kind::trig_clamped: return "trig_clamped";
        case FieldSpec::Kind::mms: return "mms";
        case FieldSpec::Kind::file: return "file";
    }
    return "unknown";
}

void validate(const SolverConfig& c) {
    if (!(std::isfinite(c.nu) && c.nu > 0.0))
        throw ConfigError("nu must be positive (viscosity nu > 0 is required); got " +
                          std::to_string(c.nu));
    if (!(std::isfinite(c.dt) && c.dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(std::isfinite(c.t_end) && c.t_end >= 0.0))
        throw ConfigError("t_end must be non-negative and finite");
    if (!(std::isfinite(c.alpha) && c.alpha >= 0.0))
        throw ConfigError("alpha must be non-negative and finite");
    if (c.output_every < 1) throw ConfigError("output.every must be at least 1");
    for (const FieldSpec* f : {&c.forcing, &c.ic}) {
        if (f->kind == FieldSpec::Kind::mms && f->reference.empty())
            throw ConfigError("mms field needs a reference id");
        if (f->kind == FieldSpec::Kind::file && f->path.empty())
            throw ConfigError("file field needs a path");
        if (f->kind == FieldSpec::Kind::trig_clamped && !std::isfinite(f->amplitude))
            throw ConfigError("trig_clamped amplitude must be finite");
    }
    validate(c.weight);
    step_count(c);
}

long step_count(const SolverConfig& c) {
    const double ratio = c.t_end / c.dt;
    const long n = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("t_end must be an integer multiple of dt");
    return n;
}

BudgetQuadrature quadrature_for(Scheme s) noexcept {
    return s == Scheme::imex_euler ? BudgetQuadrature::end_point : BudgetQuadrature::trapezoid;
}

// --- solver ------------------------------------------------------------------

BardinaSolver::BardinaSolver(SolverConfig config)
    : config_(std::move(config)),
      grid_(config_.domain, config_.nx, config_.ny),
      ops_(grid_, config_.dealias),
      filter_{config_.alpha},
      implicit_weight_(config_.scheme == Scheme::imex_euler ? 1.0 : 0.5) {
    validate(config_);
    if (config_.forcing.kind == FieldSpec::Kind::mms)
        forcing_ref_ = ManufacturedSolution::by_id(config_.forcing.reference, config_.domain);
    if (config_.ic.kind == FieldSpec::Kind::mms)
        ic_ref_ = ManufacturedSolution::by_id(config_.ic.reference, config_.domain);
    if (forcing_is_steady()) {
        fixed_forcing_ = make_field(config_.forcing, 0.0, false);
        ModalField hat = to_modal(*fixed_forcing_);
        invert_Ah(hat, filter_);
        fixed_forcing_hat_ = std::move(hat);
    }

    const int n = grid_.ny() - 2;
    const double h = grid_.dy();
    const double h2 = h * h;
    const double h4 = h2 * h2;
    const double c = config_.nu * config_.dt * implicit_weight_;
    modes_.resize(static_cast<std::size_t>(grid_.modes()));
    for (int k = 0; k < grid_.modes(); ++k) {
        const double q = grid_.wavenumber(k) * grid_.wavenumber(k);
        ModeFactor& m = modes_[static_cast<std::size_t>(k)];
        m.s0 = 2.0 / h2 + q;
        m.s1 = -1.0 / h2;
        m.l0 = 6.0 / h4 + 4.0 * q / h2 + q * q;
        // ghost value v(-1) = v(1) from the clamped condition
        m.l0_edge = m.l0 + 1.0 / h4;
        m.l1 = -4.0 / h4 - 2.0 * q / h2;
        m.l2 = 1.0 / h4;
        m.band.assign(3 * static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) {
            const bool edge = j == 0 || j == n - 1;
            m.band[2 + 3 * j] = m.s0 + c * (edge ? m.l0_edge : m.l0);
            if (j >= 1) m.band[1 + 3 * j] = m.s1 + c * m.l1;
            if (j >= 2) m.band[3 * j] = c * m.l2;
        }
        const lapack_int info = LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'U', n, 2, m.band.data(), 3);
        if (info != 0)
            throw ConfigError("implicit matrix of mode " + std::to_string(k) +
                              " is not positive definite (LAPACK info " + std::to_string(info) +
                              ")");
    }
}

bool BardinaSolver::forcing_is_steady() const noexcept {
    return config_.forcing.kind != FieldSpec::Kind::mms || forcing_ref_->is_steady();
}

Field BardinaSolver::make_field(const FieldSpec& spec, double t, bool clamped) const {
    switch (spec.kind) {
        case FieldSpec::Kind::zero: return Field(grid_, clamped);
        case FieldSpec::Kind::trig_clamped: {
            const double m = config_.domain.m;
            const double kx = 2.0 * std::numbers::pi * spec.k1 / config_.domain.lx;
            const double ky = std::numbers::pi * spec.k2 / (2.0 * m);
            return Field::from_function(
                grid_,
                [&](double x1, double x2) {
                    const double s = 1.0 - (x2 / m) * (x2 / m);
                    return spec.amplitude * std::sin(kx * x1) * s * s * std::cos(ky * x2);
                },
                clamped);
        }
        case FieldSpec::Kind::mms: {
            const auto& ref = &spec == &config_.ic ? *ic_ref_ : *forcing_ref_;
            if (clamped) return mms_field(ref, grid_, t);
            return mms_forcing(ref, t, grid_, config_.alpha, config_.nu);
        }
        case FieldSpec::Kind::file: {
            Field f = snapshot_field(read_snapshot(spec.path), grid_, clamped);
            if (clamped) {
                double wall = 0.0;
                for (int i = 0; i < grid_.nx(); ++i)
                    wall = std::max({wall, std::abs(f(i, 0)), std::abs(f(i, grid_.ny() - 1))});
                if (wall != 0.0)
                    throw ConfigError("initial field " + spec.path + " is not zero on the walls");
            }
            return f;
        }
    }
    throw ConfigError("unhandled field kind");
}

SolverState BardinaSolver::initial_state() const {
    return state_from(make_field(config_.ic, 0.0, true), 0.0);
}

SolverState BardinaSolver::state_from(Field v, double t) const {
    require_same_grid(grid_, v.grid(), "initial state");
    if (!v.all_finite()) throw ConfigError("initial field is not finite");
    v.set_clamped(true);
    ModalField hat = to_modal(v);
    hat.set_clamped(true);
    return SolverState{t, 0, std::move(v), std::move(hat), std::nullopt};
}

Field BardinaSolver::forcing(double t) const {
    if (fixed_forcing_) return *fixed_forcing_;
    return make_field(config_.forcing, t, false);
}

ModalField BardinaSolver::filtered_forcing(double t) const {
    if (fixed_forcing_hat_) return *fixed_forcing_hat_;
    ModalField hat = to_modal(forcing(t));
    invert_Ah(hat, filter_);
    return hat;
}

ModalField BardinaSolver::nonlinear_term(const ModalField& v_hat) const {
    if (!config_.nonlinear) return ModalField(grid_);
    ModalField hat = ops_.bilinear_B_conservative(v_hat, v_hat);
    invert_Ah(hat, filter_);
    return hat;
}

ModalField BardinaSolver::solve(const ModalField& v_hat, const ModalField& explicit_term) const {
    const int ny = grid_.ny();
    const int n = ny - 2;
    const int nyq = grid_.nx() / 2;
    const double dt = config_.dt;
    const bool cn = config_.scheme == Scheme::imex_cnab2;
    const double c = config_.nu * dt * implicit_weight_;

    ModalField out(grid_, true);
    std::vector<std::complex<double>> x(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> y(static_cast<std::size_t>(n));
    for (int k = 0; k < grid_.modes(); ++k) {
        auto col = out.column(k);
        if (k == nyq) continue;
        const ModeFactor& m = modes_[static_cast<std::size_t>(k)];
        const auto in = v_hat.column(k);
        for (int j = 0; j < n; ++j) x[j] = in[j + 1];
        const auto at = [&](int j) { return j >= 0 && j < n ? x[j] : std::complex<double>(); };
        for (int j = 0; j < n; ++j) {
            std::complex<double> r = m.s0 * x[j] + m.s1 * (at(j - 1) + at(j + 1));
            if (cn) {
                const double l0 = (j == 0 || j == n - 1) ? m.l0_edge : m.l0;
                r -= c * (l0 * x[j] + m.l1 * (at(j - 1) + at(j + 1)) +
                          m.l2 * (at(j - 2) + at(j + 2)));
            }
            y[j] = r + dt * explicit_term(k, j + 1);
        }
        // A = U^T U from dpbtrf; U(i, j) sits at band[2 + i - j + 3 j].
        const double* u = m.band.data();
        for (int j = 0; j < n; ++j) {
            std::complex<double> r = y[j];
            if (j >= 1) r -= u[1 + 3 * j] * y[j - 1];
            if (j >= 2) r -= u[3 * j] * y[j - 2];
            y[j] = r / u[2 + 3 * j];
        }
        for (int j = n - 1; j >= 0; --j) {
            std::complex<double> r = y[j];
            if (j + 1 < n) r -= u[1 + 3 * (j + 1)] * y[j + 1];
            if (j + 2 < n) r -= u[3 * (j + 2)] * y[j + 2];
            y[j] = r / u[2 + 3 * j];
        }
        for (int j = 0; j < n; ++j) col[j + 1] = y[j];
    }
    return out;
}

namespace {

// a * x + b * y - z, coefficientwise
ModalField combine(double a, const ModalField& x, double b, const ModalField& y,
                   const ModalField& z) {
    ModalField out(x.grid());
    auto o = out.coeffs();
    const auto xs = x.coeffs();
    const auto ys = y.coeffs();
    const auto zs = z.coeffs();
    for (std::size_t n = 0; n < o.size(); ++n) o[n] = a * xs[n] + b * ys[n] - zs[n];
    return out;
}

}  // namespace

void BardinaSolver::step(SolverState& s) const {
    const double dt = config_.dt;
    const bool cn = config_.scheme == Scheme::imex_cnab2;

    ModalField nb = nonlinear_term(s.v_hat);
    const ModalField ng = filtered_forcing(s.t + implicit_weight_ * dt);

    ModalField next(grid_);
    if (!cn) {
        next = solve(s.v_hat, combine(1.0, nb, 0.0, nb, ng));
    } else if (s.prev_nonlinear) {
        next = solve(s.v_hat, combine(1.5, nb, -0.5, *s.prev_nonlinear, ng));
    } else {
        // Startup: Heun average of B over the first step keeps it second order.
        const ModalField predicted = solve(s.v_hat, combine(1.0, nb, 0.0, nb, ng));
        next = solve(s.v_hat, combine(0.5, nb, 0.5, nonlinear_term(predicted), ng));
    }

    Field v = to_physical(next);
    v.set_clamped(true);
    const double last_good = s.t;
    if (!v.all_finite()) {
        std::ostringstream os;
        os << "blow-up detected: non-finite state after t = " << last_good;
        throw BlowUpError(os.str(), last_good);
    }
    s.v = std::move(v);
    s.v_hat = std::move(next);
    if (cn) s.prev_nonlinear = std::move(nb);
    s.t += dt;
    ++s.steps;
}

double BardinaSolver::cfl(const Field& v) const {
    const Field u1 = ops_.d2(v);
    const Field u2 = ops_.d1(v);
    double speed2 = 0.0;
    const auto a = u1.values();
    const auto b = u2.values();
    for (std::size_t n = 0; n < a.size(); ++n) speed2 = std::max(speed2, a[n] * a[n] + b[n] * b[n]);
    return config_.dt * std::sqrt(speed2) / std::min(grid_.dx(), grid_.dy());
}

double BardinaSolver::weak_form_residual(const Field& v0, const Field& v1, const Field& h,
                                         double t0) const {
    if (!h.clamped()) throw ConfigError("weak-form test field must be clamped");
    const double th = implicit_weight_;
    const double dt = config_.dt;
    Field vt = (1.0 / dt) * (v1 - v0);
    vt.set_clamped(true);
    Field vth = th * v1 + (1.0 - th) * v0;
    vth.set_clamped(true);
    Field r = apply_Ah(ops_.laplacian(vt), filter_);
    r.axpy(-config_.nu, apply_Ah(ops_.biharmonic(vth), filter_));
    if (config_.nonlinear) {
        Field a = v0;
        Field b = v1;
        a.set_clamped(true);
        b.set_clamped(true);
        r.axpy(1.0 - th, ops_.bilinear_B_conservative(a, a));
        r.axpy(th, ops_.bilinear_B_conservative(b, b));
    }
    r -= forcing(t0 + th * dt);
    return std::abs(inner_product(r, h));
}

// --- run -----------------------------------------------------------------------

RunResult run(const SolverConfig& config, const RunObserver& observer) {
    const BardinaSolver solver(config);
    const long total = step_count(config);
    const BudgetQuadrature q = quadrature_for(config.scheme);
    const DiagnosticsEngine engine(solver.ops(), config.alpha, config.nu,
                                   WeightField(solver.grid(), config.weight));

    SolverState s = solver.initial_state();
    std::vector<DiagnosticsRecord> records;
    std::vector<std::string> warnings;
    bool cfl_warned = false;
    const auto check_cfl = [&](double cfl, double t) {
        if (cfl > 0.5 && !cfl_warned) {
            std::ostringstream os;
            os << "advective CFL " << cfl << " exceeds 0.5 at t = " << t;
            warnings.push_back(os.str());
            cfl_warned = true;
        }
    };

    const auto emit = [&](const DiagnosticsRecord& r) {
        records.push_back(r);
        if (observer) observer(records.back(), s);
    };
    {
        const double cfl = solver.cfl(s.v);
        check_cfl(cfl, s.t);
        emit(engine.record(s.t, s.v, solver.forcing(s.t), nullptr, nullptr, config.dt, q, cfl));
    }
    // measures of s, valid while s is the last recorded state
    std::optional<EnergyMeasures> current = measures_of(records.back());

    for (long step = 0; step < total; ++step) {
        const bool record_next = (step + 1) % config.output_every == 0 || step + 1 == total;
        std::optional<Field> before;
        EnergyMeasures m_before;
        if (record_next) {
            before = s.v;
            m_before = current ? *current : engine.measure(s.v, solver.forcing(s.t));
        }
        solver.step(s);
        s.t = static_cast<double>(step + 1) * config.dt;
        const double cfl = solver.cfl(s.v);
        check_cfl(cfl, s.t);
        current.reset();
        if (record_next) {
            emit(engine.record(s.t, s.v, solver.forcing(s.t), &m_before, &*before, config.dt, q,
                               cfl));
            current = measures_of(records.back());
        }
    }
    return RunResult{std::move(s), std::move(records), std::move(warnings), q};
}

RunResult nse_run(SolverConfig config, const RunObserver& observer) {
    config.alpha = 0.0;
    return run(config, observer);
}

}  // namespace bardina
