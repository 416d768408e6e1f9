#include "bardina/diagnostics.hpp"

#include "bardina/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

namespace bardina {

namespace {

const WeightField* as_ptr(const WeightField& w) { return w.is_unit() ? nullptr : &w; }

double residual(double e0, double e1, double d0, double d1, double gv0, double gv1, double dt,
                BudgetQuadrature q) {
    const double rate = (e1 - e0) / dt;
    if (q == BudgetQuadrature::end_point) return rate + 2.0 * d1 + 2.0 * gv1;
    return rate + d0 + d1 + gv0 + gv1;
}

// Squared pieces shared by the measures and the record norms.
struct Parts {
    double grad = 0.0;
    double d1grad = 0.0;
    double lap = 0.0;
    double d1lap = 0.0;
};

struct Evaluation {
    Parts plain;
    Parts weighted;
    double l2 = 0.0;
    double d1l2 = 0.0;
};

// Unweighted pieces from the spectrum; weighted ones need physical fields.
Evaluation evaluate(const OperatorSet& ops, const Field& v, const WeightField* w) {
    ModalField vh = to_modal(v);
    vh.set_clamped(true);
    const ModalField v1 = ops.d1(vh);
    const ModalField v11 = ops.d1(v1);
    const ModalField lap = ops.laplacian(vh);
    const ModalField lap1 = ops.d1(lap);
    Evaluation e;
    e.plain = {sq_grad_norm(vh, v1), sq_grad_norm(v1, v11), sq_norm(lap), sq_norm(lap1)};
    e.l2 = sq_norm(vh);
    e.d1l2 = sq_norm(v1);
    if (w == nullptr) {
        e.weighted = e.plain;
    } else {
        const Field p1 = to_physical(v1);
        const Field p11 = to_physical(v11);
        e.weighted = {sq_grad_norm(v, p1, w), sq_grad_norm(p1, p11, w),
                      sq_norm(to_physical(lap), w), sq_norm(to_physical(lap1), w)};
    }
    return e;
}

}  // namespace

EnergyMeasures measures_of(const DiagnosticsRecord& r) {
    EnergyMeasures m;
    m.E = r.E;
    m.D = r.D;
    m.E_w = r.E_w;
    m.D_w = r.D_w;
    m.gv = r.gv;
    m.gv_w = r.gv_w;
    m.g_sq = r.g_sq;
    return m;
}

double budget_residual(const EnergyMeasures& before, const EnergyMeasures& after, double dt,
                       BudgetQuadrature q) {
    return residual(before.E, after.E, before.D, after.D, before.gv, after.gv, dt, q);
}

double weighted_budget_residual(const EnergyMeasures& before, const EnergyMeasures& after,
                                double dt, BudgetQuadrature q) {
    return residual(before.E_w, after.E_w, before.D_w, after.D_w, before.gv_w, after.gv_w, dt, q);
}

// --- engine ----------------------------------------------------------------

DiagnosticsEngine::DiagnosticsEngine(OperatorSet ops, double alpha, double nu, WeightField weight)
    : ops_(std::move(ops)), alpha_(alpha), nu_(nu), weight_(std::move(weight)) {
    require_same_grid(ops_.grid(), weight_.grid(), "diagnostics weight");
}

EnergyMeasures DiagnosticsEngine::measure(const Field& v, const Field& g) const {
    require_same_grid(ops_.grid(), v.grid(), "measure");
    const WeightField* w = as_ptr(weight_);
    const Evaluation e = evaluate(ops_, v, w);
    const double a2 = alpha_ * alpha_;
    EnergyMeasures m;
    m.E = e.plain.grad + a2 * e.plain.d1grad;
    m.D = nu_ * (e.plain.lap + a2 * e.plain.d1lap);
    m.E_w = e.weighted.grad + a2 * e.weighted.d1grad;
    m.D_w = nu_ * (e.weighted.lap + a2 * e.weighted.d1lap);
    m.gv = inner_product(g, v);
    m.gv_w = w == nullptr ? m.gv : inner_product(g, v, weight_.nodes());
    m.g_sq = inner_product(g, g);
    return m;
}

DiagnosticsRecord DiagnosticsEngine::record(double t, const Field& v, const Field& g,
                                            const EnergyMeasures* previous_measures,
                                            const Field* previous, double dt, BudgetQuadrature q,
                                            double cfl) const {
    require_same_grid(ops_.grid(), v.grid(), "record");
    const WeightField* w = as_ptr(weight_);
    const Evaluation e = evaluate(ops_, v, w);
    const double a2 = alpha_ * alpha_;
    DiagnosticsRecord r;
    r.t = t;
    r.E = e.plain.grad + a2 * e.plain.d1grad;
    r.D = nu_ * (e.plain.lap + a2 * e.plain.d1lap);
    r.E_w = e.weighted.grad + a2 * e.weighted.d1grad;
    r.D_w = nu_ * (e.weighted.lap + a2 * e.weighted.d1lap);
    r.gv = inner_product(g, v);
    r.gv_w = w == nullptr ? r.gv : inner_product(g, v, weight_.nodes());
    r.g_sq = inner_product(g, g);
    r.cfl = cfl;
    r.norm_l2 = std::sqrt(e.l2);
    r.norm_h1h = std::sqrt(e.l2 + e.d1l2);
    r.norm_h2h_gamma = std::sqrt(e.weighted.grad + e.weighted.d1grad);
    r.norm_h3h_gamma = std::sqrt(e.weighted.lap + e.weighted.d1lap);

    if (previous_measures != nullptr && dt > 0.0) {
        const EnergyMeasures now = measures_of(r);
        r.budget_residual = budget_residual(*previous_measures, now, dt, q);
        r.weighted_budget_residual = weighted_budget_residual(*previous_measures, now, dt, q);
    }
    if (previous != nullptr && dt > 0.0) r.norm_vt = l2_norm(v - *previous) / dt;
    return r;
}

// --- lambda1 ---------------------------------------------------------------

double lambda1(const Grid& grid) {
    const double h = grid.dy();
    const double m = grid.domain().m;
    return 2.0 / (h * h) * (1.0 - std::cos(std::numbers::pi * h / (2.0 * m)));
}

double lambda1_continuum(const StripDomain& domain) {
    const double s = std::numbers::pi / (2.0 * domain.m);
    return s * s;
}

// --- budgets ---------------------------------------------------------------

BudgetReport energy_budget(const std::vector<DiagnosticsRecord>& records, double dt, double nu,
                           double lambda1_value, BudgetQuadrature q) {
    BudgetReport out;
    if (!(dt > 0.0)) throw ConfigError("energy_budget: dt must be positive");
    const double bound_coeff = 1.0 / (nu * lambda1_value * lambda1_value);
    for (std::size_t n = 1; n < records.size(); ++n) {
        const auto& a = records[n - 1];
        const auto& b = records[n];
        const double r = residual(a.E, b.E, a.D, b.D, a.gv, b.gv, dt, q);
        out.residuals.push_back(r);
        out.max_abs_residual = std::max(out.max_abs_residual, std::abs(r));
        out.max_positive_excess = std::max(out.max_positive_excess, dt * std::max(0.0, r));
        const double mean_d = q == BudgetQuadrature::end_point ? b.D : 0.5 * (a.D + b.D);
        const double mean_g = q == BudgetQuadrature::end_point ? b.g_sq : 0.5 * (a.g_sq + b.g_sq);
        const double bound = (b.E - a.E) / dt + mean_d - bound_coeff * mean_g;
        out.max_bound_excess = std::max(out.max_bound_excess, bound);
        out.max_energy_increase = std::max(out.max_energy_increase, b.E - a.E);
    }
    return out;
}

WeightedBudgetReport weighted_energy_budget(const std::vector<DiagnosticsRecord>& records,
                                            double dt, BudgetQuadrature q) {
    WeightedBudgetReport out;
    if (records.empty()) return out;
    out.E_w0 = records.front().E_w;
    out.sup_E_w = out.E_w0;
    for (std::size_t n = 1; n < records.size(); ++n) {
        const auto a = measures_of(records[n - 1]);
        const auto b = measures_of(records[n]);
        out.residuals.push_back(weighted_budget_residual(a, b, dt, q));
        out.sup_E_w = std::max(out.sup_E_w, b.E_w);
        out.integral_D_w += 0.5 * (records[n].t - records[n - 1].t) * (a.D_w + b.D_w);
    }
    return out;
}

// --- translation modulus -----------------------------------------------------

TranslationModulus::TranslationModulus(OperatorSet ops, WeightField weight,
                                       std::vector<int> k_steps, double record_dt, double tau,
                                       ModulusNorm norm)
    : ops_(std::move(ops)),
      weight_(std::move(weight)),
      k_steps_(std::move(k_steps)),
      dt_(record_dt),
      tau_(tau),
      norm_(norm),
      sums_(k_steps_.size(), 0.0) {
    if (k_steps_.empty()) throw ConfigError("translation modulus needs at least one k");
    for (int k : k_steps_)
        if (k <= 0) throw ConfigError("translation modulus k must be a positive step count");
    if (!(dt_ > 0.0)) throw ConfigError("translation modulus record spacing must be positive");
}

double TranslationModulus::sq_distance(const Snapshot& a, const Snapshot& b) const {
    const WeightField* w = as_ptr(weight_);
    const Field d = a.f - b.f;
    const Field d1 = a.f1 - b.f1;
    if (norm_ == ModulusNorm::H1h) return sq_norm(d, w) + sq_norm(d1, w);
    const Field d11 = a.f11 - b.f11;
    return sq_grad_norm(d, d1, w) + sq_grad_norm(d1, d11, w);
}

void TranslationModulus::push(double t, const Field& v) {
    if (any_ && std::abs(t - last_t_ - dt_) > 1e-9 * std::max(1.0, std::abs(t)))
        throw ConfigError("translation modulus states must arrive at the record spacing");
    Field f1 = ops_.d1(v);
    Field f11 = norm_ == ModulusNorm::H2h ? ops_.d1(f1) : Field(v.grid());
    ring_.push_back({t, v, std::move(f1), std::move(f11)});
    const std::size_t depth = static_cast<std::size_t>(*std::max_element(k_steps_.begin(), k_steps_.end())) + 1;
    if (ring_.size() > depth) ring_.pop_front();
    const Snapshot& now = ring_.back();
    const double slack = 1e-9 * dt_;
    for (std::size_t n = 0; n < k_steps_.size(); ++n) {
        const auto k = static_cast<std::size_t>(k_steps_[n]);
        if (ring_.size() < k + 1) continue;
        const Snapshot& earlier = ring_[ring_.size() - 1 - k];
        if (earlier.t + slack < tau_) continue;
        sums_[n] += dt_ * sq_distance(now, earlier);
    }
    last_t_ = t;
    any_ = true;
}

TranslationModulusResult TranslationModulus::result() const {
    TranslationModulusResult r;
    r.k_steps = k_steps_;
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t n = 0; n < k_steps_.size(); ++n) {
        const double k = k_steps_[n] * dt_;
        const double m = std::sqrt(sums_[n]);
        r.k.push_back(k);
        r.modulus.push_back(m);
        if (m > 0.0) {
            lx.push_back(std::log(k));
            ly.push_back(std::log(m));
        }
    }
    r.slope = lx.size() >= 2 ? fitted_slope(lx, ly) : 0.0;
    const auto top = std::max_element(r.k.begin(), r.k.end()) - r.k.begin();
    r.envelope_constant = r.modulus[top] / std::sqrt(r.k[top]);
    r.envelope_dominates = true;
    for (std::size_t n = 0; n < r.k.size(); ++n)
        if (r.modulus[n] > r.envelope_constant * std::sqrt(r.k[n]) * (1.0 + 1e-12))
            r.envelope_dominates = false;
    return r;
}

std::string TranslationModulusResult::to_text() const {
    std::ostringstream os;
    os << std::setprecision(10) << "k_steps\tk\tM(k)\tenvelope\n";
    for (std::size_t n = 0; n < k.size(); ++n)
        os << k_steps[n] << '\t' << k[n] << '\t' << modulus[n] << '\t'
           << envelope_constant * std::sqrt(k[n]) << '\n';
    os << "slope\t" << slope << "\nenvelope_dominates\t" << (envelope_dominates ? 1 : 0) << '\n';
    return os.str();
}

TranslationModulusResult translation_modulus(const std::vector<TimedField>& trajectory,
                                             const std::vector<double>& k_list, ModulusNorm norm,
                                             const WeightField& weight, double tau) {
    if (trajectory.size() < 2) throw ConfigError("translation modulus needs at least two states");
    const double dt = trajectory[1].t - trajectory[0].t;
    if (!(dt > 0.0)) throw ConfigError("trajectory times must increase");
    const double t_end = trajectory.back().t;
    std::vector<int> steps;
    for (double k : k_list) {
        if (k > t_end - tau + 1e-12 * std::max(1.0, t_end))
            throw ConfigError("translation k exceeds T - tau");
        const long s = std::lround(k / dt);
        if (s <= 0 || std::abs(s * dt - k) > 1e-9 * std::max(1.0, k))
            throw ConfigError("translation k must be a positive multiple of the record spacing");
        steps.push_back(static_cast<int>(s));
    }
    TranslationModulus acc(OperatorSet(trajectory.front().v.grid()), weight, steps, dt, tau, norm);
    for (const auto& s : trajectory) acc.push(s.t, s.v);
    return acc.result();
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ConfigError("fitted_slope needs two or more paired samples");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ConfigError("fitted_slope: abscissae are all equal");
    return sxy / sxx;
}

// --- random fields and Poincare ---------------------------------------------

Field random_clamped_field(const Grid& grid, std::uint64_t seed, int max_mode, int max_degree) {
    if (max_mode < 0 || max_degree < 0)
        throw ConfigError("random field: mode and degree limits must be non-negative");
    max_mode = std::min(max_mode, grid.nx() / 2 - 1);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    struct Term {
        int k;
        int d;
        double c, s;
    };
    std::vector<Term> terms;
    for (int k = 0; k <= max_mode; ++k)
        for (int d = 0; d <= max_degree; ++d) {
            const double decay = 1.0 / ((1.0 + k) * (1.0 + d));
            const double c = normal(rng) * decay;
            const double s = k == 0 ? 0.0 : normal(rng) * decay;
            terms.push_back({k, d, c, s});
        }
    const double m = grid.domain().m;
    const double kappa = 2.0 * std::numbers::pi / grid.domain().lx;
    return Field::from_function(
        grid,
        [&](double x1, double x2) {
            const double eta = x2 / m;
            const double clamp = (1.0 - eta * eta) * (1.0 - eta * eta);
            double acc = 0.0;
            for (const auto& t : terms)
                acc += std::pow(eta, t.d) *
                       (t.c * std::cos(t.k * kappa * x1) + t.s * std::sin(t.k * kappa * x1));
            return clamp * acc;
        },
        true);
}

PoincareReport poincare_check(const Grid& grid, const WeightSpec& spec, std::size_t sample_count,
                              std::uint64_t seed) {
    const WeightField weight(grid, spec);
    const OperatorSet ops(grid);
    PoincareReport rep;
    rep.lambda1 = lambda1(grid);
    rep.lambda1_exact = lambda1_continuum(grid.domain());
    const Field psi = weight.psi();
    const auto q = grid.quad_weights();
    for (std::size_t s = 0; s < sample_count; ++s) {
        const Field v = random_clamped_field(grid, seed + s);
        if (v.max_abs() == 0.0) continue;
        const Field v1 = ops.d1(v);
        const double n0 = std::sqrt(sq_norm(v, &weight));
        const double n1 = std::sqrt(sq_grad_norm(v, v1, &weight));
        const double n2 = std::sqrt(sq_norm(ops.laplacian(v), &weight));
        rep.worst_first = std::max(rep.worst_first, n0 / (2.0 / rep.lambda1 * n1));
        rep.worst_second = std::max(rep.worst_second, n1 / (2.0 / std::sqrt(rep.lambda1) * n2));

        Field pv = v;
        for (int i = 0; i < grid.nx(); ++i)
            for (int j = 0; j < grid.ny(); ++j) pv(i, j) *= psi(i, j);
        double l4 = 0.0;
        for (int i = 0; i < grid.nx(); ++i)
            for (int j = 0; j < grid.ny(); ++j) l4 += q[j] * std::pow(pv(i, j), 4);
        l4 = std::pow(l4 * grid.dx(), 0.25);
        rep.l4_constant = std::max(rep.l4_constant, l4 / std::sqrt(sq_grad_norm(ops, pv)));
        ++rep.samples;
    }
    return rep;
}

std::string PoincareReport::to_text() const {
    std::ostringstream os;
    os << std::setprecision(10) << "lambda1\t" << lambda1 << "\nlambda1_exact\t" << lambda1_exact
       << "\nsamples\t" << samples << "\nworst_first\t" << worst_first << "\nworst_second\t"
       << worst_second << "\nl4_constant\t" << l4_constant << '\n';
    return os.str();
}

double agmon_ratio(const OperatorSet& ops, const Field& v) {
    const double denom = std::sqrt(l2_norm(v) * l2_norm(ops.laplacian(v)));
    return denom > 0.0 ? v.max_abs() / denom : 0.0;
}

}  // namespace bardina
