#include "bardina/verify.hpp"

#include "bardina/diagnostics.hpp"
#include "bardina/error.hpp"
#include "bardina/filter.hpp"
#include "bardina/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace bardina {

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(4) << x;
    return os.str();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

double max_rel_error(const Field& got, const Field& want) {
    const double scale = want.max_abs();
    return (got - want).max_abs() / (scale > 0.0 ? scale : 1.0);
}

// Smooth test triple; v and w are clamped, u is not.
struct Triple {
    Field u, v, w;
};

Triple test_triple(const Grid& g) {
    const double kappa = g.wavenumber(1);
    const double m = g.domain().m;
    const double pi = std::numbers::pi;
    Triple t{Field::from_function(g,
                                  [&](double x, double y) {
                                      const double s = y / m;
                                      return (std::sin(kappa * x) + 0.4 * std::cos(3 * kappa * x + 0.2)) *
                                                 std::exp(0.5 * s) +
                                             0.3 * std::cos(2 * kappa * x) * s * s * s;
                                  }),
             Field::from_function(
                 g,
                 [&](double x, double y) {
                     const double s = y / m;
                     const double c = 1.0 - s * s;
                     return (std::cos(kappa * x) + 0.5 * std::sin(2 * kappa * x)) * c * c * (1.0 + 0.5 * s);
                 },
                 true),
             Field::from_function(
                 g,
                 [&](double x, double y) {
                     const double s = y / m;
                     const double c = 1.0 - s * s;
                     return (std::sin(2 * kappa * x) + 0.2) * c * c * std::cos(0.5 * pi * s);
                 },
                 true)};
    return t;
}

// Residuals divided by the size of the terms that cancel.
TrilinearResiduals normalized_residuals(const OperatorSet& ops, const Triple& t, BilinearForm form) {
    const auto r = ops.trilinear_identity_residuals(t.u, t.v, t.w, form);
    const Field buv = ops.bilinear(t.u, t.v, form);
    const Field buw = ops.bilinear(t.u, t.w, form);
    const double n1 = l2_norm(buv) * l2_norm(t.w) + l2_norm(buw) * l2_norm(t.v);
    const double n2 = l2_norm(buv) * l2_norm(t.v);
    return {r.r1 / n1, r.r2 / n2};
}

RunResult run_quiet(SolverConfig c, int every, const RunObserver& observer = {}) {
    c.output_every = every;
    return run(c, observer);
}

SolverConfig doubled(SolverConfig c) {
    c.nx *= 2;
    c.ny = 2 * c.ny - 1;
    return c;
}

}  // namespace

// --- report ------------------------------------------------------------------

VerifyLine& VerifyReport::check(std::string name, double measured, std::string relation,
                                double bound, std::string note) {
    bool pass = false;
    if (std::isfinite(measured)) {
        if (relation == "<=")
            pass = measured <= bound;
        else if (relation == ">=")
            pass = measured >= bound;
        else if (relation == "<")
            pass = measured < bound;
        else
            throw Error("unknown relation " + relation);
    }
    lines.push_back({std::move(name), measured, bound, std::move(relation), pass, std::move(note)});
    return lines.back();
}

void VerifyReport::append(const VerifyReport& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
    seconds += other.seconds;
}

bool VerifyReport::passed() const noexcept {
    return !lines.empty() &&
           std::all_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return l.pass; });
}

std::string VerifyReport::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << '\n';
    for (const auto& l : lines) {
        os << (l.pass ? "  PASS  " : "  FAIL  ") << l.name << ": " << std::setprecision(6)
           << l.measured << ' ' << l.relation << ' ' << l.bound;
        if (!l.note.empty()) os << "  (" << l.note << ')';
        os << '\n';
    }
    os << (passed() ? "PASS" : "FAIL") << ' ' << suite << " in " << std::setprecision(3) << seconds
       << " s\n";
    return os.str();
}

// --- operators and filter --------------------------------------------------------

VerifyReport verify_operator_identities(const Grid& grid) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "operator_identities";
    const int ny = grid.ny();
    std::vector<double> h;
    std::vector<double> p1, p2;
    double conservative_worst = 0.0;
    for (int level : {ny, 2 * ny - 1, 4 * ny - 3}) {
        const Grid g(grid.domain(), grid.nx(), level);
        const OperatorSet ops(g);
        const Triple t = test_triple(g);
        const auto pw = normalized_residuals(ops, t, BilinearForm::pointwise);
        const auto cs = normalized_residuals(ops, t, BilinearForm::conservative);
        h.push_back(std::log(g.dy()));
        p1.push_back(std::log(pw.r1));
        p2.push_back(std::log(pw.r2));
        conservative_worst = std::max({conservative_worst, cs.r1, cs.r2});
        if (level == ny) {
            rep.check("conservative r1 at ny = " + std::to_string(ny), cs.r1, "<=", 1e-3);
            rep.check("conservative r2 at ny = " + std::to_string(ny), cs.r2, "<=", 1e-3);
            rep.check("pointwise r1 at ny = " + std::to_string(ny), pw.r1, "<=", 1e-3);
            rep.check("pointwise r2 at ny = " + std::to_string(ny), pw.r2, "<=", 1e-3);
        }
    }
    rep.check("conservative residuals, all levels", conservative_worst, "<=", 1e-12,
              "skew-symmetric by construction");
    rep.check("pointwise r1 order over two x2 doublings", fitted_slope(h, p1), ">=", 1.8);
    rep.check("pointwise r2 order over two x2 doublings", fitted_slope(h, p2), ">=", 1.8);
    rep.seconds = clock.seconds();
    return rep;
}

VerifyReport verify_filter(const Grid& grid, double alpha) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "filter";
    const FilterSpec spec{alpha};
    const double kappa = grid.wavenumber(1);
    const double sym = filter_symbol(grid, spec, 1);
    const double m = grid.domain().m;
    const Field eig = Field::from_function(grid, [&](double x, double y) {
        return std::cos(kappa * x) * (1.0 + y / m - 0.3 * y * y);
    });
    rep.check("A_h eigenfunction", max_rel_error(apply_Ah(eig, spec), sym * eig), "<=", 1e-12);
    rep.check("A_h^-1 eigenfunction", max_rel_error(invert_Ah(eig, spec), (1.0 / sym) * eig), "<=",
              1e-12);
    const Field mean = Field::from_function(grid, [&](double, double y) { return 1.0 + y * y; });
    rep.check("x2-only field unchanged", max_rel_error(apply_Ah(mean, spec), mean), "<=", 1e-12);

    double round_trip = 0.0;
    double adjoint = 0.0;
    double contraction = 0.0;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal;
    const auto noise = [&] {
        Field f(grid);
        for (double& x : f.values()) x = normal(rng);
        return f;
    };
    for (int sample = 0; sample < 20; ++sample) {
        const Field f = noise();
        const Field g = noise();
        round_trip = std::max({round_trip, max_rel_error(invert_Ah(apply_Ah(f, spec), spec), f),
                               max_rel_error(apply_Ah(invert_Ah(f, spec), spec), f)});
        const Field af = apply_Ah(f, spec);
        const Field ag = apply_Ah(g, spec);
        adjoint = std::max(adjoint, std::abs(inner_product(af, g) - inner_product(f, ag)) /
                                        (l2_norm(af) * l2_norm(g)));
        const Field bf = invert_Ah(f, spec);
        const Field bg = invert_Ah(g, spec);
        adjoint = std::max(adjoint, std::abs(inner_product(bf, g) - inner_product(f, bg)) /
                                        (l2_norm(f) * l2_norm(g)));
        contraction = std::max(contraction, l2_norm(bf) / l2_norm(f));
    }
    rep.check("round trip, 20 random fields", round_trip, "<=", 1e-12);
    rep.check("self-adjointness of A_h and its inverse", adjoint, "<=", 1e-12);
    rep.check("||A_h^-1 f|| / ||f||", contraction, "<=", 1.0 + 1e-12);
    rep.seconds = clock.seconds();
    return rep;
}

// --- manufactured solutions ------------------------------------------------------

VerifyReport verify_mms(SolverConfig base) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "mms";
    if (base.ic.kind != FieldSpec::Kind::mms) {
        base.ic = FieldSpec{};
        base.ic.kind = FieldSpec::Kind::mms;
        base.ic.reference = "poly_trig";
    }
    base.forcing = base.ic;
    if ((base.ny - 1) % 4 != 0) throw ConfigError("mms suite needs ny - 1 divisible by 4");

    SolverConfig spatial = base;
    spatial.scheme = Scheme::imex_cnab2;
    spatial.dt = base.dt / 8.0;
    const auto st = mms_spatial_study(spatial, {(base.ny - 1) / 4 + 1, (base.ny - 1) / 2 + 1, base.ny});
    rep.check("spatial order (CNAB2, dt/8)", st.fitted_order, ">=", 1.7, "target 2.0 +- 0.3");
    rep.check("spatial order upper", st.fitted_order, "<=", 2.3);

    const std::vector<double> dts{base.dt, base.dt / 2, base.dt / 4, base.dt / 8};
    for (Scheme s : {Scheme::imex_euler, Scheme::imex_cnab2}) {
        SolverConfig c = base;
        c.scheme = s;
        const auto tt = mms_temporal_study(c, dts);
        const double target = s == Scheme::imex_euler ? 1.0 : 2.0;
        rep.check("temporal order " + to_string(s), tt.fitted_order, ">=", target - 0.3,
                  "target " + fmt(target) + " +- 0.3");
        rep.check("temporal order " + to_string(s) + " upper", tt.fitted_order, "<=", target + 0.3);
    }
    rep.seconds = clock.seconds();
    return rep;
}

// --- energy, weighted energy, compactness ---------------------------------------

VerifyReport verify_energy_decay(const SolverConfig& config) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "energy_decay";
    const auto a = run_quiet(config, 1);
    const double e0 = a.records.front().E;
    const auto ba = energy_budget(a.records, config.dt, config.nu, lambda1(Grid(config.domain, config.nx, config.ny)),
                                  a.quadrature);
    if (config.forcing.kind == FieldSpec::Kind::zero) {
        rep.check("max per-step E increase / E(0)", ba.max_energy_increase / e0, "<=", 1e-8,
                  "E nonincreasing");
        rep.check("E(T) / E(0)", a.records.back().E / e0, "<", 1.0);
    } else {
        rep.check("a-priori bound excess / E(0)", ba.max_bound_excess / e0, "<=", 1e-8);
    }
    rep.check("max positive budget excess / E(0)", ba.max_positive_excess / e0, "<=", 1e-8);

    SolverConfig half = config;
    half.dt = config.dt / 2;
    const auto b = run_quiet(half, 1);
    const auto bb = energy_budget(b.records, half.dt, half.nu,
                                  lambda1(Grid(half.domain, half.nx, half.ny)), b.quadrature);
    const double ratio = bb.max_positive_excess > 0.0
                             ? ba.max_positive_excess / bb.max_positive_excess
                             : std::numeric_limits<double>::infinity();
    rep.check("excess(dt) / excess(dt/2)", ratio, ">=", 2.0,
              "excess " + fmt(ba.max_positive_excess) + " -> " + fmt(bb.max_positive_excess));
    rep.seconds = clock.seconds();
    return rep;
}

VerifyReport verify_weighted_estimates(const SolverConfig& config) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "weighted_estimates";
    const auto a = run_quiet(config, 1);
    const auto wa = weighted_energy_budget(a.records, config.dt, a.quadrature);
    rep.check("sup E_w / E_w(0)", wa.growth(), "<=", 1.05);
    rep.check("integral of D_w", wa.integral_D_w, "<", std::numeric_limits<double>::infinity(),
              "finite");

    // The fine run is sampled every 10 steps; E_w and D_w are smooth in t.
    const auto b = run_quiet(doubled(config), 10);
    const auto wb = weighted_energy_budget(b.records, config.dt, b.quadrature);
    rep.check("sup E_w change under doubling", rel_diff(wa.sup_E_w, wb.sup_E_w), "<=", 0.05,
              fmt(wa.sup_E_w) + " vs " + fmt(wb.sup_E_w));
    rep.check("D_w integral change under doubling", rel_diff(wa.integral_D_w, wb.integral_D_w),
              "<=", 0.05, fmt(wa.integral_D_w) + " vs " + fmt(wb.integral_D_w));
    rep.seconds = clock.seconds();
    return rep;
}

VerifyReport verify_compactness(const SolverConfig& config) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "compactness";
    const BardinaSolver probe(config);
    TranslationModulus tm(probe.ops(), WeightField(probe.grid(), config.weight),
                          {2, 4, 8, 16, 32, 64}, config.dt, 0.0, ModulusNorm::H2h);
    run_quiet(config, 1, [&](const DiagnosticsRecord& r, const SolverState& s) { tm.push(r.t, s.v); });
    const auto res = tm.result();
    rep.check("log-log slope of M(k), k = 2dt..64dt", res.slope, ">=", 0.5);
    double worst = 0.0;
    for (std::size_t n = 0; n < res.k.size(); ++n)
        worst = std::max(worst, res.modulus[n] / (res.envelope_constant * std::sqrt(res.k[n])));
    rep.check("max M(k) / (C k^1/2)", worst, "<=", 1.0 + 1e-12,
              "C = " + fmt(res.envelope_constant) + " from k = 64dt");
    rep.seconds = clock.seconds();
    return rep;
}

// --- weights -------------------------------------------------------------------

VerifyReport verify_weight_certification(const Grid& grid, const WeightSpec& spec) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "weight_certification";
    validate(spec);
    const auto betas = admissible_betas();
    const auto sweep = certify_rho_sweep(spec, grid, {1.0, 10.0, 100.0}, betas);
    for (const auto& e : sweep.entries)
        rep.check("C_emp spread over rho {1,10,100}, beta " + to_string(e.beta), e.spread, "<=", 2.0,
                  fmt(e.c_emp[0]) + ", " + fmt(e.c_emp[1]) + ", " + fmt(e.c_emp[2]));

    WeightSpec large = spec;
    large.gamma = 1.0;
    large.allow_large_gamma = true;
    const auto contrast = certify_rho_sweep(large, grid, {1.0, 100.0}, betas);
    rep.check("gamma = 1 aggregate C_emp, rho 100 / rho 1", contrast.aggregate[1] / contrast.aggregate[0],
              ">=", 3.0);

    WeightSpec limit = spec;
    limit.rho = std::numeric_limits<double>::infinity();
    LatticeOptions lo;
    lo.x1_max = 20.0 / spec.epsilon;
    const auto phi = certify_phi_control(limit, grid, {{1, 0}}, lo);
    rep.check("limit weight C_emp((1,0))", phi.entries.front().c_emp, "<=", 3.0);
    rep.seconds = clock.seconds();
    return rep;
}

VerifyReport verify_poincare(const Grid& grid, const WeightSpec& spec, std::size_t samples,
                             std::uint64_t seed) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "poincare";
    const auto p = poincare_check(grid, spec, samples, seed);
    const std::string n = std::to_string(p.samples) + " fields";
    rep.check("||psi v|| / (2 lambda1^-1 ||psi grad v||)", p.worst_first, "<=", 1.0, n);
    rep.check("||psi grad v|| / (2 lambda1^-1/2 ||psi lap v||)", p.worst_second, "<=", 1.0, n);
    rep.check("|lambda1 / (pi/2M)^2 - 1|", std::abs(p.lambda1 / p.lambda1_exact - 1.0), "<=", 0.01);
    rep.seconds = clock.seconds();
    return rep;
}

// --- alpha sweep, refinement, dependence -------------------------------------------

VerifyReport verify_alpha_sweep(const SolverConfig& base, const std::vector<double>& alphas,
                                bool check_doubling) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "alpha_sweep";
    const auto s = alpha_sweep(base, alphas);
    std::string diffs;
    for (double d : s.differences) diffs += (diffs.empty() ? "" : ", ") + fmt(d);
    rep.check("differences strictly decreasing", s.monotone ? 1.0 : 0.0, ">=", 1.0, diffs);
    rep.check("log-log slope", s.slope, ">=", 1.5);
    rep.check("log-log slope upper", s.slope, "<=", 2.5);
    if (check_doubling) {
        const auto f = alpha_sweep(doubled(base), alphas);
        rep.check("slope change under doubling", std::abs(f.slope - s.slope), "<=", 0.2,
                  fmt(s.slope) + " -> " + fmt(f.slope));
    }
    rep.seconds = clock.seconds();
    return rep;
}

VerifyReport verify_galerkin(const SolverConfig& base) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "galerkin";
    const SolverConfig mid = doubled(base);
    const SolverConfig fine = doubled(mid);
    const double every = std::max(base.dt, base.t_end / 20.0);
    const auto g = galerkin_refinement_study(
        base, {{base.nx, base.ny}, {mid.nx, mid.ny}, {fine.nx, fine.ny}},
        base.dt * std::round(every / base.dt), 0.0);
    rep.check("delta(coarse pair)", g.deltas[0], "<", std::numeric_limits<double>::infinity());
    rep.check("delta(fine pair) / delta(coarse pair)", g.deltas[1] / g.deltas[0], "<", 1.0,
              fmt(g.deltas[0]) + " -> " + fmt(g.deltas[1]));
    rep.seconds = clock.seconds();
    return rep;
}

VerifyReport verify_dependence(const SolverConfig& base, std::uint64_t seed) {
    Stopwatch clock;
    VerifyReport rep;
    rep.suite = "dependence";
    const auto cd = continuous_dependence(base, {1e-3, 1e-4}, seed);
    rep.check("C at delta = 1e-3", cd.constants[0], "<", std::numeric_limits<double>::infinity());
    rep.check("C at delta = 1e-4", cd.constants[1], "<", std::numeric_limits<double>::infinity());
    rep.check("C spread across delta", cd.spread, "<=", 1.2);
    const auto fine = continuous_dependence(doubled(base), {1e-3}, seed);
    rep.check("C change under doubling", rel_diff(cd.constants[0], fine.constants[0]), "<=", 0.2,
              fmt(cd.constants[0]) + " vs " + fmt(fine.constants[0]));
    rep.seconds = clock.seconds();
    return rep;
}

// --- suites ------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"operators", "weights",     "poincare",
                                                "budget",    "compactness", "mms",
                                                "alpha_sweep", "galerkin",  "dependence"};
    return names;
}

VerifyReport run_suite(const std::string& suite, const RunConfig& config) {
    const SolverConfig& c = config.solver;
    validate(c);
    const Grid grid(c.domain, c.nx, c.ny);
    VerifyReport rep;
    rep.suite = suite;
    if (suite == "operators") {
        rep.append(verify_operator_identities(grid));
        rep.append(verify_filter(grid, c.alpha));
    } else if (suite == "weights") {
        rep.append(verify_weight_certification(grid, c.weight));
    } else if (suite == "poincare") {
        rep.append(verify_poincare(grid, c.weight, 100, config.seed));
    } else if (suite == "budget") {
        rep.append(verify_energy_decay(c));
        rep.append(verify_weighted_estimates(c));
    } else if (suite == "compactness") {
        rep.append(verify_compactness(c));
    } else if (suite == "mms") {
        rep.append(verify_mms(c));
    } else if (suite == "alpha_sweep") {
        rep.append(verify_alpha_sweep(c, {0.4, 0.2, 0.1, 0.05}, false));
    } else if (suite == "galerkin") {
        rep.append(verify_galerkin(c));
    } else if (suite == "dependence") {
        rep.append(verify_dependence(c, config.seed));
    } else {
        throw ConfigError("unknown suite '" + suite + "'");
    }
    return rep;
}

}  // namespace bardina
