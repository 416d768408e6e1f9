#include "bardina/diagnostics.hpp"
#include "bardina/error.hpp"
#include "bardina/solver.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace bardina;
using std::numbers::pi;

namespace {

DiagnosticsRecord rec(double t, double E, double D, double gv = 0.0, double g_sq = 0.0) {
    DiagnosticsRecord r;
    r.t = t;
    r.E = E;
    r.D = D;
    r.E_w = 2 * E;
    r.D_w = 2 * D;
    r.gv = gv;
    r.gv_w = gv;
    r.g_sq = g_sq;
    return r;
}

SolverConfig small_linear(Scheme s) {
    SolverConfig c;
    c.domain = {4.0, 1.0};
    c.nx = 16;
    c.ny = 33;
    c.nu = 0.05;
    c.alpha = 0.5;
    c.dt = 0.01;
    c.t_end = 0.2;
    c.scheme = s;
    c.nonlinear = false;
    return c;
}

}  // namespace

TEST_CASE("budget residual by hand") {
    EnergyMeasures a, b;
    a.E = 2.0;
    b.E = 1.0;
    a.D = 3.0;
    b.D = 5.0;
    a.gv = 0.25;
    b.gv = 0.5;
    // end point: (1 - 2) / 0.5 + 2 * 5 + 2 * 0.5
    CHECK(budget_residual(a, b, 0.5, BudgetQuadrature::end_point) == doctest::Approx(9.0));
    // trapezoid: -2 + 3 + 5 + 0.25 + 0.5
    CHECK(budget_residual(a, b, 0.5, BudgetQuadrature::trapezoid) == doctest::Approx(6.75));
}

TEST_CASE("energy budget report on synthetic records") {
    const std::vector<DiagnosticsRecord> r{rec(0, 1.0, 0.5), rec(0.1, 0.9, 0.5), rec(0.2, 0.95, 0.4)};
    const auto b = energy_budget(r, 0.1, 1.0, 2.0, BudgetQuadrature::trapezoid);
    REQUIRE(b.residuals.size() == 2);
    CHECK(b.residuals[0] == doctest::Approx(-1.0 + 1.0));
    CHECK(b.residuals[1] == doctest::Approx(0.5 + 0.9));
    CHECK(b.max_positive_excess == doctest::Approx(0.14));
    CHECK(b.max_energy_increase == doctest::Approx(0.05));
    CHECK(b.max_abs_residual == doctest::Approx(1.4));
    CHECK_THROWS_AS(energy_budget(r, 0.0, 1.0, 2.0, BudgetQuadrature::trapezoid), ConfigError);

    const auto w = weighted_energy_budget(r, 0.1, BudgetQuadrature::trapezoid);
    CHECK(w.E_w0 == 2.0);
    CHECK(w.sup_E_w == 2.0);
    CHECK(w.growth() == 1.0);
    CHECK(w.integral_D_w == doctest::Approx(0.1 * 1.0 + 0.1 * 0.9));
}

TEST_CASE("linear runs: Euler dissipates strictly, Crank-Nicolson closes at second order") {
    const SolverConfig c = small_linear(Scheme::imex_euler);
    const RunResult r = run(c);
    const Grid g = make_grid(c.domain, c.nx, c.ny);
    const auto b = energy_budget(r.records, c.dt, c.nu, lambda1(g), quadrature_for(c.scheme));
    CHECK(b.max_energy_increase == 0.0);
    double dmax = 0.0;
    for (const auto& x : r.records) dmax = std::max(dmax, x.D);
    for (double x : b.residuals) CHECK(x <= 1e-12 * dmax);

    // CN dissipates at the midpoint state while the budget averages D at the
    // endpoints; the gap is O(dt^2).
    double prev = 0.0;
    for (double dt : {0.01, 0.005}) {
        SolverConfig cn = small_linear(Scheme::imex_cnab2);
        cn.dt = dt;
        const auto rb = energy_budget(run(cn).records, dt, cn.nu, lambda1(g), quadrature_for(cn.scheme));
        CHECK(rb.max_energy_increase == 0.0);
        CHECK(rb.max_abs_residual < 1e-4 * dmax);
        if (prev > 0.0) CHECK(prev / rb.max_abs_residual > 3.5);
        prev = rb.max_abs_residual;
    }
}

TEST_CASE("discrete first eigenvalue") {
    const Grid g({4.0, 0.7}, 8, 17);
    const int n = g.ny() - 2;
    const double h2 = g.dy() * g.dy();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        a(j, j) = 2 / h2;
        if (j > 0) a(j, j - 1) = a(j - 1, j) = -1 / h2;
    }
    const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues()(0);
    CHECK(lambda1(g) == doctest::Approx(smallest).epsilon(1e-12));
    CHECK(lambda1_continuum(g.domain()) == doctest::Approx(std::pow(pi / 1.4, 2)).epsilon(1e-15));
    double prev = 1.0;
    for (int ny : {17, 33, 65}) {
        const Grid h({4.0, 0.7}, 8, ny);
        const double err = std::abs(lambda1(h) / lambda1_continuum(h.domain()) - 1);
        CHECK(err < prev / 3.5);
        prev = err;
    }
}

TEST_CASE("translation modulus of a linear-in-time path") {
    const Grid g({2 * pi, 1.0}, 16, 17);
    const OperatorSet ops(g);
    const Field f = Field::from_function(g, [](double x, double y) { return std::sin(x) * (1 - y * y); });
    const double dt = 0.1;
    TranslationModulus tm(ops, WeightField(g), {1, 2, 4}, dt, 0.0, ModulusNorm::H1h);
    const int steps = 20;
    for (int n = 0; n <= steps; ++n) tm.push(n * dt, (n * dt) * f);
    const auto r = tm.result();
    const double base = sq_norm(f) + sq_norm(ops.d1(f));
    for (std::size_t i = 0; i < 3; ++i) {
        const int k = r.k_steps[i];
        const double want = std::sqrt((steps + 1 - k) * dt * std::pow(k * dt, 2) * base);
        CHECK(r.modulus[i] == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(r.slope > 0.9);
    // M grows like k here, so the envelope through the largest k sits above the rest
    CHECK(r.envelope_dominates);
    CHECK_THROWS_AS(tm.push(5.0, f), ConfigError);
    CHECK_THROWS_AS(TranslationModulus(ops, WeightField(g), {0}, dt, 0.0, ModulusNorm::H1h), ConfigError);

    // the trajectory interface agrees with streaming
    std::vector<TimedField> path;
    for (int n = 0; n <= steps; ++n) path.push_back({n * dt, (n * dt) * f});
    const auto t = translation_modulus(path, {0.1, 0.2, 0.4}, ModulusNorm::H1h, WeightField(g), 0.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(t.modulus[i] == doctest::Approx(r.modulus[i]).epsilon(1e-12));
}

TEST_CASE("slope fit, random fields and Poincare") {
    CHECK(fitted_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(fitted_slope({1, 1}, {1, 2}), ConfigError);

    const Grid g({10.0, 1.0}, 16, 33);
    const OperatorSet ops(g);
    const Field v = random_clamped_field(g, 3);
    CHECK(v.clamped());
    for (int i = 0; i < g.nx(); ++i) {
        CHECK(v(i, 0) == 0.0);
        CHECK(v(i, g.ny() - 1) == 0.0);
    }
    CHECK((random_clamped_field(g, 3) - v).max_abs() == 0.0);
    CHECK((random_clamped_field(g, 4) - v).max_abs() > 0.0);
    CHECK(agmon_ratio(ops, v) > 0.0);

    const auto p = poincare_check(g, WeightSpec{0.05}, 10, 1);
    CHECK(p.samples == 10);
    CHECK(p.worst_first <= 1.0);
    CHECK(p.worst_second <= 1.0);
    CHECK(std::abs(p.lambda1 / p.lambda1_exact - 1) < 0.01);
    CHECK(p.to_text().find("lambda1") != std::string::npos);
}
