#include "bardina/error.hpp"
#include "bardina/solver.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstring>
#include <numbers>

using namespace bardina;
using std::numbers::pi;

namespace {

SolverConfig base() {
    SolverConfig c;
    c.domain = {2 * pi, 1.0};
    c.nx = 16;
    c.ny = 17;
    c.nu = 0.1;
    c.alpha = 0.5;
    c.dt = 0.01;
    c.t_end = 0.2;
    return c;
}

bool bit_equal(const Field& a, const Field& b) {
    return a.size() == b.size() &&
           std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

// Interior x2 matrix of op restricted to the Fourier mode sin(x1), read at x1 = pi/2.
Eigen::MatrixXd mode_matrix(const Grid& g, const std::function<Field(const Field&)>& op) {
    const int n = g.ny() - 2;
    const int i = g.nx() / 4;
    Eigen::MatrixXd m(n, n);
    for (int c = 0; c < n; ++c) {
        Field e = Field::from_function(g, [&](double x, double y) {
            return std::abs(y - g.x2(c + 1)) < 0.5 * g.dy() ? std::sin(x) : 0.0;
        }, true);
        const Field r = op(e);
        for (int j = 0; j < n; ++j) m(j, c) = r(i, j + 1);
    }
    return m;
}

}  // namespace

TEST_CASE("configuration checks") {
    SolverConfig c = base();
    c.nu = 0.0;
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("nu must be positive"), ConfigError);
    c = base();
    c.t_end = 0.105;
    CHECK_THROWS_AS(step_count(c), ConfigError);
    c = base();
    c.output_every = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK(step_count(base()) == 20);
    CHECK(parse_scheme("imex_euler") == Scheme::imex_euler);
    CHECK(to_string(Scheme::imex_cnab2) == "imex_cnab2");
    CHECK_THROWS_AS(parse_scheme("rk4"), ConfigError);
}

TEST_CASE("zero is a fixed point") {
    SolverConfig c = base();
    c.ic = FieldSpec{};
    const RunResult r = run(c);
    CHECK(r.final_state.v.max_abs() == 0.0);
    for (const auto& x : r.records) CHECK(x.E == 0.0);
}

TEST_CASE("t_end = 0 records the initial state only") {
    SolverConfig c = base();
    c.t_end = 0.0;
    const RunResult r = run(c);
    CHECK(r.records.size() == 1);
    CHECK(r.final_state.steps == 0);
    CHECK(bit_equal(r.final_state.v, BardinaSolver(c).initial_state().v));
}

TEST_CASE("runs are deterministic and alpha = 0 runs coincide with nse_run") {
    SolverConfig c = base();
    c.ic.amplitude = 3.0;
    const RunResult a = run(c);
    const RunResult b = run(c);
    CHECK(bit_equal(a.final_state.v, b.final_state.v));
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t n = 0; n < a.records.size(); ++n) CHECK(a.records[n].E == b.records[n].E);

    SolverConfig z = c;
    z.alpha = 0.0;
    CHECK(bit_equal(run(z).final_state.v, nse_run(c).final_state.v));
    CHECK_FALSE(bit_equal(run(z).final_state.v, a.final_state.v));
}

TEST_CASE("walls stay clamped") {
    SolverConfig c = base();
    c.ic.amplitude = 2.0;
    c.ic.k2 = 1.0;
    const RunResult r = run(c);
    const Field& v = r.final_state.v;
    CHECK(v.clamped());
    for (int i = 0; i < v.grid().nx(); ++i) {
        CHECK(v(i, 0) == 0.0);
        CHECK(v(i, v.grid().ny() - 1) == 0.0);
    }
}

TEST_CASE("linear single mode against the matrix exponential") {
    SolverConfig c = base();
    c.nonlinear = false;
    c.t_end = 0.4;
    const Grid g = make_grid(c.domain, c.nx, c.ny);
    const OperatorSet ops(g);
    // A_h multiplies both sides by the same factor for one mode, so it cancels.
    const Eigen::MatrixXd lap = mode_matrix(g, [&](const Field& f) { return ops.laplacian(f); });
    const Eigen::MatrixXd bih = mode_matrix(g, [&](const Field& f) { return ops.biharmonic(f); });
    const Eigen::MatrixXd gen = c.nu * lap.partialPivLu().solve(bih);
    const Field v0 = BardinaSolver(c).initial_state().v;
    Eigen::VectorXd x0(g.ny() - 2);
    for (int j = 0; j < x0.size(); ++j) x0(j) = v0(g.nx() / 4, j + 1);
    const Eigen::VectorXd exact = (c.t_end * gen).exp() * x0;

    for (Scheme s : {Scheme::imex_euler, Scheme::imex_cnab2}) {
        c.scheme = s;
        double prev = 0.0;
        double order = 0.0;
        for (double dt : {0.02, 0.01, 0.005}) {
            c.dt = dt;
            const Field v = run(c).final_state.v;
            double err = 0.0;
            for (int j = 0; j < x0.size(); ++j)
                err = std::max(err, std::abs(v(g.nx() / 4, j + 1) - exact(j)));
            if (prev > 0.0) order = std::log2(prev / err);
            prev = err;
        }
        const double want = s == Scheme::imex_euler ? 1.0 : 2.0;
        CHECK(order == doctest::Approx(want).epsilon(0.1));
    }
}

TEST_CASE("blow-up is reported with the last good time") {
    SolverConfig c = base();
    c.ic.amplitude = 1e200;
    try {
        run(c);
        FAIL("expected a blow-up");
    } catch (const BlowUpError& e) {
        CHECK(e.last_good_time() == 0.0);
        CHECK(std::string(e.what()).find("blow-up") != std::string::npos);
    }
}

TEST_CASE("CFL and weak-form residual") {
    SolverConfig c = base();
    const BardinaSolver s(c);
    const Field v = Field::from_function(s.grid(), [](double, double y) { return y * y; });
    // max |grad perp v| = |2y| = 2 at the walls
    CHECK(s.cfl(v) == doctest::Approx(c.dt * 2.0 / std::min(s.grid().dx(), s.grid().dy())).epsilon(1e-12));

    SolverState st = s.initial_state();
    const Field v0 = st.v;
    s.step(st);
    const Field h = Field::from_function(
        s.grid(), [](double x, double y) { return std::cos(x) * (1 - y * y) * (1 - y * y); }, true);
    const double r = s.weak_form_residual(v0, st.v, h, 0.0);
    CHECK(std::isfinite(r));
    CHECK_THROWS_AS(s.weak_form_residual(v0, st.v, Field(s.grid()), 0.0), ConfigError);
}
