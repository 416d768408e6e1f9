#include "bardina/error.hpp"
#include "bardina/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace bardina;
using std::numbers::pi;

TEST_CASE("grid spacing and validation") {
    const Grid g({2 * pi, 1.0}, 8, 9);
    CHECK(g.dx() == doctest::Approx(pi / 4));
    CHECK(g.dy() == doctest::Approx(0.25));
    CHECK(g.modes() == 5);
    CHECK(g.x2(0) == -1.0);
    CHECK(g.x2(8) == doctest::Approx(1.0));
    double sum = 0.0;
    for (double w : g.quad_weights()) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_WITH_AS(Grid({2 * pi, 1.0}, 7, 9), "nx must be even", ConfigError);
    CHECK_THROWS_AS(Grid({2 * pi, 1.0}, 6, 9), ConfigError);
    CHECK_THROWS_AS(Grid({2 * pi, 1.0}, 8, 8), ConfigError);
    CHECK_THROWS_AS(Grid({0.0, 1.0}, 8, 9), ConfigError);
    CHECK_THROWS_AS(Grid({1.0, -1.0}, 8, 9), ConfigError);
}

TEST_CASE("modal transforms follow the unnormalized convention") {
    const Grid g({3.0, 1.0}, 16, 9);
    const double kappa = g.wavenumber(1);
    const ModalField m = to_modal(Field::from_function(g, [&](double x, double) { return std::cos(kappa * x); }));
    for (int k = 0; k < g.modes(); ++k) {
        const double want = k == 1 ? 8.0 : 0.0;
        CHECK(std::abs(m(k, 4) - std::complex<double>(want, 0.0)) < 1e-12);
    }
    const ModalField c = to_modal(Field::from_function(g, [](double, double) { return 2.5; }));
    CHECK(std::abs(c(0, 0) - std::complex<double>(40.0, 0.0)) < 1e-12);
    CHECK(std::abs(c(3, 0)) < 1e-12);
}

TEST_CASE("round trip, Parseval and hermitian inverse") {
    const Grid g({5.0, 2.0}, 32, 17);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    Field f(g);
    for (double& x : f.values()) x = n(rng);
    const Field back = to_physical(to_modal(f));
    CHECK((back - f).max_abs() < 1e-12);

    // Parseval against direct summation, x2 column by column
    const ModalField m = to_modal(f);
    for (int j = 0; j < g.ny(); ++j) {
        double direct = 0.0;
        for (int i = 0; i < g.nx(); ++i) direct += f(i, j) * f(i, j);
        double modal = 0.0;
        for (int k = 0; k < g.modes(); ++k) {
            const double w = (k == 0 || k == g.nx() / 2) ? 1.0 : 2.0;
            modal += w * std::norm(m(k, j));
        }
        CHECK(modal / g.nx() == doctest::Approx(direct).epsilon(1e-12));
    }

    // naive inverse DFT of random coefficients with a real k = 0 column
    ModalField r(g);
    for (int k = 0; k < g.modes(); ++k)
        for (int j = 0; j < g.ny(); ++j)
            r(k, j) = (k == 0 || k == g.nx() / 2) ? std::complex<double>(n(rng), 0.0)
                                                  : std::complex<double>(n(rng), n(rng));
    const Field p = to_physical(r);
    double worst = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); j += 4) {
            double s = r(0, j).real();
            for (int k = 1; k < g.modes(); ++k) {
                const auto e = std::polar(1.0, 2 * pi * k * i / g.nx());
                s += (k == g.nx() / 2 ? 1.0 : 2.0) * (r(k, j) * e).real();
            }
            worst = std::max(worst, std::abs(s / g.nx() - p(i, j)));
        }
    }
    CHECK(worst < 1e-13);
    CHECK(to_physical(ModalField(g)).max_abs() == 0.0);
}

TEST_CASE("inner products") {
    const Grid g({4.0, 1.5}, 16, 17);
    const Field one = Field::from_function(g, [](double, double) { return 1.0; });
    CHECK(inner_product(one, one) == doctest::Approx(4.0 * 3.0).epsilon(1e-14));

    const double lx = 4.0;
    const double m = 1.5;
    const auto f = [&](double x, double y) {
        return std::sin(2 * pi * x / lx) * std::sin(pi * (y + m) / (2 * m));
    };
    double prev = 0.0;
    for (int ny : {17, 33, 65}) {
        const Grid h({lx, m}, 16, ny);
        const Field a = Field::from_function(h, f);
        const double err = std::abs(inner_product(a, a) - lx * m / 2);
        if (prev > 0.0) CHECK(prev / err > 3.5);
        prev = err;
    }

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int s = 0; s < 100; ++s) {
        Field a(g), b(g);
        for (double& x : a.values()) x = u(rng);
        for (double& x : b.values()) x = u(rng);
        CHECK(inner_product(a, b) == doctest::Approx(inner_product(b, a)).epsilon(1e-13));
    }
}

TEST_CASE("field arithmetic and grid checks") {
    const Grid g({4.0, 1.0}, 8, 9);
    const Grid other({4.0, 1.0}, 8, 17);
    Field a = Field::from_function(g, [](double x, double y) { return x + y; });
    Field b = 2.0 * a;
    b -= a;
    CHECK((b - a).max_abs() == 0.0);
    CHECK_THROWS_AS(a += Field(other), GridMismatch);
    CHECK_THROWS_AS(Field(g, std::vector<double>(3)), GridMismatch);
    a(0, 0) = std::nan("");
    CHECK_FALSE(a.all_finite());
}
