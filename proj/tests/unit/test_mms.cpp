#include "bardina/error.hpp"
#include "bardina/mms.hpp"
#include "oracles/symbolic_tables.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <span>

using namespace bardina;

namespace {

const StripDomain kDomain{3.0, 0.8};
constexpr double kNu = 0.05;
constexpr double kAlpha = 0.5;

double worst_relative(std::span<const oracle::SymbolicPoint> table,
                      const std::function<double(double, double)>& f) {
    double scale = 0.0;
    double worst = 0.0;
    for (const auto& p : table) scale = std::max(scale, std::abs(p.value));
    for (const auto& p : table) worst = std::max(worst, std::abs(f(p.x1, p.x2) - p.value));
    return worst / scale;
}

}  // namespace

TEST_CASE("polynomial algebra") {
    const Polynomial p({1.0, -2.0, 3.0});  // 1 - 2x + 3x^2
    CHECK(p(2.0) == 9.0);
    CHECK(p.derivative()(2.0) == 10.0);
    CHECK(p.derivative(2)(5.0) == 6.0);
    CHECK(p.derivative(3)(1.0) == 0.0);
    const Polynomial q({0.0, 1.0});
    CHECK((p * q)(2.0) == 18.0);
}

TEST_CASE("time factor") {
    const TimeFactor f{1.0, 0.5, 2.0, 0.0};
    CHECK(f.value(0.7) == doctest::Approx(1 + 0.5 * std::sin(1.4)).epsilon(1e-15));
    CHECK(f.derivative(0.7) == doctest::Approx(std::cos(1.4)).epsilon(1e-15));
}

TEST_CASE("steady forcing matches the computer-algebra table") {
    const auto ref = ManufacturedSolution::by_id("poly_trig_steady", kDomain);
    CHECK(ref.is_steady());
    const double err = worst_relative(oracle::kMmsSteadyForcing, [&](double x, double y) {
        return ref.forcing(x, y, 0.0, kAlpha, kNu);
    });
    CHECK(err < 1e-12);
}

TEST_CASE("unsteady solution and forcing at t = 0.7") {
    const auto ref = ManufacturedSolution::by_id("poly_trig", kDomain);
    CHECK_FALSE(ref.is_steady());
    CHECK(worst_relative(oracle::kMmsUnsteadyValueT07,
                         [&](double x, double y) { return ref.value(x, y, 0.7); }) < 1e-13);
    CHECK(worst_relative(oracle::kMmsUnsteadyForcingT07, [&](double x, double y) {
              return ref.forcing(x, y, 0.7, kAlpha, kNu);
          }) < 1e-12);
}

TEST_CASE("reference fields are clamped and the zero reference is zero") {
    const auto ref = ManufacturedSolution::by_id("poly_trig", kDomain);
    for (double x : {0.0, 0.4, 2.9}) {
        for (double y : {-0.8, 0.8}) {
            CHECK(std::abs(ref.value(x, y, 0.3)) < 1e-14);
            CHECK(std::abs(ref.derivative(0, 1, x, y, 0.3)) < 1e-13);
        }
    }
    // derivative consistency against central differences
    const double h = 1e-5;
    const double fd = (ref.value(1.1 + h, 0.2, 0.3) - ref.value(1.1 - h, 0.2, 0.3)) / (2 * h);
    CHECK(ref.derivative(1, 0, 1.1, 0.2, 0.3) == doctest::Approx(fd).epsilon(1e-8));
    const double ft = (ref.value(1.1, 0.2, 0.3 + h) - ref.value(1.1, 0.2, 0.3 - h)) / (2 * h);
    CHECK(ref.derivative(0, 0, 1.1, 0.2, 0.3, true) == doctest::Approx(ft).epsilon(1e-8));

    const auto zero = ManufacturedSolution::by_id("zero", kDomain);
    const Grid g(kDomain, 16, 17);
    CHECK(mms_field(zero, g, 0.5).max_abs() == 0.0);
    CHECK(mms_forcing(zero, 0.5, g, kAlpha, kNu).max_abs() == 0.0);

    const Field v = mms_field(ref, g, 0.3);
    CHECK(v.clamped());
    CHECK(v(3, 5) == ref.value(g.x1(3), g.x2(5), 0.3));
    CHECK_THROWS_AS(ManufacturedSolution::by_id("nope", kDomain), ConfigError);
}
