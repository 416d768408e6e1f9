#include "bardina/mms.hpp"

#include "bardina/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bardina {

double Polynomial::operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative(int times) const {
    std::vector<double> c = c_;
    for (int t = 0; t < times; ++t) {
        if (c.size() <= 1) return Polynomial({0.0});
        std::vector<double> d(c.size() - 1);
        for (std::size_t n = 1; n < c.size(); ++n) d[n - 1] = c[n] * static_cast<double>(n);
        c = std::move(d);
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return Polynomial();
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t a = 0; a < c_.size(); ++a)
        for (std::size_t b = 0; b < o.c_.size(); ++b) r[a + b] += c_[a] * o.c_[b];
    return Polynomial(std::move(r));
}

double TimeFactor::value(double t) const noexcept { return a + b * std::sin(omega * t + phase); }

double TimeFactor::derivative(double t) const noexcept {
    return b * omega * std::cos(omega * t + phase);
}

ManufacturedSolution::ManufacturedSolution(std::string id, StripDomain domain,
                                           std::vector<SeparableTerm> terms)
    : id_(std::move(id)), domain_(domain), terms_(std::move(terms)) {}

namespace {

// (1 - (y/M)^2)^2 * (p0 + p1 y/M + p2 (y/M)^2) expanded in powers of y.
Polynomial clamped_profile(double m, double p0, double p1, double p2) {
    const double i2 = 1.0 / (m * m);
    const Polynomial clamp({1.0, 0.0, -2.0 * i2, 0.0, i2 * i2});
    return clamp * Polynomial({p0, p1 / m, p2 * i2});
}

}  // namespace

ManufacturedSolution ManufacturedSolution::by_id(const std::string& id, StripDomain domain) {
    const double half_pi = 0.5 * std::numbers::pi;
    const double m = domain.m;
    if (id == "zero") return ManufacturedSolution(id, domain, {});
    if (id == "poly_trig" || id == "poly_trig_steady") {
        const bool steady = id == "poly_trig_steady";
        SeparableTerm first{1, -half_pi, clamped_profile(m, 1.0, 0.3, 0.0),
                            steady ? TimeFactor{1.0, 0.0, 0.0, 0.0}
                                   : TimeFactor{1.0, 0.5, 2.0, 0.0}};
        SeparableTerm second{2, 0.3, clamped_profile(m, 0.5, 0.0, -0.2),
                             steady ? TimeFactor{0.4, 0.0, 0.0, 0.0}
                                    : TimeFactor{0.0, 0.4, 1.0, half_pi}};
        return ManufacturedSolution(id, domain, {first, second});
    }
    throw ConfigError("unknown manufactured solution '" + id + "'");
}

bool ManufacturedSolution::is_steady() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const SeparableTerm& t) { return t.time.b == 0.0; });
}

int ManufacturedSolution::max_wavenumber() const noexcept {
    int k = 0;
    for (const auto& t : terms_) k = std::max(k, t.k);
    return k;
}

double ManufacturedSolution::derivative(int a, int b, double x1, double x2, double t,
                                        bool time_derivative) const {
    const double kappa = 2.0 * std::numbers::pi / domain_.lx;
    double total = 0.0;
    for (const auto& term : terms_) {
        const double kk = term.k * kappa;
        const double x_part =
            std::pow(kk, a) * std::cos(kk * x1 + term.phase + a * 0.5 * std::numbers::pi);
        const double y_part = term.profile.derivative(b)(x2);
        const double t_part = time_derivative ? term.time.derivative(t) : term.time.value(t);
        total += t_part * x_part * y_part;
    }
    return total;
}

double ManufacturedSolution::forcing(double x1, double x2, double t, double alpha,
                                     double nu) const {
    const auto d = [&](int a, int b) { return derivative(a, b, x1, x2, t); };
    const auto dt = [&](int a, int b) { return derivative(a, b, x1, x2, t, true); };
    const double a2 = alpha * alpha;
    const double filtered_lap_vt = (dt(2, 0) + dt(0, 2)) - a2 * (dt(4, 0) + dt(2, 2));
    const double filtered_bih_v = (d(4, 0) + 2.0 * d(2, 2) + d(0, 4)) -
                                  a2 * (d(6, 0) + 2.0 * d(4, 2) + d(2, 4));
    const double bilinear = d(0, 1) * (d(3, 0) + d(1, 2)) - d(1, 0) * (d(2, 1) + d(0, 3));
    return filtered_lap_vt + bilinear - nu * filtered_bih_v;
}

Field mms_field(const ManufacturedSolution& ref, const Grid& grid, double t) {
    return Field::from_function(
        grid, [&](double x1, double x2) { return ref.value(x1, x2, t); }, true);
}

Field mms_forcing(const ManufacturedSolution& ref, double t, const Grid& grid, double alpha,
                  double nu) {
    return Field::from_function(
        grid, [&](double x1, double x2) { return ref.forcing(x1, x2, t, alpha, nu); });
}

}  // namespace bardina
