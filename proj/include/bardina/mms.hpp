#pragma once

// Analytic reference solutions for manufactured-solution runs: finite sums of
// separable terms T(t) cos(k kappa x1 + phase) Y(x2) with polynomial Y that
// carries the clamped factor (1 - (x2/M)^2)^2.

#include "bardina/grid.hpp"

#include <string>
#include <vector>

namespace bardina {

/// Dense polynomial, ascending coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    double operator()(double x) const noexcept;
    Polynomial derivative(int times = 1) const;
    Polynomial operator*(const Polynomial& o) const;
    const std::vector<double>& coeffs() const noexcept { return c_; }

private:
    std::vector<double> c_;
};

/// a + b sin(omega t + phase)
struct TimeFactor {
    double a = 1.0;
    double b = 0.0;
    double omega = 0.0;
    double phase = 0.0;

    double value(double t) const noexcept;
    double derivative(double t) const noexcept;
};

struct SeparableTerm {
    int k = 1;  ///< x1 wavenumber index
    double phase = 0.0;
    Polynomial profile;
    TimeFactor time;
};

class ManufacturedSolution {
public:
    ManufacturedSolution(std::string id, StripDomain domain, std::vector<SeparableTerm> terms);

    /// Known ids: "zero", "poly_trig", "poly_trig_steady".
    static ManufacturedSolution by_id(const std::string& id, StripDomain domain);

    const std::string& id() const noexcept { return id_; }
    bool is_steady() const noexcept;
    int max_wavenumber() const noexcept;

    /// d1^a d2^b v*(x1, x2, t), or of d_t v* when time_derivative is set.
    double derivative(int a, int b, double x1, double x2, double t,
                      bool time_derivative = false) const;
    double value(double x1, double x2, double t) const { return derivative(0, 0, x1, x2, t); }

    /// (1 - alpha^2 d1^2) lap d_t v* + B(v*, v*) - nu (1 - alpha^2 d1^2) lap^2 v*
    double forcing(double x1, double x2, double t, double alpha, double nu) const;

private:
    std::string id_;
    StripDomain domain_;
    std::vector<SeparableTerm> terms_;
};

/// Reference solution sampled at the nodes (clamped).
Field mms_field(const ManufacturedSolution& ref, const Grid& grid, double t);
Field mms_forcing(const ManufacturedSolution& ref, double t, const Grid& grid, double alpha,
                  double nu);

}  // namespace bardina
