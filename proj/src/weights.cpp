#include "bardina/weights.hpp"

#include "bardina/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace bardina {

void validate(const WeightSpec& spec) {
    if (!(std::isfinite(spec.epsilon) && spec.epsilon > 0.0))
        throw ConfigError("epsilon must be positive and finite");
    if (!(spec.rho >= 1.0)) throw ConfigError("rho must be >= 1 (or inf)");
    if (!(std::isfinite(spec.gamma) && spec.gamma > 0.0))
        throw ConfigError("gamma must be positive and finite");
    if (spec.gamma > kGammaThreshold * (1.0 + 1e-14) && !spec.allow_large_gamma)
        throw ConfigError("gamma must satisfy gamma <= 2/3; pass --override-gamma for "
                          "sharpness experiments");
}

int g_branch(double tau, double rho) noexcept {
    if (tau <= 0.5) return 0;
    if (tau <= rho) return 1;
    if (tau <= rho + 1.0) return 2;
    return 3;
}

double g_profile(double tau, double rho) {
    if (!(tau >= 0.0)) throw ConfigError("g_profile: tau must be non-negative");
    switch (g_branch(tau, rho)) {
        case 0: return 0.25 + tau * tau;
        case 1: return tau;
        case 2: {
            const double r = rho + 1.0 - tau;
            return rho + 0.5 - 0.5 * r * r;
        }
        default: return rho + 0.5;
    }
}

double weight_radical(double x1, double x2, double epsilon) noexcept {
    const double a = std::abs(epsilon * x1);
    const double b = epsilon * x2;
    return std::sqrt(1.0 + a * a * a + b * b);
}

double phi_limit(double x1, double x2, const WeightSpec& spec) {
    const double r = weight_radical(x1, x2, spec.epsilon);
    return std::pow(r * r, spec.gamma);
}

double varphi(double x1, double x2, const WeightSpec& spec) {
    if (spec.is_limit()) return phi_limit(x1, x2, spec);
    return std::pow(g_profile(weight_radical(x1, x2, spec.epsilon), spec.rho), 2.0 * spec.gamma);
}

double centered_x1(const Grid& grid, int i) noexcept {
    const double x = grid.x1(i);
    return 2 * i < grid.nx() ? x : x - grid.domain().lx;
}

// --- WeightField -------------------------------------------------------------

WeightField::WeightField(Grid grid, WeightSpec spec)
    : spec_(spec), unit_(false), nodes_(grid) {
    validate(spec_);
    const int nx = grid.nx();
    const int ny = grid.ny();
    half_.resize(static_cast<std::size_t>(nx) * (ny - 1));
    for (int i = 0; i < nx; ++i) {
        const double x1 = centered_x1(grid, i);
        for (int j = 0; j < ny; ++j) nodes_(i, j) = varphi(x1, grid.x2(j), spec_);
        for (int j = 0; j + 1 < ny; ++j)
            half_[static_cast<std::size_t>(i) * (ny - 1) + j] =
                varphi(x1, grid.x2(j) + 0.5 * grid.dy(), spec_);
    }
}

WeightField::WeightField(Grid grid) : unit_(true), nodes_(grid) {
    for (double& v : nodes_.values()) v = 1.0;
    half_.assign(static_cast<std::size_t>(grid.nx()) * (grid.ny() - 1), 1.0);
}

Field WeightField::psi() const {
    Field out = nodes_;
    for (double& v : out.values()) v = std::sqrt(v);
    return out;
}

// --- quadrature ------------------------------------------------------------

double sq_norm(const Field& f, const WeightField* w) {
    if (w == nullptr) return inner_product(f, f);
    return inner_product(f, f, w->nodes());
}

double sq_grad_norm(const OperatorSet& ops, const Field& f, const WeightField* w) {
    return sq_grad_norm(f, ops.d1(f), w);
}

double sq_grad_norm(const Field& f, const Field& d1f, const WeightField* w) {
    const Grid& g = f.grid();
    if (w != nullptr) require_same_grid(g, w->grid(), "sq_grad_norm weight");
    double total = sq_norm(d1f, w);
    const double dy = g.dy();
    double vertical = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        double row = 0.0;
        for (int j = 0; j + 1 < g.ny(); ++j) {
            const double s = (f(i, j + 1) - f(i, j)) / dy;
            row += (w != nullptr ? w->half(i, j) : 1.0) * s * s;
        }
        vertical += row;
    }
    total += vertical * g.dx() * dy;
    return total;
}

namespace {

// sum_i |f(i)|^2 over x1 from the half spectrum of mode column k
double parseval_weight(const Grid& g, int k) {
    return (k == 0 || 2 * k == g.nx()) ? 1.0 : 2.0;
}

// std::norm goes through hypot in libstdc++
double mag2(std::complex<double> z) { return z.real() * z.real() + z.imag() * z.imag(); }

}  // namespace

double sq_norm(const ModalField& f) {
    const Grid& g = f.grid();
    const auto q = g.quad_weights();
    double total = 0.0;
    for (int k = 0; k < g.modes(); ++k) {
        double col = 0.0;
        const auto c = f.column(k);
        for (int j = 0; j < g.ny(); ++j) col += q[j] * mag2(c[j]);
        total += parseval_weight(g, k) * col;
    }
    return total * g.dx() / g.nx();
}

double sq_grad_norm(const ModalField& f, const ModalField& d1f) {
    const Grid& g = f.grid();
    require_same_grid(g, d1f.grid(), "sq_grad_norm");
    const double dy = g.dy();
    double vertical = 0.0;
    for (int k = 0; k < g.modes(); ++k) {
        double col = 0.0;
        const auto c = f.column(k);
        for (int j = 0; j + 1 < g.ny(); ++j) col += mag2(c[j + 1] - c[j]);
        vertical += parseval_weight(g, k) * col;
    }
    return sq_norm(d1f) + vertical * g.dx() / (dy * g.nx());
}

WeightedNorms weighted_sobolev_norms(const Field& f, const WeightField& w,
                                     const OperatorSet& ops) {
    const WeightField* wp = w.is_unit() ? nullptr : &w;
    const Field f1 = ops.d1(f);
    const Field lap = ops.laplacian(f);
    WeightedNorms n;
    n.psi_f = std::sqrt(sq_norm(f, wp));
    n.psi_d1f = std::sqrt(sq_norm(f1, wp));
    n.psi_d1grad_f = std::sqrt(sq_grad_norm(ops, f1, wp));
    n.psi_d1lap_f = std::sqrt(sq_norm(ops.d1(lap), wp));
    n.psi_grad_f = std::sqrt(sq_grad_norm(ops, f, wp));
    n.psi_lap_f = std::sqrt(sq_norm(lap, wp));
    return n;
}

// --- certification -----------------------------------------------------------

std::vector<MultiIndex> admissible_betas() {
    std::vector<MultiIndex> out;
    for (int order = 1; order <= 3; ++order)
        for (int b2 = 0; b2 <= std::min(order, 2); ++b2) out.push_back({order - b2, b2});
    return out;
}

std::string to_string(MultiIndex beta) {
    return "(" + std::to_string(beta.b1) + "," + std::to_string(beta.b2) + ")";
}

namespace {

// Fourth-order central stencils on offsets -3..3.
using Stencil = std::array<double, 7>;

const Stencil& stencil(int order) {
    static const std::array<Stencil, 4> table = {{
        {0, 0, 0, 1, 0, 0, 0},
        {0, 1.0 / 12, -2.0 / 3, 0, 2.0 / 3, -1.0 / 12, 0},
        {0, -1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12, 0},
        {1.0 / 8, -1.0, 13.0 / 8, 0, -13.0 / 8, 1.0, -1.0 / 8},
    }};
    return table.at(static_cast<std::size_t>(order));
}

void check_beta(MultiIndex beta) {
    if (beta.b1 < 0 || beta.b2 < 0 || beta.order() == 0 || beta.order() > 3)
        throw ConfigError("multi-index " + to_string(beta) + " outside 0 < |beta| <= 3");
    if (beta.b2 > 2)
        throw ConfigError("multi-index " + to_string(beta) + " has beta2 > 2");
}

double default_x1_max(const WeightSpec& spec) {
    const double r = spec.rho + 2.0;
    return std::cbrt(r * r - 1.0) / spec.epsilon;
}

CertificationReport certify(const WeightSpec& spec, const Grid& grid,
                            const std::vector<MultiIndex>& betas, const LatticeOptions& options,
                            bool use_limit) {
    validate(spec);
    for (const auto& b : betas) check_beta(b);
    if (options.n1 < 2 || options.n2 < 1 || !(options.fd_step > 0.0))
        throw ConfigError("lattice options must have n1 >= 2, n2 >= 1, fd_step > 0");

    const bool branchy = !use_limit && !spec.is_limit();
    double x1_max = options.x1_max;
    if (x1_max <= 0.0) {
        if (!branchy) throw ConfigError("limit-weight certification needs an explicit x1_max");
        x1_max = default_x1_max(spec);
    }
    const std::function<double(double, double)> weight =
        use_limit ? std::function<double(double, double)>(
                        [&](double a, double b) { return phi_limit(a, b, spec); })
                  : std::function<double(double, double)>(
                        [&](double a, double b) { return varphi(a, b, spec); });

    std::vector<double> x2s;
    const int ny = grid.ny();
    const int n2 = std::min(options.n2, ny);
    for (int s = 0; s < n2; ++s) {
        const int j = n2 == 1 ? ny / 2 : static_cast<int>(std::lround(double(s) * (ny - 1) / (n2 - 1)));
        x2s.push_back(grid.x2(j));
    }

    const double h = options.fd_step / spec.epsilon;
    CertificationReport report;
    report.spec = spec;
    report.x1_max = x1_max;
    for (const auto& beta : betas) {
        const Stencil& s1 = stencil(beta.b1);
        const Stencil& s2 = stencil(beta.b2);
        const double scale = std::pow(h, -beta.order()) / std::pow(spec.epsilon, beta.order());
        CertificationEntry entry{beta, 0.0, 0.0, 0.0, 0};
        for (int n = 0; n < options.n1; ++n) {
            const double x1 = x1_max * n / (options.n1 - 1);
            for (double x2 : x2s) {
                const int centre_branch =
                    branchy ? g_branch(weight_radical(x1, x2, spec.epsilon), spec.rho) : 0;
                double acc = 0.0;
                bool crosses = false;
                for (int a = 0; a < 7 && !crosses; ++a) {
                    if (s1[a] == 0.0) continue;
                    for (int b = 0; b < 7; ++b) {
                        if (s2[b] == 0.0) continue;
                        const double p1 = x1 + (a - 3) * h;
                        const double p2 = x2 + (b - 3) * h;
                        // g'' jumps at the branch junctions; the lemma concerns the
                        // piecewise-smooth derivative, so skip straddling stencils.
                        if (branchy &&
                            g_branch(weight_radical(p1, p2, spec.epsilon), spec.rho) != centre_branch) {
                            crosses = true;
                            break;
                        }
                        acc += s1[a] * s2[b] * weight(p1, p2);
                    }
                }
                if (crosses) continue;
                ++entry.samples;
                const double ratio = std::abs(acc) * scale / std::sqrt(weight(x1, x2));
                if (ratio > entry.c_emp) {
                    entry.c_emp = ratio;
                    entry.argmax_x1 = x1;
                    entry.argmax_x2 = x2;
                }
            }
        }
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace

double CertificationReport::aggregate() const noexcept {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.c_emp);
    return m;
}

const CertificationEntry& CertificationReport::at(MultiIndex beta) const {
    for (const auto& e : entries)
        if (e.beta == beta) return e;
    throw ConfigError("certification report has no entry for " + to_string(beta));
}

std::string CertificationReport::to_text() const {
    std::ostringstream os;
    os << "# epsilon=" << spec.epsilon << " rho=" << spec.rho << " gamma=" << spec.gamma
       << " x1_max=" << x1_max << "\n";
    os << "beta\tC_emp\targmax_x1\targmax_x2\tsamples\n";
    os << std::setprecision(10);
    for (const auto& e : entries)
        os << to_string(e.beta) << '\t' << e.c_emp << '\t' << e.argmax_x1 << '\t' << e.argmax_x2
           << '\t' << e.samples << '\n';
    os << "aggregate\t" << aggregate() << '\n';
    return os.str();
}

CertificationReport certify_lemma_wfuncs(const WeightSpec& spec, const Grid& grid,
                                         const std::vector<MultiIndex>& betas,
                                         const LatticeOptions& options) {
    return certify(spec, grid, betas, options, false);
}

CertificationReport certify_phi_control(const WeightSpec& spec, const Grid& grid,
                                        const std::vector<MultiIndex>& betas,
                                        const LatticeOptions& options) {
    return certify(spec, grid, betas, options, true);
}

double RhoSweep::max_spread() const noexcept {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.spread);
    return m;
}

std::string RhoSweep::to_text() const {
    std::ostringstream os;
    os << std::setprecision(8) << "beta";
    for (double r : rhos) os << "\trho=" << r;
    os << "\tspread\n";
    for (const auto& e : entries) {
        os << to_string(e.beta);
        for (double c : e.c_emp) os << '\t' << c;
        os << '\t' << e.spread << '\n';
    }
    os << "aggregate";
    for (double a : aggregate) os << '\t' << a;
    os << '\n';
    return os.str();
}

RhoSweep certify_rho_sweep(WeightSpec spec, const Grid& grid, const std::vector<double>& rhos,
                           const std::vector<MultiIndex>& betas, const LatticeOptions& options) {
    if (rhos.empty()) throw ConfigError("rho sweep needs at least one rho");
    RhoSweep sweep;
    sweep.rhos = rhos;
    for (const auto& b : betas) sweep.entries.push_back({b, {}, 0.0});
    for (double rho : rhos) {
        spec.rho = rho;
        const auto report = certify_lemma_wfuncs(spec, grid, betas, options);
        sweep.aggregate.push_back(report.aggregate());
        for (std::size_t n = 0; n < betas.size(); ++n)
            sweep.entries[n].c_emp.push_back(report.entries[n].c_emp);
    }
    for (auto& e : sweep.entries) {
        const auto [lo, hi] = std::minmax_element(e.c_emp.begin(), e.c_emp.end());
        e.spread = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
    }
    return sweep;
}

}  // namespace bardina
