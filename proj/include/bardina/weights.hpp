#pragma once

// Polynomial weight (1 + |eps x1|^3 + |eps x2|^2)^gamma, its cutoff version
// built from the profile g(tau), weighted quadrature norms, and lattice
// certification of the derivative bounds on the weights.

#include "bardina/grid.hpp"
#include "bardina/operators.hpp"

#include <limits>
#include <string>
#include <vector>

namespace bardina {

inline constexpr double kGammaThreshold = 2.0 / 3.0;

struct WeightSpec {
    double epsilon = 0.1;
    /// Cutoff radius; +infinity selects the limit weight.
    double rho = std::numeric_limits<double>::infinity();
    double gamma = kGammaThreshold;
    /// Permits gamma > 2/3, for sharpness experiments only.
    bool allow_large_gamma = false;

    bool is_limit() const noexcept { return rho == std::numeric_limits<double>::infinity(); }
};

void validate(const WeightSpec& spec);

/// Piecewise C^1 cutoff profile; rho may be +infinity. Throws for tau < 0.
double g_profile(double tau, double rho);
/// 0: [0, 1/2], 1: [1/2, rho], 2: [rho, rho + 1], 3: beyond.
int g_branch(double tau, double rho) noexcept;

/// (1 + |eps x1|^3 + |eps x2|^2)^(1/2), the argument handed to g.
double weight_radical(double x1, double x2, double epsilon) noexcept;
double phi_limit(double x1, double x2, const WeightSpec& spec);
/// g(radical)^(2 gamma); equals phi_limit when rho is infinite.
double varphi(double x1, double x2, const WeightSpec& spec);

/// x1 coordinate used for weights: the node wrapped into [-Lx/2, Lx/2).
double centered_x1(const Grid& grid, int i) noexcept;

/// psi^2 = varphi sampled at nodes and at x2 cell midpoints.
class WeightField {
public:
    WeightField(Grid grid, WeightSpec spec);
    /// Unit weight.
    explicit WeightField(Grid grid);

    const Grid& grid() const noexcept { return nodes_.grid(); }
    const WeightSpec& spec() const noexcept { return spec_; }
    bool is_unit() const noexcept { return unit_; }
    /// varphi at nodes (psi squared).
    const Field& nodes() const noexcept { return nodes_; }
    Field psi() const;
    /// varphi at (x1_i, x2_j + dy/2), nx by (ny - 1).
    double half(int i, int j) const noexcept {
        return half_[static_cast<std::size_t>(i) * (grid().ny() - 1) + j];
    }

private:
    WeightSpec spec_;
    bool unit_;
    Field nodes_;
    std::vector<double> half_;
};

// Weighted quadrature building blocks. A null weight means psi = 1.
double sq_norm(const Field& f, const WeightField* w = nullptr);
/// ||d1 f||^2 plus x2 differences on cell midpoints; equals -(lap f, f) for
/// unit weight and f vanishing on the walls.
double sq_grad_norm(const OperatorSet& ops, const Field& f, const WeightField* w = nullptr);
/// As above with d1 f supplied by the caller.
double sq_grad_norm(const Field& f, const Field& d1f, const WeightField* w = nullptr);
/// Unit-weight versions evaluated from Fourier coefficients (Parseval).
double sq_norm(const ModalField& f);
double sq_grad_norm(const ModalField& f, const ModalField& d1f);

struct WeightedNorms {
    double psi_f = 0.0;
    double psi_d1f = 0.0;
    double psi_d1grad_f = 0.0;
    double psi_d1lap_f = 0.0;
    double psi_grad_f = 0.0;
    double psi_lap_f = 0.0;
};

WeightedNorms weighted_sobolev_norms(const Field& f, const WeightField& w,
                                     const OperatorSet& ops);

// --- certification ----------------------------------------------------------

struct MultiIndex {
    int b1 = 0;
    int b2 = 0;
    int order() const noexcept { return b1 + b2; }
    bool operator==(const MultiIndex&) const = default;
};

/// Every beta with 0 < |beta| <= 3 and beta2 <= 2.
std::vector<MultiIndex> admissible_betas();
std::string to_string(MultiIndex beta);

struct LatticeOptions {
    /// Lattice extent in x1; 0 picks a range covering the whole cutoff band.
    double x1_max = 0.0;
    int n1 = 4001;
    /// Number of x2 samples taken from the grid nodes.
    int n2 = 17;
    /// Finite-difference step in units of 1/epsilon.
    double fd_step = 1e-3;
};

struct CertificationEntry {
    MultiIndex beta;
    double c_emp = 0.0;
    double argmax_x1 = 0.0;
    double argmax_x2 = 0.0;
    std::size_t samples = 0;
};

struct CertificationReport {
    WeightSpec spec;
    double x1_max = 0.0;
    std::vector<CertificationEntry> entries;

    double aggregate() const noexcept;
    const CertificationEntry& at(MultiIndex beta) const;
    std::string to_text() const;
};

/// max |d^beta psi^2| / (eps^|beta| psi) over the lattice, per beta.
CertificationReport certify_lemma_wfuncs(const WeightSpec& spec, const Grid& grid,
                                         const std::vector<MultiIndex>& betas,
                                         const LatticeOptions& options = {});

/// Same ratio for the limit weight phi: max |d^beta phi| / (eps^|beta| phi^(1/2)).
CertificationReport certify_phi_control(const WeightSpec& spec, const Grid& grid,
                                        const std::vector<MultiIndex>& betas,
                                        const LatticeOptions& options);

struct RhoSweepEntry {
    MultiIndex beta;
    std::vector<double> c_emp;  ///< one per rho
    double spread = 0.0;        ///< max / min over rho
};

struct RhoSweep {
    std::vector<double> rhos;
    std::vector<RhoSweepEntry> entries;
    std::vector<double> aggregate;  ///< aggregate C_emp per rho

    double max_spread() const noexcept;
    std::string to_text() const;
};

RhoSweep certify_rho_sweep(WeightSpec spec, const Grid& grid, const std::vector<double>& rhos,
                           const std::vector<MultiIndex>& betas, const LatticeOptions& options = {});

}  // namespace bardina
