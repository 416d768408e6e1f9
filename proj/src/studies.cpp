#include "bardina/studies.hpp"

#include "bardina/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace bardina {

namespace {

// Final state of a run, recording only the endpoints.
Field final_field(SolverConfig config) {
    config.output_every = static_cast<int>(std::max(1L, step_count(config)));
    return run(config).final_state.v;
}

void fill_orders(ConvergenceTable& t) {
    const std::size_t n = t.errors.size();
    t.orders.clear();
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n)
            t.orders.push_back(std::log(t.errors[i] / t.errors[i + 1]) /
                               std::log(t.h[i] / t.h[i + 1]));
        lx.push_back(std::log(t.h[i]));
        ly.push_back(std::log(t.errors[i]));
    }
    t.fitted_order = n >= 2 ? fitted_slope(lx, ly) : 0.0;
}

double h2h_sq(const OperatorSet& ops, const Field& f) {
    const Field f1 = ops.d1(f);
    return sq_grad_norm(f, f1) + sq_grad_norm(ops, f1);
}

}  // namespace

std::string ConvergenceTable::to_text() const {
    std::ostringstream os;
    os << std::setprecision(8) << label << "\terror\torder\n";
    for (std::size_t i = 0; i < errors.size(); ++i) {
        os << h[i] << '\t' << errors[i] << '\t';
        if (i > 0) os << orders[i - 1];
        os << '\n';
    }
    os << "fitted_order\t" << fitted_order << '\n';
    return os.str();
}

ConvergenceTable mms_spatial_study(SolverConfig base, const std::vector<int>& ny_list) {
    if (ny_list.size() < 2) throw ConfigError("spatial study needs at least two ny values");
    if (base.ic.kind != FieldSpec::Kind::mms || base.forcing.kind != FieldSpec::Kind::mms)
        throw ConfigError("spatial study needs mms forcing and initial data");
    const auto ref = ManufacturedSolution::by_id(base.ic.reference, base.domain);
    ConvergenceTable t;
    t.label = "dy";
    for (int ny : ny_list) {
        base.ny = ny;
        const Field v = final_field(base);
        const Field exact = mms_field(ref, v.grid(), base.t_end);
        t.h.push_back(v.grid().dy());
        t.errors.push_back(l2_norm(v - exact));
    }
    fill_orders(t);
    return t;
}

ConvergenceTable mms_temporal_study(SolverConfig base, const std::vector<double>& dt_list) {
    if (dt_list.size() < 3) throw ConfigError("temporal study needs at least three dt values");
    std::vector<Field> finals;
    for (double dt : dt_list) {
        base.dt = dt;
        finals.push_back(final_field(base));
    }
    ConvergenceTable t;
    t.label = "dt";
    for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
        t.h.push_back(dt_list[i]);
        t.errors.push_back(l2_norm(finals[i] - finals[i + 1]));
    }
    fill_orders(t);
    return t;
}

// --- alpha sweep ---------------------------------------------------------------

std::string AlphaSweep::to_text() const {
    std::ostringstream os;
    os << std::setprecision(8) << "alpha\t||v_alpha(T) - v_0(T)||\n";
    for (std::size_t i = 0; i < alphas.size(); ++i)
        os << alphas[i] << '\t' << differences[i] << '\n';
    os << "slope\t" << slope << "\nmonotone\t" << (monotone ? 1 : 0) << '\n';
    return os.str();
}

AlphaSweep alpha_sweep(SolverConfig base, const std::vector<double>& alphas) {
    if (alphas.empty()) throw ConfigError("alpha sweep needs at least one alpha");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] >= 0.0)) throw ConfigError("alpha values must be non-negative");
        if (i > 0 && !(alphas[i] < alphas[i - 1]))
            throw ConfigError("alpha list must be strictly descending");
    }
    SolverConfig nse = base;
    nse.alpha = 0.0;
    const Field v0 = final_field(nse);
    AlphaSweep out;
    std::vector<double> lx;
    std::vector<double> ly;
    for (double a : alphas) {
        base.alpha = a;
        const double d = a == 0.0 ? l2_norm(v0 - v0) : l2_norm(final_field(base) - v0);
        out.alphas.push_back(a);
        out.differences.push_back(d);
        if (a > 0.0 && d > 0.0) {
            lx.push_back(std::log(a));
            ly.push_back(std::log(d));
        }
    }
    out.slope = lx.size() >= 2 ? fitted_slope(lx, ly) : 0.0;
    out.monotone = true;
    for (std::size_t i = 1; i < out.differences.size(); ++i)
        if (!(out.differences[i] < out.differences[i - 1])) out.monotone = false;
    return out;
}

// --- Galerkin refinement -------------------------------------------------------

Field prolong(const Field& coarse, const Grid& fine) {
    const Grid& gc = coarse.grid();
    const int nxc = gc.nx();
    const int nyc = gc.ny();
    const int nxf = fine.nx();
    const int nyf = fine.ny();
    if (gc.domain().lx != fine.domain().lx || gc.domain().m != fine.domain().m)
        throw GridMismatch("prolong: grids cover different domains");
    if (nxf % nxc != 0 || (nyf - 1) % (nyc - 1) != 0)
        throw ConfigError("prolong: resolutions are not nested");
    const int ry = (nyf - 1) / (nyc - 1);

    // x1: zero-padding, dropping the coarse Nyquist column
    const Grid mid(fine.domain(), nxf, nyc);
    const ModalField mc = to_modal(coarse);
    ModalField mm(mid);
    const double scale = static_cast<double>(nxf) / nxc;
    for (int k = 0; k < nxc / 2; ++k) {
        const auto src = mc.column(k);
        auto dst = mm.column(k);
        for (int j = 0; j < nyc; ++j) dst[j] = scale * src[j];
    }
    const Field wide = to_physical(mm);

    Field out(fine, coarse.clamped());
    for (int i = 0; i < nxf; ++i) {
        for (int j = 0; j < nyf; ++j) {
            const int jc = std::min(j / ry, nyc - 2);
            const double s = static_cast<double>(j - jc * ry) / ry;
            out(i, j) = (1.0 - s) * wide(i, jc) + s * wide(i, jc + 1);
        }
    }
    return out;
}

std::string GalerkinStudy::to_text() const {
    std::ostringstream os;
    os << std::setprecision(8) << "pair\tdelta\n";
    for (std::size_t i = 0; i < deltas.size(); ++i)
        os << resolutions[i].first << 'x' << resolutions[i].second << " -> "
           << resolutions[i + 1].first << 'x' << resolutions[i + 1].second << '\t' << deltas[i]
           << '\n';
    os << "cauchy_decrease\t" << (cauchy_decrease ? 1 : 0) << '\n';
    return os.str();
}

GalerkinStudy galerkin_refinement_study(SolverConfig base,
                                        const std::vector<std::pair<int, int>>& resolutions,
                                        double record_every, double tau) {
    if (resolutions.size() < 3) throw ConfigError("refinement study needs at least three resolutions");
    for (std::size_t i = 1; i < resolutions.size(); ++i) {
        const auto [nxc, nyc] = resolutions[i - 1];
        const auto [nxf, nyf] = resolutions[i];
        if (nxf < nxc || nyf < nyc || nxf % nxc != 0 || (nyf - 1) % (nyc - 1) != 0)
            throw ConfigError("refinement study resolutions must be nested");
    }
    const double ratio = record_every / base.dt;
    const long every = std::lround(ratio);
    if (every < 1 || std::abs(ratio - every) > 1e-9 * ratio)
        throw ConfigError("record interval must be a positive multiple of dt");
    base.output_every = static_cast<int>(every);

    std::vector<std::vector<TimedField>> trajectories;
    for (const auto& [nx, ny] : resolutions) {
        base.nx = nx;
        base.ny = ny;
        std::vector<TimedField> traj;
        run(base, [&](const DiagnosticsRecord& r, const SolverState& s) {
            if (r.t + 1e-12 >= tau) traj.push_back({r.t, s.v});
        });
        trajectories.push_back(std::move(traj));
    }

    GalerkinStudy out;
    out.resolutions = resolutions;
    for (std::size_t m = 0; m + 1 < trajectories.size(); ++m) {
        const auto& coarse = trajectories[m];
        const auto& fine = trajectories[m + 1];
        if (coarse.size() != fine.size()) throw Error("refinement trajectories differ in length");
        const OperatorSet ops(fine.front().v.grid());
        std::vector<double> sq;
        for (std::size_t n = 0; n < fine.size(); ++n) {
            Field d = fine[n].v - prolong(coarse[n].v, fine[n].v.grid());
            d.set_clamped(true);
            sq.push_back(h2h_sq(ops, d));
        }
        double integral = 0.0;
        for (std::size_t n = 1; n < sq.size(); ++n)
            integral += 0.5 * (fine[n].t - fine[n - 1].t) * (sq[n] + sq[n - 1]);
        out.deltas.push_back(std::sqrt(integral));
    }
    out.cauchy_decrease = true;
    for (std::size_t i = 1; i < out.deltas.size(); ++i)
        if (!(out.deltas[i] < out.deltas[i - 1])) out.cauchy_decrease = false;
    return out;
}

// --- continuous dependence -----------------------------------------------------

std::string ContinuousDependence::to_text() const {
    std::ostringstream os;
    os << std::setprecision(8) << "delta\tC(T)\tsup_t C(t)\n";
    for (std::size_t i = 0; i < deltas.size(); ++i)
        os << deltas[i] << '\t' << constants[i] << '\t' << max_constants[i] << '\n';
    os << "spread\t" << spread << '\n';
    return os.str();
}

ContinuousDependence continuous_dependence(SolverConfig base, const std::vector<double>& deltas,
                                           std::uint64_t seed) {
    if (deltas.empty()) throw ConfigError("continuous dependence needs at least one delta");
    for (double d : deltas)
        if (!(d > 0.0)) throw ConfigError("perturbation sizes must be positive");
    const BardinaSolver solver(base);
    const OperatorSet& ops = solver.ops();
    Field p = random_clamped_field(solver.grid(), seed);
    p *= 1.0 / std::sqrt(sq_grad_norm(ops, p));
    p.set_clamped(true);

    SolverState reference = solver.initial_state();
    std::vector<SolverState> perturbed;
    for (double d : deltas) {
        Field v = reference.v;
        v.axpy(d, p);
        perturbed.push_back(solver.state_from(std::move(v)));
    }
    ContinuousDependence out;
    out.deltas = deltas;
    out.max_constants.assign(deltas.size(), 1.0);
    const auto ratio = [&](std::size_t i) {
        Field diff = perturbed[i].v - reference.v;
        diff.set_clamped(true);
        return std::sqrt(sq_grad_norm(ops, diff)) / deltas[i];
    };
    const long total = step_count(base);
    for (long n = 0; n < total; ++n) {
        solver.step(reference);
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            solver.step(perturbed[i]);
            out.max_constants[i] = std::max(out.max_constants[i], ratio(i));
        }
    }
    for (std::size_t i = 0; i < deltas.size(); ++i) out.constants.push_back(ratio(i));
    const auto [lo, hi] = std::minmax_element(out.constants.begin(), out.constants.end());
    out.spread = *hi / *lo;
    return out;
}

}  // namespace bardina
