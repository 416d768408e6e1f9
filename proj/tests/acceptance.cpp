// Acceptance runner: one PASS/FAIL line per criterion, followed by the
// individual checks. `bardina_acceptance --criterion N` runs a single one and
// exits nonzero if it fails; without arguments all eleven run.

#include "bardina/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace bardina;

namespace {

// g = 0, clamped trig initial data on the 8 x 2 channel.
SolverConfig decay_run() {
    SolverConfig c;
    c.domain = {8.0, 1.0};
    c.nx = 128;
    c.ny = 129;
    c.nu = 0.01;
    c.alpha = 0.5;
    c.dt = 1e-3;
    c.t_end = 5.0;
    c.scheme = Scheme::imex_cnab2;
    c.weight.gamma = kGammaThreshold;
    c.weight.epsilon = 0.1;
    c.weight.rho = 10.0;
    return c;
}

SolverConfig short_run() {
    SolverConfig c = decay_run();
    c.nx = 64;
    c.ny = 65;
    c.t_end = 1.0;
    return c;
}

SolverConfig mms_run() {
    SolverConfig c;
    c.domain = {3.0, 0.8};
    c.nx = 16;
    c.ny = 129;
    c.nu = 0.05;
    c.alpha = 0.5;
    c.t_end = 0.4;
    c.dt = 0.04;
    c.ic.kind = FieldSpec::Kind::mms;
    c.ic.reference = "poly_trig";
    c.forcing = c.ic;
    return c;
}

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<VerifyReport()> body;
};

std::vector<Criterion> criteria() {
    const Grid unit_grid({2.0 * std::numbers::pi, 1.0}, 128, 129);
    const Grid channel({8.0, 1.0}, 128, 129);
    return {
        {1, "skew-symmetry of B", 10, [=] { return verify_operator_identities(unit_grid); }},
        {2, "horizontal filter exactness", 1, [=] { return verify_filter(unit_grid, 1.0); }},
        {3, "manufactured-solution orders", 120, [] { return verify_mms(mms_run()); }},
        {4, "energy decay", 60, [] { return verify_energy_decay(decay_run()); }},
        {5, "weighted estimates", 120, [] { return verify_weighted_estimates(decay_run()); }},
        {6, "weight-function certification", 30,
         [=] {
             WeightSpec s;
             s.gamma = kGammaThreshold;
             s.epsilon = 0.1;
             return verify_weight_certification(channel, s);
         }},
        {7, "translation modulus", 60, [] { return verify_compactness(decay_run()); }},
        {8, "weighted Poincare inequalities", 30,
         [=] {
             WeightSpec s;
             s.gamma = kGammaThreshold;
             s.epsilon = 0.05;
             return verify_poincare(channel, s, 100, 1);
         }},
        {9, "alpha -> 0 consistency", 180,
         [] { return verify_alpha_sweep(short_run(), {0.4, 0.2, 0.1, 0.05}, true); }},
        {10, "Cauchy property under refinement", 300, [] { return verify_galerkin(short_run()); }},
        {11, "continuous dependence", 120, [] { return verify_dependence(short_run(), 7); }},
    };
}

bool run_one(const Criterion& c) {
    VerifyReport rep;
    try {
        rep = c.body();
    } catch (const std::exception& e) {
        std::printf("criterion %d FAIL %s: error: %s\n", c.id, c.title.c_str(), e.what());
        return false;
    }
    rep.check("runtime seconds", rep.seconds, "<=", c.budget_seconds);
    const bool ok = rep.passed();
    std::printf("criterion %d %s %s (%.1f s)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(),
                rep.seconds);
    std::fputs(rep.to_text().c_str(), stdout);
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    std::vector<std::string> summary;
    for (const auto& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        const bool ok = run_one(c);
        failed += ok ? 0 : 1;
        summary.push_back("criterion " + std::to_string(c.id) + (ok ? " PASS " : " FAIL ") + c.title);
    }
    if (only == 0) {
        std::puts("summary");
        for (const auto& s : summary) std::puts(s.c_str());
    }
    return failed == 0 ? 0 : 1;
}
