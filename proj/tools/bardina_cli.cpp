// Command-line front end. Talks to the solver only through the C API.

#include "bardina/bardina.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success, 1 verification failed, then one per error class.
int exit_code(bardina_status s) {
    switch (s) {
        case BARDINA_OK: return 0;
        case BARDINA_ERR_CONFIG:
        case BARDINA_ERR_ARGUMENT: return 2;
        case BARDINA_ERR_IO: return 3;
        case BARDINA_ERR_BLOWUP: return 4;
        default: return 5;
    }
}

int report_error(bardina_status s) {
    std::fprintf(stderr, "bardina: %s: %s\n", bardina_status_name(s), bardina_last_error());
    return exit_code(s);
}

using ConfigPtr = std::unique_ptr<bardina_config, decltype(&bardina_config_free)>;

bardina_status load(const std::string& path, bool override_gamma, ConfigPtr& out) {
    bardina_config* raw = nullptr;
    const bardina_status s = bardina_config_load(path.c_str(), &raw);
    out.reset(raw);
    if (s != BARDINA_OK) return s;
    return bardina_config_set_override_gamma(out.get(), override_gamma ? 1 : 0);
}

void print_message(const char* message, void*) { std::fprintf(stderr, "%s\n", message); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Filtered stream-function solver on a periodic channel"};
    app.require_subcommand(1);
    app.set_version_flag("--version", bardina_version());

    std::string config_path;
    bool override_gamma = false;
    std::string suite;
    std::vector<double> alphas;

    auto* run = app.add_subcommand("run", "integrate a configuration and write outputs");
    run->add_option("config", config_path, "configuration file")->required();
    run->add_flag("--override-gamma", override_gamma, "allow gamma > 2/3");

    auto* verify = app.add_subcommand("verify", "run a property suite and print a report");
    verify->add_option("config", config_path, "configuration file")->required();
    verify->add_option("--suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"operators", "weights", "poincare", "budget", "compactness", "mms",
                               "alpha_sweep", "galerkin", "dependence"}));
    verify->add_flag("--override-gamma", override_gamma, "allow gamma > 2/3");

    auto* compare = app.add_subcommand("compare-nse", "difference to the alpha = 0 run per alpha");
    compare->add_option("config", config_path, "configuration file")->required();
    compare->add_option("--alphas", alphas, "descending alpha list")->delimiter(',')->required();
    compare->add_flag("--override-gamma", override_gamma, "allow gamma > 2/3");

    CLI11_PARSE(app, argc, argv);

    ConfigPtr config(nullptr, &bardina_config_free);
    if (const auto s = load(config_path, override_gamma, config); s != BARDINA_OK)
        return report_error(s);

    if (run->parsed()) {
        bardina_run_summary summary{};
        const auto s = bardina_run(config.get(), &summary, print_message, nullptr);
        if (s != BARDINA_OK) return report_error(s);
        std::printf("t = %.17g after %lld steps, E %.17g -> %.17g, %lld records, %lld snapshots\n",
                    summary.t_final, static_cast<long long>(summary.steps), summary.energy_initial,
                    summary.energy_final, static_cast<long long>(summary.records),
                    static_cast<long long>(summary.snapshots));
        return 0;
    }
    if (verify->parsed()) {
        char* text = nullptr;
        int passed = 0;
        const auto s = bardina_verify(config.get(), suite.c_str(), &text, &passed);
        if (s != BARDINA_OK) return report_error(s);
        std::fputs(text, stdout);
        bardina_string_free(text);
        return passed ? 0 : 1;
    }
    char* text = nullptr;
    const auto s = bardina_compare_nse(config.get(), alphas.data(), alphas.size(), &text);
    if (s != BARDINA_OK) return report_error(s);
    std::fputs(text, stdout);
    bardina_string_free(text);
    return 0;
}
