#include "bardina/bardina.h"

#include "bardina/config.hpp"
#include "bardina/error.hpp"
#include "bardina/io.hpp"
#include "bardina/studies.hpp"
#include "bardina/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

struct bardina_config {
    bardina::RunConfig config;
};

namespace {

thread_local std::string last_error;

bardina_status fail(bardina_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Maps the exception in flight to a status code.
bardina_status translate() {
    try {
        throw;
    } catch (const bardina::BlowUpError& e) {
        return fail(BARDINA_ERR_BLOWUP, e.what());
    } catch (const bardina::ConfigError& e) {
        return fail(BARDINA_ERR_CONFIG, e.what());
    } catch (const bardina::IoError& e) {
        return fail(BARDINA_ERR_IO, e.what());
    } catch (const bardina::GridMismatch& e) {
        return fail(BARDINA_ERR_GRID, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(BARDINA_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(BARDINA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BARDINA_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BARDINA_ERR_INTERNAL, "unknown error");
    }
}

template <class F>
bardina_status guarded(F&& f) {
    try {
        f();
        return BARDINA_OK;
    } catch (...) {
        return translate();
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string snapshot_name(long step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%08ld.bstr", step);
    return buf;
}

}  // namespace

extern "C" {

const char* bardina_version(void) { return "0.1.0"; }

const char* bardina_last_error(void) { return last_error.c_str(); }

const char* bardina_status_name(bardina_status status) {
    switch (status) {
        case BARDINA_OK: return "ok";
        case BARDINA_ERR_ARGUMENT: return "invalid argument";
        case BARDINA_ERR_CONFIG: return "configuration error";
        case BARDINA_ERR_IO: return "I/O error";
        case BARDINA_ERR_BLOWUP: return "blow-up";
        case BARDINA_ERR_GRID: return "grid mismatch";
        case BARDINA_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

bardina_status bardina_config_load(const char* path, bardina_config** out) {
    if (!path || !out) return fail(BARDINA_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new bardina_config{bardina::load_config(path)}; });
}

bardina_status bardina_config_parse(const char* text, const char* base_dir, bardina_config** out) {
    if (!text || !out) return fail(BARDINA_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new bardina_config{bardina::parse_config(text, base_dir ? base_dir : ".")};
    });
}

void bardina_config_free(bardina_config* config) { delete config; }

bardina_status bardina_config_set_override_gamma(bardina_config* config, int enabled) {
    if (!config) return fail(BARDINA_ERR_ARGUMENT, "null config");
    config->config.solver.weight.allow_large_gamma = enabled != 0;
    return BARDINA_OK;
}

bardina_status bardina_config_validate(const bardina_config* config) {
    if (!config) return fail(BARDINA_ERR_ARGUMENT, "null config");
    return guarded([&] { bardina::validate(config->config.solver); });
}

bardina_status bardina_config_get(const bardina_config* config, const char* key, double* value) {
    if (!config || !key || !value) return fail(BARDINA_ERR_ARGUMENT, "null argument");
    return guarded([&] { *value = bardina::config_number(config->config, key); });
}

bardina_status bardina_config_set(bardina_config* config, const char* key, const char* value) {
    if (!config || !key || !value) return fail(BARDINA_ERR_ARGUMENT, "null argument");
    return guarded([&] { bardina::apply_config_value(config->config, key, value); });
}

bardina_status bardina_run(const bardina_config* config, bardina_run_summary* summary,
                           bardina_message_fn on_message, void* user) {
    if (!config) return fail(BARDINA_ERR_ARGUMENT, "null config");
    return guarded([&] {
        const bardina::RunConfig& rc = config->config;
        bardina::validate(rc.solver);
        const int every = rc.solver.output_every;
        if (rc.snapshot_every % every != 0)
            throw bardina::ConfigError("output.snapshot_every must be a multiple of output.every");
        const long total = bardina::step_count(rc.solver);

        std::filesystem::create_directories(rc.output_dir);
        {
            std::ofstream cfg(rc.output_dir / "resolved.cfg");
            cfg << bardina::to_text(rc);
            if (!cfg) throw bardina::IoError("cannot write " + (rc.output_dir / "resolved.cfg").string());
        }
        bardina::TimeSeriesWriter series(rc.output_dir / "timeseries.csv");
        bardina_run_summary s{};
        const auto observer = [&](const bardina::DiagnosticsRecord& r,
                                  const bardina::SolverState& state) {
            series.write(r);
            ++s.records;
            const bool snap = state.steps == 0 || state.steps == total ||
                              (rc.snapshot_every > 0 && state.steps % rc.snapshot_every == 0);
            if (snap) {
                bardina::write_snapshot(rc.output_dir / snapshot_name(state.steps), state.v,
                                        state.t, rc.solver.alpha, rc.solver.nu);
                ++s.snapshots;
            }
        };
        const auto result = bardina::run(rc.solver, observer);
        series.close();
        for (const auto& w : result.warnings) {
            s.cfl_warning = 1;
            if (on_message) on_message(("warning: " + w).c_str(), user);
        }
        s.t_final = result.final_state.t;
        s.steps = result.final_state.steps;
        s.energy_initial = result.records.front().E;
        s.energy_final = result.records.back().E;
        if (summary) *summary = s;
    });
}

bardina_status bardina_verify(const bardina_config* config, const char* suite, char** report,
                              int* passed) {
    if (!config || !suite) return fail(BARDINA_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const auto rep = bardina::run_suite(suite, config->config);
        if (report) *report = dup_string(rep.to_text());
        if (passed) *passed = rep.passed() ? 1 : 0;
    });
}

bardina_status bardina_compare_nse(const bardina_config* config, const double* alphas,
                                   size_t count, char** report) {
    if (!config || (!alphas && count > 0) || !report)
        return fail(BARDINA_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        bardina::validate(config->config.solver);
        const auto sweep = bardina::alpha_sweep(config->config.solver,
                                                std::vector<double>(alphas, alphas + count));
        *report = dup_string(sweep.to_text());
    });
}

void bardina_string_free(char* text) { std::free(text); }

bardina_status bardina_snapshot_read_header(const char* path, bardina_snapshot_header* header) {
    if (!path || !header) return fail(BARDINA_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const auto s = bardina::read_snapshot(path);
        *header = {s.header.nx, s.header.ny, s.header.time, s.header.alpha, s.header.nu};
    });
}

bardina_status bardina_snapshot_read(const char* path, bardina_snapshot_header* header,
                                     double* values, size_t count) {
    if (!path || !values) return fail(BARDINA_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const auto s = bardina::read_snapshot(path);
        if (s.values.size() != count)
            throw bardina::GridMismatch("snapshot holds " + std::to_string(s.values.size()) +
                                        " values, buffer has " + std::to_string(count));
        std::memcpy(values, s.values.data(), count * sizeof(double));
        if (header) *header = {s.header.nx, s.header.ny, s.header.time, s.header.alpha, s.header.nu};
    });
}

bardina_status bardina_snapshot_write(const char* path, const bardina_snapshot_header* header,
                                      const double* values, size_t count) {
    if (!path || !header || (!values && count > 0))
        return fail(BARDINA_ERR_ARGUMENT, "null argument");
    if (header->nx * header->ny != count)
        return fail(BARDINA_ERR_ARGUMENT, "count must equal nx * ny");
    return guarded([&] {
        bardina::write_snapshot(path, {header->nx, header->ny, header->time, header->alpha, header->nu},
                                std::vector<double>(values, values + count));
    });
}

}  // extern "C"
