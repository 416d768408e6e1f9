#include "bardina/config.hpp"
#include "bardina/error.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace bardina;
namespace fs = std::filesystem;

TEST_CASE("defaults and key list") {
    const RunConfig c = parse_config("");
    CHECK(c.solver.nx == 64);
    CHECK(c.solver.scheme == Scheme::imex_cnab2);
    CHECK(std::isinf(c.solver.weight.rho));
    CHECK(c.snapshot_every == 0);
    CHECK(config_keys().size() == 30);
    CHECK(config_keys().front() == "lx");
    // every key is accepted by the parser
    RunConfig r;
    for (const auto& k : config_keys()) {
        if (k == "scheme") apply_config_value(r, k, "imex_euler");
        else if (k.ends_with(".kind")) apply_config_value(r, k, "zero");
        else if (k.ends_with(".reference") || k.ends_with(".path") || k == "output.dir")
            apply_config_value(r, k, "x");
        else if (k == "nonlinear" || k == "dealias") apply_config_value(r, k, "false");
        else apply_config_value(r, k, "2");
    }
    CHECK(r.solver.nx == 2);
    CHECK_FALSE(r.solver.dealias);
}

TEST_CASE("syntax") {
    const RunConfig c = parse_config(
        "# comment\n\n  nx = 32   # trailing\nny=33\r\nrho = inf\nscheme = imex_euler\nnonlinear = no\n"
        "forcing.kind = trig_clamped\nforcing.k2 = 1.5\n");
    CHECK(c.solver.nx == 32);
    CHECK(c.solver.ny == 33);
    CHECK(std::isinf(c.solver.weight.rho));
    CHECK(c.solver.scheme == Scheme::imex_euler);
    CHECK_FALSE(c.solver.nonlinear);
    CHECK(c.solver.forcing.kind == FieldSpec::Kind::trig_clamped);
    CHECK(c.solver.forcing.k2 == 1.5);
}

TEST_CASE("errors name the origin line") {
    CHECK_THROWS_WITH_AS(parse_config("nx = 8\nalpah = 1\n", ".", "run.cfg"),
                         "run.cfg:2: unknown config key 'alpah'", ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("nx = 8\nnx = 16\n", ".", "a"), doctest::Contains("a:2: duplicate key"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("nu =\n"), doctest::Contains("empty value"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("nu\n"), doctest::Contains("expected 'key = value'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("nx = 3.5\n"), doctest::Contains("expected an integer"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("nu = fast\n"), doctest::Contains("expected a number"), ConfigError);
    CHECK_THROWS_AS(parse_config("nonlinear = maybe\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scheme = rk4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = -1\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), IoError);
}

TEST_CASE("relative paths resolve against the file's directory") {
    const fs::path dir = fs::temp_directory_path() / "bardina_test_config";
    fs::create_directories(dir);
    const fs::path file = dir / "run.cfg";
    {
        std::ofstream out(file);
        out << "output.dir = out\nic.kind = file\nic.path = snaps/a.bstr\nforcing.path = /abs/g.bstr\n";
    }
    const RunConfig c = load_config(file);
    CHECK(c.output_dir == dir / "out");
    CHECK(fs::path(c.solver.ic.path) == dir / "snaps/a.bstr");
    CHECK(c.solver.forcing.path == "/abs/g.bstr");
}

TEST_CASE("numeric getters and text round trip") {
    RunConfig c = parse_config("nu = 0.0123456789012345\nrho = 7\nseed = 42\nt_end = 0.3\n");
    CHECK(config_number(c, "nu") == 0.0123456789012345);
    CHECK(config_number(c, "rho") == 7.0);
    CHECK(config_number(c, "seed") == 42.0);
    CHECK(config_number(c, "dealias") == 1.0);
    CHECK_THROWS_AS(config_number(c, "scheme"), ConfigError);
    CHECK_THROWS_AS(config_number(c, "nope"), ConfigError);

    c.solver.ic.kind = FieldSpec::Kind::mms;
    c.solver.ic.reference = "poly_trig";
    c.solver.weight.rho = std::numeric_limits<double>::infinity();
    c.output_dir = "/tmp/somewhere";
    const RunConfig back = parse_config(to_text(c));
    for (const auto& k : config_keys()) {
        double a = 0.0;
        bool numeric = true;
        try {
            a = config_number(c, k);
        } catch (const ConfigError&) {
            numeric = false;
        }
        if (numeric) CHECK_MESSAGE(config_number(back, k) == a, k);
    }
    CHECK(back.solver.ic.kind == FieldSpec::Kind::mms);
    CHECK(back.solver.ic.reference == "poly_trig");
    CHECK(back.output_dir == c.output_dir);
    CHECK(to_text(back) == to_text(c));
}
