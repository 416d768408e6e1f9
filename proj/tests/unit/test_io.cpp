#include "bardina/error.hpp"
#include "bardina/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

using namespace bardina;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "bardina_test_io";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << bytes;
}

}  // namespace

TEST_CASE("snapshot round trip") {
    const Grid g({3.0, 1.0}, 8, 9);
    Field v = Field::from_function(g, [](double x, double y) { return std::sin(x) * std::exp(y); });
    v(0, 0) = std::numeric_limits<double>::denorm_min();
    v(1, 1) = -0.0;
    const fs::path p = scratch("round.bstr");
    write_snapshot(p, v, 0.125, 0.5, 0.01);
    CHECK(fs::file_size(p) == 48 + 8 * g.size());

    const Snapshot s = read_snapshot(p);
    CHECK(s.header.nx == 8);
    CHECK(s.header.ny == 9);
    CHECK(s.header.time == 0.125);
    CHECK(s.header.alpha == 0.5);
    CHECK(s.header.nu == 0.01);
    const Field back = snapshot_field(s, g, true);
    CHECK(std::memcmp(back.values().data(), v.values().data(), 8 * g.size()) == 0);
    CHECK(back.clamped());
    CHECK_THROWS_AS(snapshot_field(s, Grid({3.0, 1.0}, 8, 17), true), GridMismatch);
    CHECK_THROWS_AS(write_snapshot(p, SnapshotHeader{2, 2}, {1.0}), Error);
}

TEST_CASE("corrupt snapshots are rejected") {
    const Grid g({3.0, 1.0}, 8, 9);
    const fs::path good = scratch("good.bstr");
    write_snapshot(good, Field(g), 0.0, 0.0, 1.0);
    const std::string bytes = slurp(good);
    const fs::path bad = scratch("bad.bstr");

    const auto rejects = [&](std::string b, const char* needle) {
        spit(bad, b);
        CHECK_THROWS_WITH_AS(read_snapshot(bad), doctest::Contains(needle), IoError);
    };
    std::string m = bytes;
    m[0] = 'X';
    rejects(m, "magic");
    std::string ver = bytes;
    ver[4] = 9;
    rejects(ver, "version");
    rejects(bytes.substr(0, 20), "truncated");
    rejects(bytes.substr(0, bytes.size() - 1), "truncated");
    rejects(bytes + "x", "trailing");
    std::string zero = bytes;
    std::memset(zero.data() + 8, 0, 8);
    rejects(zero, "implausible");
    CHECK_THROWS_AS(read_snapshot(scratch("missing.bstr")), IoError);
}

TEST_CASE("time series formatting") {
    const auto& cols = time_series_columns();
    CHECK(cols.size() == 12);
    CHECK(cols.front() == "t");
    CHECK(cols.back() == "cfl");
    CHECK(time_series_header() == "t,E,D,E_w,D_w,norm_l2,norm_h1h,norm_h2h_gamma,norm_h3h_gamma,"
                                  "budget_residual,weighted_budget_residual,cfl");

    DiagnosticsRecord r;
    r.t = 0.1;
    r.E = 1.0 / 3.0;
    const std::string row = time_series_row(r);
    CHECK(std::count(row.begin(), row.end(), ',') == 11);
    // 17 significant digits survive a text round trip
    std::istringstream in(row);
    std::string first, second;
    std::getline(in, first, ',');
    std::getline(in, second, ',');
    CHECK(std::stod(first) == 0.1);
    CHECK(std::stod(second) == 1.0 / 3.0);

    const fs::path p = scratch("ts.csv");
    {
        TimeSeriesWriter w(p);
        w.write(r);
        w.write(r);
    }
    const std::string text = slurp(p);
    CHECK(text == time_series_header() + "\n" + row + "\n" + row + "\n");
    CHECK_THROWS_AS(TimeSeriesWriter(fs::path("/nonexistent/dir/ts.csv")), IoError);
}
