#include "bardina/io.hpp"

#include "bardina/error.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace bardina {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {

template <class T>
void put(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::string& where) {
    T value{};
    if (!in.read(reinterpret_cast<char*>(&value), sizeof(T)))
        throw IoError("truncated snapshot header in " + where);
    return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SnapshotHeader& header,
                    const std::vector<double>& values) {
    if (values.size() != header.nx * header.ny)
        throw GridMismatch("snapshot payload does not match nx * ny");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(kSnapshotMagic, 4);
    put(out, kSnapshotVersion);
    put(out, header.nx);
    put(out, header.ny);
    put(out, header.time);
    put(out, header.alpha);
    put(out, header.nu);
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!out) throw IoError("write failed for " + path.string());
}

void write_snapshot(const std::filesystem::path& path, const Field& v, double time, double alpha,
                    double nu) {
    SnapshotHeader h{static_cast<std::uint64_t>(v.grid().nx()),
                     static_cast<std::uint64_t>(v.grid().ny()), time, alpha, nu};
    const auto vals = v.values();
    write_snapshot(path, h, std::vector<double>(vals.begin(), vals.end()));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    const std::string where = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot " + where);
    char magic[4];
    if (!in.read(magic, 4)) throw IoError("truncated snapshot header in " + where);
    if (std::memcmp(magic, kSnapshotMagic, 4) != 0) throw IoError("bad snapshot magic in " + where);
    const auto version = get<std::uint32_t>(in, where);
    if (version != kSnapshotVersion)
        throw IoError("unsupported snapshot version " + std::to_string(version) + " in " + where);
    Snapshot s;
    s.header.nx = get<std::uint64_t>(in, where);
    s.header.ny = get<std::uint64_t>(in, where);
    s.header.time = get<double>(in, where);
    s.header.alpha = get<double>(in, where);
    s.header.nu = get<double>(in, where);
    const std::uint64_t n = s.header.nx * s.header.ny;
    if (s.header.nx == 0 || s.header.ny == 0 || n / s.header.nx != s.header.ny || n > (1ULL << 32))
        throw IoError("implausible snapshot shape in " + where);
    s.values.resize(n);
    if (!in.read(reinterpret_cast<char*>(s.values.data()),
                 static_cast<std::streamsize>(n * sizeof(double))))
        throw IoError("truncated snapshot payload in " + where);
    if (in.peek() != std::char_traits<char>::eof())
        throw IoError("trailing bytes after snapshot payload in " + where);
    return s;
}

Field snapshot_field(const Snapshot& s, const Grid& grid, bool clamped) {
    if (s.header.nx != static_cast<std::uint64_t>(grid.nx()) ||
        s.header.ny != static_cast<std::uint64_t>(grid.ny()))
        throw GridMismatch("snapshot is " + std::to_string(s.header.nx) + "x" +
                           std::to_string(s.header.ny) + ", grid is " + std::to_string(grid.nx()) +
                           "x" + std::to_string(grid.ny()));
    return Field(grid, s.values, clamped);
}

const std::vector<std::string>& time_series_columns() {
    static const std::vector<std::string> cols = {
        "t",       "E",        "D",          "E_w",
        "D_w",     "norm_l2",  "norm_h1h",   "norm_h2h_gamma",
        "norm_h3h_gamma", "budget_residual", "weighted_budget_residual", "cfl"};
    return cols;
}

std::string time_series_header() {
    std::string out;
    for (const auto& c : time_series_columns()) {
        if (!out.empty()) out += ',';
        out += c;
    }
    return out;
}

std::string time_series_row(const DiagnosticsRecord& r) {
    const double vals[] = {r.t,       r.E,        r.D,           r.E_w,
                           r.D_w,     r.norm_l2,  r.norm_h1h,    r.norm_h2h_gamma,
                           r.norm_h3h_gamma, r.budget_residual, r.weighted_budget_residual, r.cfl};
    std::string out;
    char buf[32];
    for (double v : vals) {
        if (!out.empty()) out += ',';
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
    }
    return out;
}

TimeSeriesWriter::TimeSeriesWriter(const std::filesystem::path& path) : path_(path) {
    file_ = std::fopen(path.string().c_str(), "wb");
    if (file_ == nullptr) throw IoError("cannot open " + path.string() + " for writing");
    const std::string h = time_series_header() + "\n";
    if (std::fputs(h.c_str(), file_) < 0) {
        std::fclose(file_);
        file_ = nullptr;
        throw IoError("write failed for " + path_.string());
    }
}

TimeSeriesWriter::~TimeSeriesWriter() {
    if (file_ != nullptr) std::fclose(file_);
}

void TimeSeriesWriter::write(const DiagnosticsRecord& r) {
    if (file_ == nullptr) throw IoError("time series " + path_.string() + " already closed");
    const std::string row = time_series_row(r) + "\n";
    if (std::fputs(row.c_str(), file_) < 0) throw IoError("write failed for " + path_.string());
}

void TimeSeriesWriter::close() {
    if (file_ == nullptr) return;
    const bool ok = std::fflush(file_) == 0;
    std::fclose(file_);
    file_ = nullptr;
    if (!ok) throw IoError("flush failed for " + path_.string());
}

}  // namespace bardina
