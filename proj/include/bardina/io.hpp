#pragma once

// Binary snapshots and the CSV time series.

#include "bardina/diagnostics.hpp"
#include "bardina/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <cstdio>
#include <string>
#include <vector>

namespace bardina {

inline constexpr char kSnapshotMagic[4] = {'B', 'S', 'T', 'R'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

struct SnapshotHeader {
    std::uint64_t nx = 0;
    std::uint64_t ny = 0;
    double time = 0.0;
    double alpha = 0.0;
    double nu = 0.0;
};

struct Snapshot {
    SnapshotHeader header;
    std::vector<double> values;  ///< nx * ny, x1 outer
};

void write_snapshot(const std::filesystem::path& path, const SnapshotHeader& header,
                    const std::vector<double>& values);
void write_snapshot(const std::filesystem::path& path, const Field& v, double time, double alpha,
                    double nu);
Snapshot read_snapshot(const std::filesystem::path& path);
/// Snapshot payload as a field on grid; throws GridMismatch on shape mismatch.
Field snapshot_field(const Snapshot& s, const Grid& grid, bool clamped);

const std::vector<std::string>& time_series_columns();
std::string time_series_header();
std::string time_series_row(const DiagnosticsRecord& r);

/// Appends rows as they arrive; the header goes out on construction.
class TimeSeriesWriter {
public:
    explicit TimeSeriesWriter(const std::filesystem::path& path);
    ~TimeSeriesWriter();
    TimeSeriesWriter(const TimeSeriesWriter&) = delete;
    TimeSeriesWriter& operator=(const TimeSeriesWriter&) = delete;

    void write(const DiagnosticsRecord& r);
    void close();

private:
    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
};

}  // namespace bardina
