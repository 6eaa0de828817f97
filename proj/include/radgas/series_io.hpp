#pragma once
#include <string>
#include <utility>
#include <vector>

#include "radgas/stepper.hpp"

namespace radgas {

// Fixed CSV schema; every float is emitted in round-trip precision.
extern const char* const kSeriesHeader;

std::string format_series_row(const DiagnosticsRecord& r);
void write_series(const std::vector<DiagnosticsRecord>& records, const std::string& path);
std::vector<DiagnosticsRecord> read_series(const std::string& path);

// (t, column) pairs for decay fitting; name is a CSV column name.
std::vector<std::pair<double, double>> series_column(const std::vector<DiagnosticsRecord>& recs,
                                                     const std::string& name);

// Checkpoint layout: ASCII line "RADGAS1 nx ny dx dy t" then raw little-endian
// f64 payload u, r, q1, q2, row-major with x fastest.
void write_checkpoint(const SimState& st, const std::string& path);

struct CheckpointData {
    int nx = 0, ny = 0;
    double dx = 0, dy = 0, t = 0;
    std::vector<double> u, r, q1, q2;
};
CheckpointData read_checkpoint(const std::string& path);

// Fields come from the file bit-exactly; the profile and the frozen t=0 scalars
// are rebuilt from the config (they are deterministic functions of it).
SimState restore_from_checkpoint(const SimConfig& cfg, const std::string& path);

void write_manifest(const std::string& path, const std::string& scenario, const SimConfig& cfg,
                    const std::vector<std::string>& outputs, const std::string& started,
                    const std::string& finished);

std::string wall_time_now();

} // namespace radgas
