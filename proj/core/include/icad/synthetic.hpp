#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "icad/nab.hpp"
#include "icad/series.hpp"

namespace icad {

struct SyntheticCorpusConfig {
    int file_count = 10;
    int points_per_file = 3000;
    std::uint64_t seed = 7;
};

struct SyntheticAnomaly {
    enum class Type { kSpike, kLevelShift, kVarianceBurst };
    Type type = Type::kSpike;
    std::int64_t start = 0;
    std::int64_t duration = 1;
};

struct SyntheticFile {
    std::string name; // stem only; written as data/<name>.csv
    std::vector<SeriesPoint> points;
    std::vector<SyntheticAnomaly> anomalies;
    std::vector<nab::AnomalyWindow> windows;
};

/// Seeded generator for a labeled mini-corpus: each file is a quasi-periodic
/// signal (two incommensurate sinusoids, mild trend, Gaussian noise, per-file
/// random scale) with 2 or 3 injected anomalies (spikes, level shifts,
/// variance bursts) and disjoint label windows placed after the probationary
/// prefix. Same config, same corpus.
std::vector<SyntheticFile> generate_corpus(const SyntheticCorpusConfig& config);

struct CorpusLayout {
    std::filesystem::path data_dir;
    std::filesystem::path labels_file;
};

/// Writes dir/data/<name>.csv per file plus dir/labels/combined_windows.json
/// keyed by the data-relative paths.
CorpusLayout write_corpus(std::span<const SyntheticFile> files,
                          const std::filesystem::path& dir);

} // namespace icad
