#include "icad/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "icad/errors.hpp"

namespace icad {

namespace {

constexpr std::int64_t kMinAnomalyGap = 150;
constexpr std::int64_t kWindowPadBefore = 15;
constexpr std::int64_t kWindowPadAfter = 45;

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

std::vector<SyntheticFile> generate_corpus(const SyntheticCorpusConfig& config) {
    if (config.file_count < 1) {
        throw ConfigError("file_count must be positive");
    }
    if (config.points_per_file < 1000) {
        throw ConfigError("points_per_file must be at least 1000");
    }

    std::vector<SyntheticFile> files;
    files.reserve(static_cast<std::size_t>(config.file_count));
    const auto n = static_cast<std::int64_t>(config.points_per_file);

    for (int i = 0; i < config.file_count; ++i) {
        std::mt19937_64 rng(config.seed * 1000003ULL + static_cast<std::uint64_t>(i));
        auto real = [&rng](double lo, double hi) {
            return std::uniform_real_distribution<double>(lo, hi)(rng);
        };
        auto integer = [&rng](std::int64_t lo, std::int64_t hi) {
            return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
        };

        const double scale = std::exp(real(std::log(0.5), std::log(50.0)));
        const double period1 = real(40.0, 200.0);
        const double phase1 = real(0.0, 2.0 * std::numbers::pi);
        const double amp2 = scale * real(0.1, 0.4);
        const double period2 = real(7.0, 30.0);
        const double phase2 = real(0.0, 2.0 * std::numbers::pi);
        const double sigma = scale * std::exp(real(std::log(0.02), std::log(0.25)));
        const double slope = scale * real(-0.3, 0.3) / static_cast<double>(n);

        // Mix noise families so per-file score distributions differ: Gaussian
        // files have tight tails, Student-t files throw benign extremes.
        const bool heavy_tail = real(0.0, 1.0) < 0.4;
        const double t_dof = heavy_tail ? static_cast<double>(integer(3, 5)) : 0.0;
        const double tail_span = heavy_tail ? (t_dof <= 3.0 ? 13.0 : (t_dof <= 4.0 ? 7.5 : 6.0))
                                            : 3.5;

        const auto count = static_cast<int>(integer(2, 3));
        const auto lo = static_cast<std::int64_t>(0.30 * static_cast<double>(n));
        const auto hi = static_cast<std::int64_t>(0.93 * static_cast<double>(n));
        const std::int64_t seglen = (hi - lo) / count;

        std::vector<SyntheticAnomaly> anomalies;
        std::vector<double> spike_add(static_cast<std::size_t>(n), 0.0);
        std::vector<double> level_add(static_cast<std::size_t>(n), 0.0);
        std::vector<double> noise_mul(static_cast<std::size_t>(n), 1.0);

        for (int j = 0; j < count; ++j) {
            const std::int64_t seg_start = lo + j * seglen;
            const std::int64_t start = integer(seg_start + 16, seg_start + seglen - kMinAnomalyGap);
            const double sign = integer(0, 1) == 0 ? -1.0 : 1.0;

            SyntheticAnomaly a;
            a.start = start;
            switch ((i + j) % 3) {
            case 0: {
                a.type = SyntheticAnomaly::Type::kSpike;
                a.duration = integer(1, 2);
                const double mag = real(1.4, 2.2) * tail_span * sigma;
                for (std::int64_t t = start; t < start + a.duration; ++t) {
                    spike_add[static_cast<std::size_t>(t)] = sign * mag;
                }
                break;
            }
            case 1: {
                a.type = SyntheticAnomaly::Type::kLevelShift;
                a.duration = 1;
                const double delta = sign * real(1.0, 1.6) * tail_span * sigma;
                for (std::int64_t t = start; t < n; ++t) {
                    level_add[static_cast<std::size_t>(t)] += delta;
                }
                break;
            }
            default: {
                a.type = SyntheticAnomaly::Type::kVarianceBurst;
                a.duration = integer(40, 80);
                const double factor = real(4.0, 7.0);
                for (std::int64_t t = start; t < start + a.duration; ++t) {
                    noise_mul[static_cast<std::size_t>(t)] = factor;
                }
                break;
            }
            }
            anomalies.push_back(a);
        }

        SyntheticFile file;
        char name[32];
        std::snprintf(name, sizeof(name), "synthetic_%02d", i + 1);
        file.name = name;
        file.anomalies = anomalies;
        file.points.reserve(static_cast<std::size_t>(n));

        std::normal_distribution<double> gauss(0.0, sigma);
        std::student_t_distribution<double> student(heavy_tail ? t_dof : 3.0);
        const double t_unit = heavy_tail ? sigma * std::sqrt((t_dof - 2.0) / t_dof) : 0.0;
        auto noise = [&]() { return heavy_tail ? t_unit * student(rng) : gauss(rng); };
        for (std::int64_t t = 0; t < n; ++t) {
            const auto td = static_cast<double>(t);
            const auto idx = static_cast<std::size_t>(t);
            const double value = slope * td +
                                 scale * std::sin(2.0 * std::numbers::pi * td / period1 + phase1) +
                                 amp2 * std::sin(2.0 * std::numbers::pi * td / period2 + phase2) +
                                 noise() * noise_mul[idx] + level_add[idx] + spike_add[idx];
            file.points.push_back({Timestamp::from_index(t), value});
        }

        for (const SyntheticAnomaly& a : anomalies) {
            const std::int64_t first = std::max<std::int64_t>(a.start - kWindowPadBefore, 0);
            const std::int64_t last =
                std::min<std::int64_t>(a.start + a.duration - 1 + kWindowPadAfter, n - 1);
            file.windows.push_back({Timestamp::from_index(first), Timestamp::from_index(last)});
        }
        files.push_back(std::move(file));
    }
    return files;
}

CorpusLayout write_corpus(std::span<const SyntheticFile> files,
                          const std::filesystem::path& dir) {
    const CorpusLayout layout{dir / "data", dir / "labels" / "combined_windows.json"};
    std::filesystem::create_directories(layout.data_dir);
    std::filesystem::create_directories(layout.labels_file.parent_path());

    nlohmann::json labels = nlohmann::json::object();
    for (const SyntheticFile& file : files) {
        const std::filesystem::path csv = layout.data_dir / (file.name + ".csv");
        std::ofstream out(csv);
        if (!out) {
            throw Error("cannot write " + csv.string());
        }
        out << "timestamp,value\n";
        for (const SeriesPoint& p : file.points) {
            out << p.timestamp.raw() << ',' << format_value(p.value) << '\n';
        }
        if (!out) {
            throw Error("failed while writing " + csv.string());
        }

        nlohmann::json pairs = nlohmann::json::array();
        for (const nab::AnomalyWindow& w : file.windows) {
            pairs.push_back({w.start.raw(), w.end.raw()});
        }
        labels["data/" + file.name + ".csv"] = std::move(pairs);
    }

    std::ofstream out(layout.labels_file);
    if (!out) {
        throw Error("cannot write " + layout.labels_file.string());
    }
    out << labels.dump(2) << '\n';
    return layout;
}

} // namespace icad
