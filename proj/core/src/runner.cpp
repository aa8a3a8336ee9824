#include "icad/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "icad/errors.hpp"

namespace icad {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    return out;
}

struct CorpusRun {
    std::vector<std::filesystem::path> files;
    std::map<std::string, std::vector<nab::AnomalyWindow>> windows;
    std::vector<std::vector<DetectionRecord>> records;
    std::vector<nab::LikelihoodTrace> traces;
};

CorpusRun detect_corpus(const RunConfig& config) {
    CorpusRun run;
    run.files = expand_inputs(config.inputs);
    if (run.files.empty()) {
        throw EmptyCorpus();
    }
    if (!config.labels.empty()) {
        run.windows = nab::load_windows(config.labels);
    }
    for (const std::filesystem::path& file : run.files) {
        const std::vector<SeriesPoint> series = nab::load_series(file);
        std::vector<DetectionRecord> records = detect_stream(series, config.icad);

        nab::LikelihoodTrace trace;
        trace.file = label_key(file, config.labels, run.windows);
        trace.timestamps.reserve(series.size());
        trace.likelihoods.reserve(records.size());
        for (const SeriesPoint& p : series) {
            trace.timestamps.push_back(p.timestamp);
        }
        for (const DetectionRecord& r : records) {
            trace.likelihoods.push_back(r.likelihood);
        }
        run.traces.push_back(std::move(trace));
        run.records.push_back(std::move(records));
    }
    return run;
}

const char* class_label(nab::DetectionClass c) {
    switch (c) {
    case nab::DetectionClass::kTruePositive:
        return "TP";
    case nab::DetectionClass::kFalsePositive:
        return "FP";
    case nab::DetectionClass::kNone:
        break;
    }
    return "none";
}

} // namespace

void RunConfig::validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ConfigError("threshold must lie in [0, 1]");
    }
    icad.validate();
}

std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> inputs) {
    std::vector<std::filesystem::path> files;
    for (const std::filesystem::path& input : inputs) {
        if (std::filesystem::is_directory(input)) {
            for (const auto& entry : std::filesystem::recursive_directory_iterator(input)) {
                if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                    files.push_back(entry.path());
                }
            }
        } else {
            files.push_back(input);
        }
    }
    std::sort(files.begin(), files.end(),
              [](const std::filesystem::path& a, const std::filesystem::path& b) {
                  return a.generic_string() < b.generic_string();
              });
    return files;
}

void write_results_csv(std::span<const DetectionRecord> records, std::ostream& out) {
    out << "timestamp,value,anomaly_likelihood,p_value\n";
    for (const DetectionRecord& r : records) {
        out << r.timestamp.raw() << ',' << fixed6(r.value) << ',' << compact(r.likelihood) << ','
            << compact(r.p) << '\n';
    }
}

std::string label_key(const std::filesystem::path& input, const std::filesystem::path& labels,
                      const std::map<std::string, std::vector<nab::AnomalyWindow>>& windows) {
    if (!labels.empty()) {
        std::error_code ec;
        const std::filesystem::path root = labels.parent_path().parent_path();
        const std::filesystem::path rel = std::filesystem::relative(input, root, ec);
        if (!ec && !rel.empty()) {
            std::string key = rel.generic_string();
            if (windows.contains(key)) {
                return key;
            }
        }
    }
    const std::string name = input.filename().string();
    if (windows.contains("data/" + name)) {
        return "data/" + name;
    }
    return name;
}

std::vector<DetectOutput> run_detect(const RunConfig& config) {
    config.validate();
    const std::vector<std::filesystem::path> files = expand_inputs(config.inputs);
    if (files.empty()) {
        throw EmptyCorpus();
    }
    const std::filesystem::path out_dir = config.output.empty() ? "results" : config.output;

    std::vector<DetectOutput> outputs;
    for (const std::filesystem::path& file : files) {
        const std::vector<SeriesPoint> series = nab::load_series(file);
        const std::vector<DetectionRecord> records = detect_stream(series, config.icad);

        DetectOutput item;
        item.input = file;
        item.output = out_dir / (file.stem().string() + ".csv");
        item.points = series.size();
        for (const DetectionRecord& r : records) {
            item.max_likelihood = std::max(item.max_likelihood, r.likelihood);
        }
        std::ofstream out = open_output(item.output);
        write_results_csv(records, out);
        outputs.push_back(std::move(item));
    }
    return outputs;
}

BenchOutput run_bench(const RunConfig& config) {
    config.validate();
    const CorpusRun run = detect_corpus(config);

    BenchOutput result;
    result.summary = config.output.empty() ? "bench_summary.json" : config.output;

    nlohmann::json summary;
    summary["threshold"] = config.threshold;
    summary["files"] = run.files.size();
    for (const nab::ApplicationProfile& profile : nab::ApplicationProfile::all()) {
        ProfileScore entry;
        entry.profile = profile.name;
        entry.detail = nab::score_corpus(run.traces, run.windows, profile, config.threshold);
        entry.score = entry.detail.normalized;
        entry.null_score =
            nab::normalize_score(entry.detail.null_raw, entry.detail.null_raw,
                                 entry.detail.perfect_raw);
        summary["profiles"][profile.name] = {
            {"score", entry.score},         {"null_score", entry.null_score},
            {"raw", entry.detail.raw},      {"null_raw", entry.detail.null_raw},
            {"perfect_raw", entry.detail.perfect_raw},
            {"tp", entry.detail.tp_count},  {"fp", entry.detail.fp_count},
            {"fn", entry.detail.fn_count},
        };
        result.profiles.push_back(std::move(entry));
    }

    std::ofstream out = open_output(result.summary);
    out << summary.dump(2) << '\n';
    return result;
}

SweepOutput run_sweep(const RunConfig& config) {
    config.validate();
    const CorpusRun run = detect_corpus(config);

    SweepOutput result;
    result.summary = config.output.empty() ? "sweep_summary.json" : config.output;

    nlohmann::json summary;
    summary["files"] = run.files.size();
    for (const nab::ApplicationProfile& profile : nab::ApplicationProfile::all()) {
        ProfileSweep entry;
        entry.profile = profile.name;
        entry.best = nab::threshold_sweep(run.traces, run.windows, profile);
        summary["profiles"][profile.name] = {
            {"threshold", entry.best.threshold},
            {"score", entry.best.score},
        };
        result.profiles.push_back(std::move(entry));
    }

    std::ofstream out = open_output(result.summary);
    out << summary.dump(2) << '\n';
    return result;
}

void emit_plot_data(std::span<const DetectionRecord> records,
                    std::span<const nab::AnomalyWindow> windows, double threshold,
                    std::ostream& out) {
    std::vector<nab::Detection> detections;
    detections.reserve(records.size());
    for (const DetectionRecord& r : records) {
        detections.push_back({r.timestamp, r.likelihood > threshold});
    }
    const nab::FileScoreDetail detail =
        nab::score_file_detailed(detections, windows, nab::ApplicationProfile::standard(),
                                 nab::probationary_length(records.size()));

    out << "timestamp,value,likelihood,in_window,detection_class\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        out << records[i].timestamp.raw() << ',' << fixed6(records[i].value) << ','
            << compact(records[i].likelihood) << ',' << (detail.in_window[i] ? '1' : '0') << ','
            << class_label(detail.classes[i]) << '\n';
    }
}

std::vector<DetectOutput> run_plotdata(const RunConfig& config) {
    config.validate();
    const CorpusRun run = detect_corpus(config);
    const std::filesystem::path out_dir = config.output.empty() ? "plots" : config.output;

    std::vector<DetectOutput> outputs;
    for (std::size_t i = 0; i < run.files.size(); ++i) {
        const std::vector<DetectionRecord>& records = run.records[i];

        std::span<const nab::AnomalyWindow> windows;
        if (const auto it = run.windows.find(run.traces[i].file); it != run.windows.end()) {
            windows = it->second;
        }

        DetectOutput item;
        item.input = run.files[i];
        item.output = out_dir / (run.files[i].stem().string() + "_plot.csv");
        item.points = records.size();
        for (const DetectionRecord& r : records) {
            item.max_likelihood = std::max(item.max_likelihood, r.likelihood);
        }
        std::ofstream out = open_output(item.output);
        emit_plot_data(records, windows, config.threshold, out);
        outputs.push_back(std::move(item));
    }
    return outputs;
}

CorpusLayout run_gencorpus(const RunConfig& config) {
    const std::filesystem::path out_dir = config.output.empty() ? "corpus" : config.output;
    const std::vector<SyntheticFile> files = generate_corpus(config.corpus);
    return write_corpus(files, out_dir);
}

} // namespace icad
