#include "icad/nab.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "icad/errors.hpp"

namespace icad::nab {

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Timestamp json_timestamp(const nlohmann::json& v, const std::string& file) {
    if (v.is_string()) {
        return Timestamp(v.get<std::string>());
    }
    if (v.is_number()) {
        return Timestamp(v.dump());
    }
    throw ParseError(file, 0, "window bound must be a string or number");
}

double half_span(const ResolvedWindow& w) {
    return static_cast<double>(std::max<std::ptrdiff_t>(w.right - w.left, 1)) / 2.0;
}

} // namespace

const ApplicationProfile& ApplicationProfile::standard() {
    static const ApplicationProfile p{"standard", 1.0, -0.11, 1.0, -1.0};
    return p;
}

const ApplicationProfile& ApplicationProfile::reward_low_fp() {
    static const ApplicationProfile p{"reward_low_fp", 1.0, -0.22, 1.0, -1.0};
    return p;
}

const ApplicationProfile& ApplicationProfile::reward_low_fn() {
    static const ApplicationProfile p{"reward_low_fn", 1.0, -0.11, 1.0, -2.0};
    return p;
}

std::span<const ApplicationProfile> ApplicationProfile::all() {
    static const std::array<ApplicationProfile, 3> profiles{standard(), reward_low_fp(),
                                                            reward_low_fn()};
    return profiles;
}

const ApplicationProfile& ApplicationProfile::by_name(std::string_view name) {
    const std::string key = lowercase(name);
    for (const ApplicationProfile& p : all()) {
        if (p.name == key) {
            return p;
        }
    }
    throw ConfigError("unknown application profile: " + std::string(name));
}

std::vector<SeriesPoint> load_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path.string(), 1, "missing header line");
    }
    strip_cr(line);
    if (line != "timestamp,value") {
        throw ParseError(path.string(), 1, "expected header \"timestamp,value\"");
    }

    std::vector<SeriesPoint> points;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(path.string(), lineno, "expected 2 comma-separated fields");
        }
        std::string ts_field = line.substr(0, comma);
        const std::string value_field = line.substr(comma + 1);
        if (ts_field.empty() || value_field.empty()) {
            throw MissingValue(path.string(), lineno);
        }
        double value = 0.0;
        const char* first = value_field.data();
        const char* last = first + value_field.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError(path.string(), lineno, "malformed value \"" + value_field + "\"");
        }
        Timestamp ts(std::move(ts_field));
        if (!points.empty() && !(points.back().timestamp < ts)) {
            throw NonMonotoneTimestamps(path.string(), lineno);
        }
        points.push_back({std::move(ts), value});
    }
    return points;
}

std::map<std::string, std::vector<AnomalyWindow>> load_windows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(path.string(), 0, "expected a top-level object of file -> windows");
    }

    std::map<std::string, std::vector<AnomalyWindow>> out;
    for (const auto& [file, entry] : doc.items()) {
        if (!entry.is_array()) {
            throw ParseError(path.string(), 0, "windows for " + file + " must be an array");
        }
        std::vector<AnomalyWindow> windows;
        windows.reserve(entry.size());
        for (const nlohmann::json& pair : entry) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError(path.string(), 0,
                                 "window for " + file + " must be a [start, end] pair");
            }
            AnomalyWindow w{json_timestamp(pair[0], path.string()),
                            json_timestamp(pair[1], path.string())};
            if (w.end < w.start) {
                throw ParseError(path.string(), 0, "window start after end for " + file);
            }
            windows.push_back(std::move(w));
        }
        std::sort(windows.begin(), windows.end(),
                  [](const AnomalyWindow& a, const AnomalyWindow& b) { return a.start < b.start; });
        for (std::size_t i = 1; i < windows.size(); ++i) {
            if (!(windows[i - 1].end < windows[i].start)) {
                throw OverlappingWindows(file);
            }
        }
        out.emplace(file, std::move(windows));
    }
    return out;
}

std::size_t probationary_length(std::size_t n) {
    return n * 3 / 20;
}

double sigmoid_weight(double rel_pos) {
    return 2.0 / (1.0 + std::exp(5.0 * rel_pos)) - 1.0;
}

std::vector<ResolvedWindow> resolve_windows(std::span<const Timestamp> timestamps,
                                            std::span<const AnomalyWindow> windows) {
    std::vector<ResolvedWindow> resolved;
    resolved.reserve(windows.size());
    for (const AnomalyWindow& w : windows) {
        const auto first = std::lower_bound(timestamps.begin(), timestamps.end(), w.start);
        const auto past = std::upper_bound(timestamps.begin(), timestamps.end(), w.end);
        ResolvedWindow r;
        if (first != past) {
            r.left = first - timestamps.begin();
            r.right = past - timestamps.begin() - 1;
            r.valid = true;
        }
        resolved.push_back(r);
    }
    return resolved;
}

FileScoreDetail score_flags(std::span<const char> flags, std::span<const ResolvedWindow> windows,
                            const ApplicationProfile& profile, std::size_t probation) {
    const auto n = static_cast<std::ptrdiff_t>(flags.size());
    FileScoreDetail detail;
    detail.classes.assign(flags.size(), DetectionClass::kNone);
    detail.in_window.assign(flags.size(), 0);

    std::vector<const ResolvedWindow*> valid;
    valid.reserve(windows.size());
    for (const ResolvedWindow& w : windows) {
        if (!w.valid) {
            continue;
        }
        valid.push_back(&w);
        for (std::ptrdiff_t i = w.left; i <= w.right && i < n; ++i) {
            detail.in_window[static_cast<std::size_t>(i)] = 1;
        }
    }

    std::vector<char> credited(valid.size(), 0);
    double raw = 0.0;
    std::size_t w = 0;
    for (auto d = static_cast<std::ptrdiff_t>(probation); d < n; ++d) {
        if (!flags[static_cast<std::size_t>(d)]) {
            continue;
        }
        while (w < valid.size() && valid[w]->right < d) {
            ++w;
        }
        if (w < valid.size() && valid[w]->left <= d) {
            if (!credited[w]) {
                credited[w] = 1;
                const double y = static_cast<double>(d - valid[w]->right) / half_span(*valid[w]);
                raw += sigmoid_weight(y) * profile.a_tp;
                ++detail.score.tp_count;
                detail.classes[static_cast<std::size_t>(d)] = DetectionClass::kTruePositive;
            }
            continue;
        }
        double weight = -1.0;
        if (w > 0) {
            const ResolvedWindow& prev = *valid[w - 1];
            weight = sigmoid_weight(static_cast<double>(d - prev.right) / half_span(prev));
        }
        raw += weight * std::abs(profile.a_fp);
        ++detail.score.fp_count;
        detail.classes[static_cast<std::size_t>(d)] = DetectionClass::kFalsePositive;
    }

    int misses = static_cast<int>(windows.size() - valid.size());
    for (const char c : credited) {
        if (!c) {
            ++misses;
        }
    }
    raw -= static_cast<double>(misses) * std::abs(profile.a_fn);

    detail.score.raw = raw;
    detail.score.fn_count = misses;
    return detail;
}

FileScoreDetail score_file_detailed(std::span<const Detection> detections,
                                    std::span<const AnomalyWindow> windows,
                                    const ApplicationProfile& profile, std::size_t probation) {
    std::vector<Timestamp> timestamps;
    timestamps.reserve(detections.size());
    std::vector<char> flags(detections.size(), 0);
    for (std::size_t i = 0; i < detections.size(); ++i) {
        if (i > 0 && detections[i].timestamp < detections[i - 1].timestamp) {
            throw UnorderedDetections();
        }
        timestamps.push_back(detections[i].timestamp);
        flags[i] = detections[i].flag ? 1 : 0;
    }
    const std::vector<ResolvedWindow> resolved = resolve_windows(timestamps, windows);
    return score_flags(flags, resolved, profile, probation);
}

FileScore score_file(std::span<const Detection> detections,
                     std::span<const AnomalyWindow> windows, const ApplicationProfile& profile,
                     std::size_t probation) {
    return score_file_detailed(detections, windows, profile, probation).score;
}

double normalize_score(double raw_sum, double null_sum, double perfect_sum) {
    if (!(perfect_sum > null_sum)) {
        throw DegenerateBaseline();
    }
    return 100.0 * ((raw_sum - null_sum) / (perfect_sum - null_sum));
}

std::vector<Detection> null_detector(std::span<const SeriesPoint> series) {
    std::vector<Detection> detections;
    detections.reserve(series.size());
    for (const SeriesPoint& p : series) {
        detections.push_back({p.timestamp, false});
    }
    return detections;
}

namespace {

struct PreparedFile {
    const LikelihoodTrace* trace = nullptr;
    std::vector<ResolvedWindow> resolved;
    std::size_t probation = 0;
    double null_raw = 0.0;
    double perfect_raw = 0.0;
};

std::vector<PreparedFile> prepare_corpus(
    std::span<const LikelihoodTrace> traces,
    const std::map<std::string, std::vector<AnomalyWindow>>& windows,
    const ApplicationProfile& profile) {
    std::vector<PreparedFile> files;
    files.reserve(traces.size());
    std::vector<char> flags;
    for (const LikelihoodTrace& trace : traces) {
        if (trace.timestamps.size() != trace.likelihoods.size()) {
            throw ShapeMismatch("trace for " + trace.file + " has " +
                                std::to_string(trace.timestamps.size()) + " timestamps but " +
                                std::to_string(trace.likelihoods.size()) + " likelihoods");
        }
        PreparedFile f;
        f.trace = &trace;
        const auto it = windows.find(trace.file);
        if (it != windows.end()) {
            f.resolved = resolve_windows(trace.timestamps, it->second);
        }
        f.probation = probationary_length(trace.timestamps.size());

        flags.assign(trace.timestamps.size(), 0);
        f.null_raw = score_flags(flags, f.resolved, profile, f.probation).score.raw;
        for (const ResolvedWindow& w : f.resolved) {
            if (w.valid) {
                flags[static_cast<std::size_t>(w.left)] = 1;
            }
        }
        f.perfect_raw = score_flags(flags, f.resolved, profile, f.probation).score.raw;
        files.push_back(std::move(f));
    }
    return files;
}

CorpusScore score_prepared(std::span<const PreparedFile> files, const ApplicationProfile& profile,
                           double threshold) {
    CorpusScore corpus;
    std::vector<char> flags;
    for (const PreparedFile& f : files) {
        const std::vector<double>& likelihoods = f.trace->likelihoods;
        flags.assign(likelihoods.size(), 0);
        for (std::size_t i = 0; i < likelihoods.size(); ++i) {
            flags[i] = likelihoods[i] > threshold ? 1 : 0;
        }
        const FileScore score = score_flags(flags, f.resolved, profile, f.probation).score;
        corpus.raw += score.raw;
        corpus.tp_count += score.tp_count;
        corpus.fp_count += score.fp_count;
        corpus.fn_count += score.fn_count;
        corpus.null_raw += f.null_raw;
        corpus.perfect_raw += f.perfect_raw;
    }
    corpus.normalized = normalize_score(corpus.raw, corpus.null_raw, corpus.perfect_raw);
    return corpus;
}

} // namespace

CorpusScore score_corpus(std::span<const LikelihoodTrace> traces,
                         const std::map<std::string, std::vector<AnomalyWindow>>& windows,
                         const ApplicationProfile& profile, double threshold) {
    const std::vector<PreparedFile> files = prepare_corpus(traces, windows, profile);
    return score_prepared(files, profile, threshold);
}

SweepResult threshold_sweep(std::span<const LikelihoodTrace> traces,
                            const std::map<std::string, std::vector<AnomalyWindow>>& windows,
                            const ApplicationProfile& profile) {
    if (traces.empty()) {
        throw EmptyCorpus();
    }
    const std::vector<PreparedFile> files = prepare_corpus(traces, windows, profile);

    std::set<double> candidates;
    for (const LikelihoodTrace& trace : traces) {
        candidates.insert(trace.likelihoods.begin(), trace.likelihoods.end());
    }
    if (candidates.empty()) {
        throw EmptyCorpus();
    }

    SweepResult best;
    bool first = true;
    for (const double threshold : candidates) {
        const CorpusScore corpus = score_prepared(files, profile, threshold);
        if (first || corpus.normalized > best.score) {
            best = {threshold, corpus.normalized};
            first = false;
        }
    }
    return best;
}

} // namespace icad::nab
