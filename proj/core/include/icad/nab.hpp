#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icad/series.hpp"

namespace icad::nab {

/// Inclusive timestamp interval around a labeled anomaly.
struct AnomalyWindow {
    Timestamp start;
    Timestamp end;
};

struct ApplicationProfile {
    std::string name;
    double a_tp = 1.0;
    double a_fp = -0.11;
    double a_tn = 1.0;
    double a_fn = -1.0;

    static const ApplicationProfile& standard();
    static const ApplicationProfile& reward_low_fp();
    static const ApplicationProfile& reward_low_fn();
    static std::span<const ApplicationProfile> all();
    /// Case-insensitive; accepts "standard", "reward_low_fp", "reward_low_fn".
    static const ApplicationProfile& by_name(std::string_view name);
};

struct FileScore {
    double raw = 0.0;
    int tp_count = 0;
    int fp_count = 0;
    int fn_count = 0;
};

enum class DetectionClass { kNone, kTruePositive, kFalsePositive };

struct FileScoreDetail {
    FileScore score;
    std::vector<DetectionClass> classes; // one per input point
    std::vector<char> in_window;         // one per input point
};

/// One per series point: the point's timestamp and the thresholded decision.
struct Detection {
    Timestamp timestamp;
    bool flag = false;
};

std::vector<SeriesPoint> load_series(const std::filesystem::path& path);

/// Parses a label document mapping relative file paths to ordered
/// [start, end] pairs. Windows come back sorted and verified disjoint.
std::map<std::string, std::vector<AnomalyWindow>> load_windows(const std::filesystem::path& path);

/// Number of leading points whose detections are ignored: floor(0.15 * n).
std::size_t probationary_length(std::size_t n);

/// 2 / (1 + e^(5 * rel_pos)) - 1: +1 far before the window's right edge, 0 at
/// the edge, -1 far after.
double sigmoid_weight(double rel_pos);

/// A window mapped onto point indices: left/right are the first and last
/// indices whose timestamps fall inside the window. A window that covers no
/// points is marked invalid (it can only ever count as a miss).
struct ResolvedWindow {
    std::ptrdiff_t left = 0;
    std::ptrdiff_t right = -1;
    bool valid = false;
};

std::vector<ResolvedWindow> resolve_windows(std::span<const Timestamp> timestamps,
                                            std::span<const AnomalyWindow> windows);

/// Core scorer on point indices. flags[i] != 0 marks a detection at point i;
/// windows must be sorted by left index. The earliest detection inside a
/// window is its TP (weighted by position); later in-window detections are
/// ignored; detections outside any window are FPs weighted by distance past
/// the nearest preceding window (-1 when there is none); every window without
/// a TP costs one FN. Detections at indices below `probation` are skipped.
FileScoreDetail score_flags(std::span<const char> flags, std::span<const ResolvedWindow> windows,
                            const ApplicationProfile& profile, std::size_t probation);

FileScore score_file(std::span<const Detection> detections,
                     std::span<const AnomalyWindow> windows, const ApplicationProfile& profile,
                     std::size_t probation);
FileScoreDetail score_file_detailed(std::span<const Detection> detections,
                                    std::span<const AnomalyWindow> windows,
                                    const ApplicationProfile& profile, std::size_t probation);

/// 100 * (raw - null) / (perfect - null). Requires perfect_sum > null_sum.
double normalize_score(double raw_sum, double null_sum, double perfect_sum);

/// The detector that never fires; its normalized corpus score is 0 by
/// construction.
std::vector<Detection> null_detector(std::span<const SeriesPoint> series);

/// Per-file detector output ready for corpus scoring. `file` must match the
/// label document's key for that file.
struct LikelihoodTrace {
    std::string file;
    std::vector<Timestamp> timestamps;
    std::vector<double> likelihoods;
};

struct CorpusScore {
    double normalized = 0.0;
    double raw = 0.0;
    double null_raw = 0.0;
    double perfect_raw = 0.0;
    int tp_count = 0;
    int fp_count = 0;
    int fn_count = 0;
};

/// Thresholds every trace (detection when likelihood > threshold), scores each
/// file, and normalizes the corpus sum between the Null baseline and a perfect
/// detector that fires once at each window's first covered point.
CorpusScore score_corpus(std::span<const LikelihoodTrace> traces,
                         const std::map<std::string, std::vector<AnomalyWindow>>& windows,
                         const ApplicationProfile& profile, double threshold);

struct SweepResult {
    double threshold = 0.0;
    double score = 0.0;
};

/// Exhaustive search over every distinct likelihood value; returns the
/// threshold with the best normalized corpus score (ties go to the lowest
/// threshold).
SweepResult threshold_sweep(std::span<const LikelihoodTrace> traces,
                            const std::map<std::string, std::vector<AnomalyWindow>>& windows,
                            const ApplicationProfile& profile);

} // namespace icad::nab
