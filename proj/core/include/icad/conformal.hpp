#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "icad/embedding.hpp"
#include "icad/ncm.hpp"
#include "icad/reference_set.hpp"
#include "icad/series.hpp"

namespace icad {

struct IcadConfig {
    int window_length = 16;
    int training_size = 512;
    int calibration_size = 128;
    NcmKind ncm = NcmKind::knn(27);
    double shrinkage = 0.1;
    int recalibration_period = 500;

    /// Points consumed before the first scored record.
    std::size_t warmup_length() const {
        return static_cast<std::size_t>(training_size) +
               static_cast<std::size_t>(calibration_size) +
               static_cast<std::size_t>(window_length) - 1;
    }

    /// Throws ConfigError on any unusable combination.
    void validate() const;
};

/// Non-conformity scores of the current calibration set, oldest first.
struct CalibrationScores {
    std::vector<double> alphas;

    std::size_t size() const { return alphas.size(); }
};

struct DetectionRecord {
    Timestamp timestamp;
    double value = 0.0;
    double alpha = 0.0;
    double p = 1.0;
    double likelihood = 0.0;
};

struct TrainCalibSplit {
    ReferenceSet reference;
    std::vector<EmbeddedVector> calibration;
};

/// Chronological split of an embedded matrix: the first `training_size`
/// columns become the fitted reference, the trailing `calibration_size`
/// columns are returned for calibration. The matrix must hold exactly
/// training_size + calibration_size columns.
TrainCalibSplit split(const HankelMatrix& matrix, int training_size, int calibration_size,
                      double shrinkage);

CalibrationScores calibrate(const NcmEvaluator& evaluator,
                            std::span<const EmbeddedVector> calibration);
CalibrationScores calibrate(const ReferenceSet& reference,
                            std::span<const EmbeddedVector> calibration, NcmKind ncm);

/// Fraction of calibration scores at least as non-conforming as alpha_test:
/// |{i : alpha_i >= alpha_test}| / C. Small values indicate anomalies.
double p_value(double alpha_test, std::span<const double> alphas);
double p_value(double alpha_test, const CalibrationScores& scores);

/// Online conformal detector over one stream. Feed points in order; each call
/// returns the record for that point. The first warmup_length() points emit
/// likelihood 0 while the detector accumulates history; afterwards every point
/// is scored against the calibration set, its score enters the calibration
/// FIFO (the oldest retires), and the whole model is refit from the most
/// recent history every recalibration_period scored points.
class StreamDetector {
public:
    explicit StreamDetector(IcadConfig config);

    DetectionRecord push(const SeriesPoint& point);

    bool warmed_up() const { return evaluator_.has_value(); }
    const IcadConfig& config() const { return config_; }
    std::int64_t samples_seen() const { return seen_; }
    const CalibrationScores& calibration() const { return scores_; }

private:
    void rebuild();

    IcadConfig config_;
    std::deque<double> values_;
    std::optional<NcmEvaluator> evaluator_;
    CalibrationScores scores_;
    std::int64_t seen_ = 0;
    int since_refresh_ = 0;
};

/// Runs a StreamDetector over the whole series; one record per input point.
std::vector<DetectionRecord> detect_stream(std::span<const SeriesPoint> series,
                                           const IcadConfig& config);

} // namespace icad
