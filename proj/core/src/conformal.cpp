#include "icad/conformal.hpp"

#include <algorithm>
#include <string>

#include "icad/errors.hpp"

namespace icad {

void IcadConfig::validate() const {
    if (window_length < 2) {
        throw ConfigError("window_length must be at least 2");
    }
    if (training_size < 1) {
        throw ConfigError("training_size must be positive");
    }
    if (calibration_size < 1) {
        throw ConfigError("calibration_size must be positive");
    }
    if (ncm.k < 1) {
        throw ConfigError("ncm k must be at least 1");
    }
    if (training_size <= ncm.k) {
        throw ConfigError("training_size must exceed ncm k (" + std::to_string(training_size) +
                          " <= " + std::to_string(ncm.k) + ")");
    }
    if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) {
        throw ConfigError("shrinkage must lie in [0, 1]");
    }
    if (recalibration_period < 1) {
        throw ConfigError("recalibration_period must be positive");
    }
    if (ncm.family == NcmFamily::kLoop && !(ncm.loop_lambda > 0.0)) {
        throw ConfigError("loop_lambda must be positive");
    }
    // Embedding the warm-up history needs 2 * L < T + C + L - 1.
    if (2 * window_length >= training_size + calibration_size + window_length - 1) {
        throw ConfigError("window_length too large for training_size + calibration_size");
    }
}

TrainCalibSplit split(const HankelMatrix& matrix, int training_size, int calibration_size,
                      double shrinkage) {
    if (training_size < 1) {
        throw ShapeMismatch("training size must be positive");
    }
    if (calibration_size < 1) {
        throw ShapeMismatch("calibration size must be positive");
    }
    const std::size_t want =
        static_cast<std::size_t>(training_size) + static_cast<std::size_t>(calibration_size);
    if (matrix.columns().size() != want) {
        throw ShapeMismatch("matrix has " + std::to_string(matrix.columns().size()) +
                            " columns, expected " + std::to_string(want));
    }
    const auto& cols = matrix.columns();
    const std::vector<EmbeddedVector> training(cols.begin(), cols.begin() + training_size);
    std::vector<EmbeddedVector> calibration(cols.begin() + training_size, cols.end());
    return {ReferenceSet::fit(training, shrinkage), std::move(calibration)};
}

CalibrationScores calibrate(const NcmEvaluator& evaluator,
                            std::span<const EmbeddedVector> calibration) {
    CalibrationScores scores;
    scores.alphas.reserve(calibration.size());
    for (const EmbeddedVector& v : calibration) {
        scores.alphas.push_back(evaluator.score(v));
    }
    return scores;
}

CalibrationScores calibrate(const ReferenceSet& reference,
                            std::span<const EmbeddedVector> calibration, NcmKind ncm) {
    return calibrate(NcmEvaluator(reference, ncm), calibration);
}

double p_value(double alpha_test, std::span<const double> alphas) {
    const auto count = std::count_if(alphas.begin(), alphas.end(),
                                     [alpha_test](double a) { return a >= alpha_test; });
    return static_cast<double>(count) / static_cast<double>(alphas.size());
}

double p_value(double alpha_test, const CalibrationScores& scores) {
    return p_value(alpha_test, std::span<const double>(scores.alphas));
}

StreamDetector::StreamDetector(IcadConfig config) : config_(config) {
    config_.validate();
}

void StreamDetector::rebuild() {
    const std::vector<double> history(values_.begin(), values_.end());
    const std::int64_t first_index = seen_ - static_cast<std::int64_t>(history.size());
    const HankelMatrix matrix = embed_values(history, config_.window_length, first_index);
    TrainCalibSplit parts =
        split(matrix, config_.training_size, config_.calibration_size, config_.shrinkage);
    evaluator_.emplace(std::make_shared<const ReferenceSet>(std::move(parts.reference)),
                       config_.ncm);
    scores_ = calibrate(*evaluator_, parts.calibration);
}

DetectionRecord StreamDetector::push(const SeriesPoint& point) {
    const std::size_t warmup = config_.warmup_length();
    values_.push_back(point.value);
    if (values_.size() > warmup) {
        values_.pop_front();
    }
    ++seen_;

    DetectionRecord record;
    record.timestamp = point.timestamp;
    record.value = point.value;

    if (static_cast<std::size_t>(seen_) <= warmup) {
        if (static_cast<std::size_t>(seen_) == warmup) {
            rebuild();
        }
        return record;
    }

    Eigen::VectorXd z(config_.window_length);
    std::copy(values_.end() - config_.window_length, values_.end(), z.data());

    record.alpha = evaluator_->score(z);
    record.p = p_value(record.alpha, scores_);
    record.likelihood = 1.0 - record.p;

    scores_.alphas.erase(scores_.alphas.begin());
    scores_.alphas.push_back(record.alpha);

    if (++since_refresh_ >= config_.recalibration_period) {
        rebuild();
        since_refresh_ = 0;
    }
    return record;
}

std::vector<DetectionRecord> detect_stream(std::span<const SeriesPoint> series,
                                           const IcadConfig& config) {
    StreamDetector detector(config);
    std::vector<DetectionRecord> records;
    records.reserve(series.size());
    for (const SeriesPoint& point : series) {
        records.push_back(detector.push(point));
    }
    return records;
}

} // namespace icad
