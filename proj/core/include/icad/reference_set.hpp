#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "icad/embedding.hpp"
#include "icad/metric.hpp"

namespace icad {

/// The proper-training sample together with its fitted metric. Immutable once
/// built; distance scans run in the metric-whitened coordinates, where the
/// fitted Mahalanobis distance is plain Euclidean.
class ReferenceSet {
public:
    ReferenceSet(std::vector<EmbeddedVector> vectors, MetricModel metric);

    static ReferenceSet fit(std::vector<EmbeddedVector> vectors, double shrinkage);

    std::size_t size() const { return vectors_.size(); }
    int dim() const { return metric_.dim(); }
    const MetricModel& metric() const { return metric_; }
    const std::vector<EmbeddedVector>& vectors() const { return vectors_; }
    const EmbeddedVector& vector(std::size_t i) const { return vectors_[i]; }

    /// Whitened copy of vector i (column of a dim x size matrix).
    Eigen::VectorXd whitened(std::size_t i) const { return whitened_.col(static_cast<Eigen::Index>(i)); }
    const Eigen::MatrixXd& whitened_columns() const { return whitened_; }

private:
    std::vector<EmbeddedVector> vectors_;
    MetricModel metric_;
    Eigen::MatrixXd whitened_;
};

} // namespace icad
