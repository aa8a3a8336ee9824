#pragma once

#include <span>

#include <Eigen/Core>

#include "icad/embedding.hpp"

namespace icad {

/// Mahalanobis distance fitted on a reference sample. The covariance is the
/// maximum-likelihood estimate shrunk linearly toward a scaled identity:
///   sigma' = (1 - shrinkage) * sigma + shrinkage * (trace(sigma)/L) * I
/// and distances are evaluated as sqrt((a-b)' * precision * (a-b)) with
/// precision = inverse(sigma').
class MetricModel {
public:
    MetricModel() = default;

    /// Fits from an L x T matrix whose columns are the reference vectors.
    static MetricModel fit(const Eigen::MatrixXd& columns, double shrinkage);

    /// Euclidean metric of the given dimension (precision = identity).
    static MetricModel identity(int dim);

    double distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

    /// Linear map W with W'W = precision; distance(a, b) == |W a - W b|.
    Eigen::VectorXd whiten(const Eigen::VectorXd& x) const;

    const Eigen::MatrixXd& precision() const { return precision_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    double shrinkage() const { return shrinkage_; }
    int dim() const { return static_cast<int>(precision_.rows()); }

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd precision_;
    Eigen::MatrixXd whitener_;
    double shrinkage_ = 0.0;
};

MetricModel fit_metric(std::span<const EmbeddedVector> reference, double shrinkage);

double mahalanobis(const MetricModel& model, const EmbeddedVector& a, const EmbeddedVector& b);
double mahalanobis(const MetricModel& model, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

} // namespace icad
