#include "icad/metric.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "icad/errors.hpp"

namespace icad {

MetricModel MetricModel::fit(const Eigen::MatrixXd& columns, double shrinkage) {
    const Eigen::Index dim = columns.rows();
    const Eigen::Index count = columns.cols();
    if (count < 2) {
        throw DegenerateReference(static_cast<std::size_t>(count));
    }
    if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) {
        throw ConfigError("shrinkage must lie in [0, 1]");
    }

    MetricModel model;
    model.shrinkage_ = shrinkage;
    model.mean_ = columns.rowwise().mean();

    Eigen::MatrixXd centered = columns.colwise() - model.mean_;
    Eigen::MatrixXd cov =
        (centered * centered.transpose()) / static_cast<double>(count);

    double scale = cov.trace() / static_cast<double>(dim);
    if (!(scale > 0.0)) {
        scale = 1.0; // zero-spread reference; absolute scale is arbitrary
    }
    Eigen::MatrixXd reg = (1.0 - shrinkage) * cov;
    reg.diagonal().array() += shrinkage * scale;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reg);
    const double eig_min = eig.eigenvalues()(0);
    const double eig_max = eig.eigenvalues()(dim - 1);
    const double tol = static_cast<double>(dim) *
                       std::numeric_limits<double>::epsilon() * std::max(eig_max, 0.0);
    if (!(eig_min > tol)) {
        throw SingularCovariance();
    }

    Eigen::LLT<Eigen::MatrixXd> llt(reg);
    if (llt.info() != Eigen::Success) {
        throw SingularCovariance();
    }
    model.whitener_ = llt.matrixL().solve(Eigen::MatrixXd::Identity(dim, dim));
    model.precision_ = model.whitener_.transpose() * model.whitener_;
    model.precision_ = 0.5 * (model.precision_ + model.precision_.transpose()).eval();
    return model;
}

MetricModel MetricModel::identity(int dim) {
    MetricModel model;
    model.mean_ = Eigen::VectorXd::Zero(dim);
    model.precision_ = Eigen::MatrixXd::Identity(dim, dim);
    model.whitener_ = Eigen::MatrixXd::Identity(dim, dim);
    model.shrinkage_ = 1.0;
    return model;
}

double MetricModel::distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    if (a.size() != precision_.rows()) {
        throw DimensionMismatch(static_cast<std::size_t>(a.size()),
                                static_cast<std::size_t>(precision_.rows()));
    }
    if (b.size() != precision_.rows()) {
        throw DimensionMismatch(static_cast<std::size_t>(b.size()),
                                static_cast<std::size_t>(precision_.rows()));
    }
    return (whitener_ * (a - b)).norm();
}

Eigen::VectorXd MetricModel::whiten(const Eigen::VectorXd& x) const {
    if (x.size() != precision_.rows()) {
        throw DimensionMismatch(static_cast<std::size_t>(x.size()),
                                static_cast<std::size_t>(precision_.rows()));
    }
    return whitener_ * x;
}

MetricModel fit_metric(std::span<const EmbeddedVector> reference, double shrinkage) {
    if (reference.size() < 2) {
        throw DegenerateReference(reference.size());
    }
    const Eigen::Index dim = reference[0].values.size();
    Eigen::MatrixXd columns(dim, static_cast<Eigen::Index>(reference.size()));
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference[i].values.size() != dim) {
            throw DimensionMismatch(static_cast<std::size_t>(reference[i].values.size()),
                                    static_cast<std::size_t>(dim));
        }
        columns.col(static_cast<Eigen::Index>(i)) = reference[i].values;
    }
    return MetricModel::fit(columns, shrinkage);
}

double mahalanobis(const MetricModel& model, const EmbeddedVector& a, const EmbeddedVector& b) {
    return model.distance(a.values, b.values);
}

double mahalanobis(const MetricModel& model, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return model.distance(a, b);
}

} // namespace icad
