#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

// Deliberately naive re-derivations of every quantity the library computes,
// written from the definitions (explicit quadratic forms, full sorts, nested
// loops). Used as ground truth; shares no code with the library internals.
namespace oracle {

// Maximum-likelihood covariance of the columns, shrunk toward the scaled
// identity: (1 - s) * cov + s * (trace(cov)/dim) * I, with the scale floored
// at 1 when the trace vanishes.
Eigen::MatrixXd shrunk_covariance(const Eigen::MatrixXd& columns, double shrinkage);

double mahalanobis(const Eigen::MatrixXd& precision, const Eigen::VectorXd& a,
                   const Eigen::VectorXd& b);

// Every (distance, index) pair ascending, ties by index; `self` excluded.
std::vector<std::pair<double, std::size_t>> sorted_distances(
    const std::vector<Eigen::VectorXd>& reference, const Eigen::MatrixXd& precision,
    const Eigen::VectorXd& x, std::optional<std::size_t> self = {});

double knn_sum(const std::vector<Eigen::VectorXd>& reference, const Eigen::MatrixXd& precision,
               const Eigen::VectorXd& x, int k, std::optional<std::size_t> self = {});

double kth_distance(const std::vector<Eigen::VectorXd>& reference,
                    const Eigen::MatrixXd& precision, const Eigen::VectorXd& x, int k,
                    std::optional<std::size_t> self = {});

double reach_dist(const std::vector<Eigen::VectorXd>& reference, const Eigen::MatrixXd& precision,
                  const Eigen::VectorXd& x, const Eigen::VectorXd& o, int k,
                  std::optional<std::size_t> self = {});

double local_density(const std::vector<Eigen::VectorXd>& reference,
                     const Eigen::MatrixXd& precision, const Eigen::VectorXd& x, int k,
                     std::optional<std::size_t> self = {});

double lof(const std::vector<Eigen::VectorXd>& reference, const Eigen::MatrixXd& precision,
           const Eigen::VectorXd& x, int k, std::optional<std::size_t> self = {});

double loop(const std::vector<Eigen::VectorXd>& reference, const Eigen::MatrixXd& precision,
            const Eigen::VectorXd& x, int k, double lambda,
            std::optional<std::size_t> self = {});

double p_value(double alpha_test, const std::vector<double>& alphas);

} // namespace oracle
