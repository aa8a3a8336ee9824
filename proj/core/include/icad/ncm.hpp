#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "icad/reference_set.hpp"

namespace icad {

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
};

/// The k nearest reference vectors, ascending by distance; exact distance ties
/// break toward the lower reference index.
struct NeighborList {
    std::vector<Neighbor> entries;
    int k = 0;

    double kth_distance() const { return entries.back().distance; }
};

enum class NcmFamily { kKnn, kLof, kLoop };

struct NcmKind {
    NcmFamily family = NcmFamily::kKnn;
    int k = 27;
    double loop_lambda = 3.0;

    static NcmKind knn(int k) { return {NcmFamily::kKnn, k, 3.0}; }
    static NcmKind lof(int k) { return {NcmFamily::kLof, k, 3.0}; }
    static NcmKind loop(int k, double lambda = 3.0) { return {NcmFamily::kLoop, k, lambda}; }
};

/// Local density reported when every reach-distance is zero (coincident
/// points); a ratio of two capped densities is exactly 1.
inline constexpr double kDensityCap = 1e12;

/// `self` names x's own index when x is a member of the reference, so a point
/// never appears in its own neighbor list.
NeighborList k_nearest(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
                       std::optional<std::size_t> self = {});

/// Sum of distances to the k nearest reference vectors.
double knn_ncm(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
               std::optional<std::size_t> self = {});

/// max{dist(x, o), dist(x, k-th neighbor of x)}.
double reach_dist(const ReferenceSet& reference, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& o, int k, std::optional<std::size_t> self = {});

/// Inverse mean reach-distance over x's k neighbors (capped when degenerate).
double local_density(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
                     std::optional<std::size_t> self = {});

/// Mean ratio of neighbor densities to x's own density; ~1 is normal, >>1 anomalous.
double lof_ncm(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
               std::optional<std::size_t> self = {});

/// Probabilistic outlier score in [0, 1] from a half-Gaussian neighbor-distance
/// model, normalized against the reference and mapped through erf.
double loop_score(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
                  double loop_lambda = 3.0, std::optional<std::size_t> self = {});

// EmbeddedVector conveniences.
NeighborList k_nearest(const ReferenceSet& reference, const EmbeddedVector& x, int k);
double knn_ncm(const ReferenceSet& reference, const EmbeddedVector& x, int k);
double lof_ncm(const ReferenceSet& reference, const EmbeddedVector& x, int k);
double loop_score(const ReferenceSet& reference, const EmbeddedVector& x, int k,
                  double loop_lambda = 3.0);

/// One fitted non-conformity measure. Precomputes the per-member statistics a
/// family needs (densities for LOF, set distances and the PLOF deviation for
/// LoOP) so scoring a stream point costs one scan of the reference.
/// Produces bit-identical values to the per-call free functions above.
class NcmEvaluator {
public:
    NcmEvaluator(std::shared_ptr<const ReferenceSet> reference, NcmKind kind);
    NcmEvaluator(const ReferenceSet& reference, NcmKind kind);

    double score(const Eigen::VectorXd& x) const;
    double score(const EmbeddedVector& x) const { return score(x.values); }

    const ReferenceSet& reference() const { return *reference_; }
    const NcmKind& kind() const { return kind_; }

private:
    void precompute();

    std::shared_ptr<const ReferenceSet> reference_;
    NcmKind kind_;
    std::vector<double> member_density_; // LOF
    std::vector<double> member_pdist_;   // LoOP
    double nplof_ = 0.0;                 // LoOP
};

} // namespace icad
