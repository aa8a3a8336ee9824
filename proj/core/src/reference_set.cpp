#include "icad/reference_set.hpp"

#include <utility>

#include "icad/errors.hpp"

namespace icad {

ReferenceSet::ReferenceSet(std::vector<EmbeddedVector> vectors, MetricModel metric)
    : vectors_(std::move(vectors)), metric_(std::move(metric)) {
    if (vectors_.empty()) {
        throw DegenerateReference(0);
    }
    const Eigen::Index dim = metric_.dim();
    whitened_.resize(dim, static_cast<Eigen::Index>(vectors_.size()));
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        if (vectors_[i].values.size() != dim) {
            throw DimensionMismatch(static_cast<std::size_t>(vectors_[i].values.size()),
                                    static_cast<std::size_t>(dim));
        }
        // Column-by-column through whiten() so a test vector that equals a
        // member bitwise whitens to the identical bits (distance exactly 0).
        whitened_.col(static_cast<Eigen::Index>(i)) = metric_.whiten(vectors_[i].values);
    }
}

ReferenceSet ReferenceSet::fit(std::vector<EmbeddedVector> vectors, double shrinkage) {
    MetricModel metric = fit_metric(vectors, shrinkage);
    return ReferenceSet(std::move(vectors), std::move(metric));
}

} // namespace icad
