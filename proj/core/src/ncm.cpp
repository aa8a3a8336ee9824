#include "icad/ncm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "icad/errors.hpp"

namespace icad {

namespace {

std::vector<double> distances_from(const ReferenceSet& ref,
                                   const Eigen::Ref<const Eigen::VectorXd>& wx) {
    const Eigen::MatrixXd& cols = ref.whitened_columns();
    std::vector<double> d(ref.size());
    for (std::size_t j = 0; j < ref.size(); ++j) {
        d[j] = (cols.col(static_cast<Eigen::Index>(j)) - wx).norm();
    }
    return d;
}

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
}

NeighborList select_k(const std::vector<double>& distances, int k,
                      std::optional<std::size_t> self) {
    const std::size_t n = distances.size();
    if (k < 1) {
        throw ConfigError("neighbor count k must be at least 1");
    }
    if (static_cast<std::size_t>(k) >= n) {
        throw KTooLarge(k, n);
    }
    NeighborList nl;
    nl.k = k;
    nl.entries.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (self && *self == j) {
            continue;
        }
        nl.entries.push_back({j, distances[j]});
    }
    if (static_cast<std::size_t>(k) < nl.entries.size()) {
        std::nth_element(nl.entries.begin(), nl.entries.begin() + (k - 1), nl.entries.end(),
                         neighbor_less);
        nl.entries.resize(static_cast<std::size_t>(k));
    }
    std::sort(nl.entries.begin(), nl.entries.end(), neighbor_less);
    return nl;
}

NeighborList member_neighbors(const ReferenceSet& ref, std::size_t i, int k) {
    return select_k(distances_from(ref, ref.whitened_columns().col(static_cast<Eigen::Index>(i))),
                    k, i);
}

double knn_from(const NeighborList& nl) {
    double sum = 0.0;
    for (const Neighbor& e : nl.entries) {
        sum += e.distance;
    }
    return sum;
}

double density_from(const NeighborList& nl) {
    const double kth = nl.kth_distance();
    double sum = 0.0;
    for (const Neighbor& e : nl.entries) {
        sum += std::max(e.distance, kth);
    }
    const double mean = sum / static_cast<double>(nl.k);
    return mean > 0.0 ? 1.0 / mean : kDensityCap;
}

double pdist_from(const NeighborList& nl, double lambda) {
    double sq = 0.0;
    for (const Neighbor& e : nl.entries) {
        sq += e.distance * e.distance;
    }
    return lambda * std::sqrt(sq / static_cast<double>(nl.k));
}

double member_density(const ReferenceSet& ref, std::size_t i, int k) {
    return density_from(member_neighbors(ref, i, k));
}

double member_pdist(const ReferenceSet& ref, std::size_t i, int k, double lambda) {
    return pdist_from(member_neighbors(ref, i, k), lambda);
}

double plof_from(double own_pdist, double neighbor_mean_pdist) {
    if (neighbor_mean_pdist > 0.0) {
        return own_pdist / neighbor_mean_pdist - 1.0;
    }
    return own_pdist > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

double mean_neighbor_pdist(const NeighborList& nl, const std::vector<double>& pdists) {
    double sum = 0.0;
    for (const Neighbor& e : nl.entries) {
        sum += pdists[e.index];
    }
    return sum / static_cast<double>(nl.k);
}

double aggregate_nplof(const ReferenceSet& ref, const std::vector<double>& pdists, int k,
                       double lambda) {
    double sq = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const NeighborList nl = member_neighbors(ref, i, k);
        const double pl = plof_from(pdists[i], mean_neighbor_pdist(nl, pdists));
        sq += pl * pl;
    }
    return lambda * std::sqrt(sq / static_cast<double>(ref.size()));
}

double loop_from_plof(double plof_x, double nplof) {
    if (!std::isfinite(plof_x)) {
        return 1.0;
    }
    if (nplof == 0.0) {
        return plof_x > 0.0 ? 1.0 : 0.0;
    }
    return std::max(0.0, std::erf(plof_x / (nplof * std::sqrt(2.0))));
}

double lof_from(const ReferenceSet& ref, const NeighborList& nl,
                const std::vector<double>* cached_density, int k) {
    const double dens_x = density_from(nl);
    double sum = 0.0;
    for (const Neighbor& e : nl.entries) {
        const double dens_o =
            cached_density ? (*cached_density)[e.index] : member_density(ref, e.index, k);
        sum += dens_o / dens_x;
    }
    return sum / static_cast<double>(k);
}

} // namespace

NeighborList k_nearest(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
                       std::optional<std::size_t> self) {
    return select_k(distances_from(reference, reference.metric().whiten(x)), k, self);
}

double knn_ncm(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
               std::optional<std::size_t> self) {
    return knn_from(k_nearest(reference, x, k, self));
}

double reach_dist(const ReferenceSet& reference, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& o, int k, std::optional<std::size_t> self) {
    const Eigen::VectorXd wx = reference.metric().whiten(x);
    const Eigen::VectorXd wo = reference.metric().whiten(o);
    const NeighborList nl = select_k(distances_from(reference, wx), k, self);
    return std::max((wx - wo).norm(), nl.kth_distance());
}

double local_density(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
                     std::optional<std::size_t> self) {
    return density_from(k_nearest(reference, x, k, self));
}

double lof_ncm(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
               std::optional<std::size_t> self) {
    const NeighborList nl = k_nearest(reference, x, k, self);
    return lof_from(reference, nl, nullptr, k);
}

double loop_score(const ReferenceSet& reference, const Eigen::VectorXd& x, int k,
                  double loop_lambda, std::optional<std::size_t> self) {
    if (!(loop_lambda > 0.0)) {
        throw ConfigError("loop_lambda must be positive");
    }
    std::vector<double> pdists(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        pdists[i] = member_pdist(reference, i, k, loop_lambda);
    }
    const double nplof = aggregate_nplof(reference, pdists, k, loop_lambda);

    const NeighborList nl = k_nearest(reference, x, k, self);
    const double plof_x = plof_from(pdist_from(nl, loop_lambda), mean_neighbor_pdist(nl, pdists));
    return loop_from_plof(plof_x, nplof);
}

NeighborList k_nearest(const ReferenceSet& reference, const EmbeddedVector& x, int k) {
    return k_nearest(reference, x.values, k);
}
double knn_ncm(const ReferenceSet& reference, const EmbeddedVector& x, int k) {
    return knn_ncm(reference, x.values, k);
}
double lof_ncm(const ReferenceSet& reference, const EmbeddedVector& x, int k) {
    return lof_ncm(reference, x.values, k);
}
double loop_score(const ReferenceSet& reference, const EmbeddedVector& x, int k,
                  double loop_lambda) {
    return loop_score(reference, x.values, k, loop_lambda);
}

NcmEvaluator::NcmEvaluator(std::shared_ptr<const ReferenceSet> reference, NcmKind kind)
    : reference_(std::move(reference)), kind_(kind) {
    if (kind_.k < 1) {
        throw ConfigError("neighbor count k must be at least 1");
    }
    if (static_cast<std::size_t>(kind_.k) >= reference_->size()) {
        throw KTooLarge(kind_.k, reference_->size());
    }
    if (kind_.family == NcmFamily::kLoop && !(kind_.loop_lambda > 0.0)) {
        throw ConfigError("loop_lambda must be positive");
    }
    precompute();
}

NcmEvaluator::NcmEvaluator(const ReferenceSet& reference, NcmKind kind)
    : NcmEvaluator(std::make_shared<const ReferenceSet>(reference), kind) {}

void NcmEvaluator::precompute() {
    const ReferenceSet& ref = *reference_;
    switch (kind_.family) {
    case NcmFamily::kKnn:
        break;
    case NcmFamily::kLof:
        member_density_.resize(ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            member_density_[i] = member_density(ref, i, kind_.k);
        }
        break;
    case NcmFamily::kLoop:
        member_pdist_.resize(ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            member_pdist_[i] = member_pdist(ref, i, kind_.k, kind_.loop_lambda);
        }
        nplof_ = aggregate_nplof(ref, member_pdist_, kind_.k, kind_.loop_lambda);
        break;
    }
}

double NcmEvaluator::score(const Eigen::VectorXd& x) const {
    const ReferenceSet& ref = *reference_;
    const NeighborList nl =
        select_k(distances_from(ref, ref.metric().whiten(x)), kind_.k, std::nullopt);
    switch (kind_.family) {
    case NcmFamily::kKnn:
        return knn_from(nl);
    case NcmFamily::kLof:
        return lof_from(ref, nl, &member_density_, kind_.k);
    case NcmFamily::kLoop: {
        const double plof_x =
            plof_from(pdist_from(nl, kind_.loop_lambda), mean_neighbor_pdist(nl, member_pdist_));
        return loop_from_plof(plof_x, nplof_);
    }
    }
    return 0.0;
}

} // namespace icad
