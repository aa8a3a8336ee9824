#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "icad/series.hpp"

namespace icad {

/// A length-L lag window of the source series; the unit of comparison.
/// Element j holds the source value at index end_index - L + 1 + j.
struct EmbeddedVector {
    Eigen::VectorXd values;
    std::int64_t end_index = 0;

    std::int64_t dim() const { return values.size(); }
};

/// Trajectory matrix of lag windows: column i covers source indices
/// [i, i + L - 1], so consecutive columns overlap in L - 1 entries and the
/// matrix is constant along anti-diagonals.
class HankelMatrix {
public:
    HankelMatrix(std::vector<EmbeddedVector> columns, int window_length);

    int window_length() const { return window_length_; }
    std::size_t column_count() const { return columns_.size(); }
    const EmbeddedVector& column(std::size_t i) const { return columns_[i]; }
    const std::vector<EmbeddedVector>& columns() const { return columns_; }

private:
    std::vector<EmbeddedVector> columns_;
    int window_length_;
};

/// Maps a series of length n into its L x (n - L + 1) trajectory matrix.
/// Requires 2 <= L < n/2.
HankelMatrix embed_series(std::span<const SeriesPoint> series, int window_length);

/// Same embedding over raw values; first_index is the source index of values[0].
HankelMatrix embed_values(std::span<const double> values, int window_length,
                          std::int64_t first_index = 0);

/// Drops the oldest column and appends the column ending at the new point.
/// The column count is unchanged.
HankelMatrix slide(const HankelMatrix& matrix, const SeriesPoint& new_point);

/// The lag window over the L most recent buffered points, in time order.
EmbeddedVector latest_vector(std::span<const SeriesPoint> buffer, int window_length);
EmbeddedVector latest_values(std::span<const double> buffer, int window_length,
                             std::int64_t end_index);

} // namespace icad
