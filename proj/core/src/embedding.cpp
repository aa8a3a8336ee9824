#include "icad/embedding.hpp"

#include <utility>

#include "icad/errors.hpp"

namespace icad {

HankelMatrix::HankelMatrix(std::vector<EmbeddedVector> columns, int window_length)
    : columns_(std::move(columns)), window_length_(window_length) {
    if (window_length_ < 2) {
        throw InvalidWindowLength("window length must be at least 2");
    }
    for (const auto& col : columns_) {
        if (col.dim() != window_length_) {
            throw ShapeMismatch("column dimension does not match window length");
        }
    }
}

HankelMatrix embed_values(std::span<const double> values, int window_length,
                          std::int64_t first_index) {
    const std::size_t n = values.size();
    if (n == 0) {
        throw EmptySeries();
    }
    if (window_length < 2 || 2 * static_cast<std::size_t>(window_length) >= n) {
        throw InvalidWindowLength(window_length, n);
    }
    const std::size_t m = n - static_cast<std::size_t>(window_length) + 1;
    std::vector<EmbeddedVector> columns;
    columns.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        EmbeddedVector col;
        col.values = Eigen::Map<const Eigen::VectorXd>(values.data() + i, window_length);
        col.end_index = first_index + static_cast<std::int64_t>(i) + window_length - 1;
        columns.push_back(std::move(col));
    }
    return HankelMatrix(std::move(columns), window_length);
}

HankelMatrix embed_series(std::span<const SeriesPoint> series, int window_length) {
    std::vector<double> values;
    values.reserve(series.size());
    for (const auto& p : series) {
        values.push_back(p.value);
    }
    return embed_values(values, window_length, 0);
}

HankelMatrix slide(const HankelMatrix& matrix, const SeriesPoint& new_point) {
    if (matrix.column_count() == 0) {
        throw ShapeMismatch("cannot slide an empty matrix");
    }
    const int L = matrix.window_length();
    const EmbeddedVector& last = matrix.column(matrix.column_count() - 1);

    EmbeddedVector next;
    next.values.resize(L);
    next.values.head(L - 1) = last.values.tail(L - 1);
    next.values(L - 1) = new_point.value;
    next.end_index = last.end_index + 1;

    std::vector<EmbeddedVector> columns(matrix.columns().begin() + 1, matrix.columns().end());
    columns.push_back(std::move(next));
    return HankelMatrix(std::move(columns), L);
}

EmbeddedVector latest_values(std::span<const double> buffer, int window_length,
                             std::int64_t end_index) {
    if (window_length < 1 || buffer.size() < static_cast<std::size_t>(window_length)) {
        throw InsufficientHistory(buffer.size(), static_cast<std::size_t>(window_length));
    }
    EmbeddedVector v;
    v.values = Eigen::Map<const Eigen::VectorXd>(
        buffer.data() + buffer.size() - static_cast<std::size_t>(window_length), window_length);
    v.end_index = end_index;
    return v;
}

EmbeddedVector latest_vector(std::span<const SeriesPoint> buffer, int window_length) {
    if (window_length < 1 || buffer.size() < static_cast<std::size_t>(window_length)) {
        throw InsufficientHistory(buffer.size(), static_cast<std::size_t>(window_length));
    }
    std::vector<double> values;
    values.reserve(buffer.size());
    for (const auto& p : buffer) {
        values.push_back(p.value);
    }
    return latest_values(values, window_length, static_cast<std::int64_t>(buffer.size()) - 1);
}

} // namespace icad
