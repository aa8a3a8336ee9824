#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace icad {

/// Opaque, ordered time tag. Numeric tags ("42", "1424916900", "3.5") compare
/// numerically; anything else (e.g. ISO datetimes, which sort lexicographically)
/// compares as a string.
class Timestamp {
public:
    Timestamp() = default;
    explicit Timestamp(std::string raw);

    static Timestamp from_index(std::int64_t index);

    const std::string& raw() const { return raw_; }
    bool is_numeric() const { return numeric_.has_value(); }
    double numeric() const { return *numeric_; }

    friend bool operator==(const Timestamp& a, const Timestamp& b);
    friend bool operator<(const Timestamp& a, const Timestamp& b);
    friend bool operator<=(const Timestamp& a, const Timestamp& b) { return a == b || a < b; }
    friend bool operator>(const Timestamp& a, const Timestamp& b) { return b < a; }
    friend bool operator>=(const Timestamp& a, const Timestamp& b) { return b <= a; }

private:
    std::string raw_;
    std::optional<double> numeric_;
};

/// One observation of a one-dimensional series.
struct SeriesPoint {
    Timestamp timestamp;
    double value = 0.0;
};

} // namespace icad
