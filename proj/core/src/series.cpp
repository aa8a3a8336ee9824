#include "icad/series.hpp"

#include <charconv>
#include <utility>

namespace icad {

namespace {

std::optional<double> parse_numeric(const std::string& s) {
    if (s.empty()) {
        return std::nullopt;
    }
    double out = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return out;
}

} // namespace

Timestamp::Timestamp(std::string raw) : raw_(std::move(raw)), numeric_(parse_numeric(raw_)) {}

Timestamp Timestamp::from_index(std::int64_t index) {
    return Timestamp(std::to_string(index));
}

bool operator==(const Timestamp& a, const Timestamp& b) {
    if (a.numeric_ && b.numeric_) {
        return *a.numeric_ == *b.numeric_;
    }
    return a.raw_ == b.raw_;
}

bool operator<(const Timestamp& a, const Timestamp& b) {
    if (a.numeric_ && b.numeric_) {
        return *a.numeric_ < *b.numeric_;
    }
    return a.raw_ < b.raw_;
}

} // namespace icad
