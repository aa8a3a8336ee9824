#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace icad {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySeries : public Error {
public:
    EmptySeries() : Error("series is empty") {}
};

class InvalidWindowLength : public Error {
public:
    InvalidWindowLength(int window_length, std::size_t series_length)
        : Error("window length " + std::to_string(window_length) +
                " invalid for series of length " + std::to_string(series_length) +
                " (need 2 <= L < n/2)") {}
    explicit InvalidWindowLength(const std::string& what) : Error(what) {}
};

class InsufficientHistory : public Error {
public:
    InsufficientHistory(std::size_t have, std::size_t need)
        : Error("need " + std::to_string(need) + " buffered points, have " +
                std::to_string(have)) {}
};

class DegenerateReference : public Error {
public:
    explicit DegenerateReference(std::size_t size)
        : Error("reference set of size " + std::to_string(size) +
                " is too small to fit a metric") {}
};

class SingularCovariance : public Error {
public:
    SingularCovariance() : Error("regularized covariance is singular") {}
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t got, std::size_t want)
        : Error("vector dimension " + std::to_string(got) + " does not match " +
                std::to_string(want)) {}
};

class KTooLarge : public Error {
public:
    KTooLarge(int k, std::size_t reference_size)
        : Error("k = " + std::to_string(k) + " too large for reference of size " +
                std::to_string(reference_size)) {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class NonMonotoneTimestamps : public Error {
public:
    NonMonotoneTimestamps(const std::string& file, std::size_t line)
        : Error(file + ":" + std::to_string(line) + ": timestamps not strictly increasing") {}
};

class MissingValue : public Error {
public:
    MissingValue(const std::string& file, std::size_t line)
        : Error(file + ":" + std::to_string(line) + ": missing value field") {}
};

class OverlappingWindows : public Error {
public:
    explicit OverlappingWindows(const std::string& file)
        : Error("overlapping anomaly windows for " + file) {}
};

class UnorderedDetections : public Error {
public:
    UnorderedDetections() : Error("detections are not in time order") {}
};

class DegenerateBaseline : public Error {
public:
    DegenerateBaseline() : Error("perfect and null baselines coincide; nothing to normalize") {}
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("no likelihood traces supplied") {}
};

} // namespace icad
