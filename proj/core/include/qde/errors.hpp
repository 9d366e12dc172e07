#pragma once

#include <stdexcept>
#include <string>

namespace qde {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Quaternion operations requiring a nonzero input received a (near-)zero one.
struct NearZeroQuaternion : Error {
    using Error::Error;
};

// An interval argument (lo, hi) with lo >= hi, or a parameter outside its
// admissible range.
struct InvalidRange : Error {
    using Error::Error;
};

// Problem dimension is neither 3 nor a positive multiple of 4.
struct UnsupportedDimension : Error {
    using Error::Error;
};

// Benchmark function id outside 1..24.
struct UnknownFunction : Error {
    using Error::Error;
};

// Input vector length does not match the expected dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Aggregation over an empty record set.
struct EmptyCell : Error {
    using Error::Error;
};

// Rank test called with fewer than 2 blocks or 2 treatments.
struct DegenerateInput : Error {
    using Error::Error;
};

// Significance level without an embedded critical-value table.
struct UnsupportedAlpha : Error {
    using Error::Error;
};

// Treatment count outside the embedded critical-value table (k = 2..20).
struct KOutOfTable : Error {
    using Error::Error;
};

// Analysis requested on a result set with missing cells.
struct IncompleteMatrix : Error {
    using Error::Error;
};

// Unrecognized export format tag.
struct UnknownFormat : Error {
    using Error::Error;
};

// Malformed configuration file or flag value.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qde
