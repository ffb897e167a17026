#pragma once

#include <stdexcept>
#include <string>

namespace cpd {

/// Bad arguments: wrong dimensions, out-of-range levels, invalid configs.
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A moment point outside the admissible region (e.g. non-positive
/// within-segment variance under the mean+variance model).
class DegenerateMomentError : public std::runtime_error {
public:
    explicit DegenerateMomentError(const std::string& what) : std::runtime_error(what) {}
};

/// A whole series for which no admissible split exists.
class DegenerateSeriesError : public std::runtime_error {
public:
    explicit DegenerateSeriesError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cpd
