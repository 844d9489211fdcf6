#pragma once

#include <stdexcept>
#include <string>

namespace bwangle {

struct ZeroWeightError : std::runtime_error {
    explicit ZeroWeightError(const std::string& what) : std::runtime_error(what) {}
};

struct NotPositiveDefiniteError : std::runtime_error {
    explicit NotPositiveDefiniteError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

struct DescriptorError : std::runtime_error {
    explicit DescriptorError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bwangle
