#pragma once

#include <stdexcept>
#include <string>

namespace zxi {

// Bad input: parameters, shapes, out-of-range requests.
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that could not deliver a finite answer.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zxi
