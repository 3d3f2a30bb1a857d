#pragma once

#include <stdexcept>
#include <string>

namespace spinmet {

// Invalid user input: bad quantum numbers, malformed files, mismatched dimensions.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical contract was violated (tolerance breach, non-PSD matrix, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinmet
