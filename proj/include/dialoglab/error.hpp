#pragma once

#include <stdexcept>
#include <string>

namespace dialoglab {

// Bad input or a violated contract. The CLI maps this to exit code 1;
// anything else escaping to main is an internal error (exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dialoglab
