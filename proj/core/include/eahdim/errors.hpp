#pragma once

#include <stdexcept>
#include <string>

namespace eahdim {

// Bad arguments or malformed configuration. CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A solver failed to converge within its iteration budget. Exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or DP would exceed its configured budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eahdim
