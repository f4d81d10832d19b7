#pragma once

#include <stdexcept>
#include <string>

namespace braidqm {

// Input that violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure that could not reach its tolerance or left its domain.
class NumericalFault : public std::runtime_error {
public:
    explicit NumericalFault(const std::string& what) : std::runtime_error(what) {}
};

} // namespace braidqm
