#pragma once

#include <stdexcept>
#include <string>

namespace dgmg {

/// Invalid argument supplied by the caller (bad degree, negative penalty, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operand shapes do not agree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical solve failed: singular matrix, stagnating or diverging iteration.
class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace dgmg
