#pragma once

#include <stdexcept>
#include <string>

namespace qbm {

// Invalid user input or violated precondition.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical guard tripped (resonant oscillator, asymptotic regime violated).
class NumericalGuardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InputError(msg);
}

} // namespace qbm
