// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace luc {

/// Bad input: wrong shapes, out-of-range parameters, inconsistent files.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical method did not deliver (non-convergence, singular system, NaN).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LUC_REQUIRE(cond, msg)                                   \
    do {                                                         \
        if (!(cond)) throw ::luc::InvalidArgument(std::string(msg)); \
    } while (0)

} // namespace luc
