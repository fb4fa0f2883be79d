#pragma once

#include <stdexcept>
#include <string>

namespace forbconf {

/// Raised for violated preconditions and malformed input across the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace forbconf
