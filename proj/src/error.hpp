// SPDX-License-Identifier: Apache-2.0
/// @file error.hpp
/// @brief Error codes and the exception type thrown by the core library.

#ifndef KCERT_ERROR_HPP
#define KCERT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kcert {

enum class ErrorCode {
    InvalidArgument,
    Io,
    Parse,
    Dimension,
    NotPositiveDefinite,
    Singular,
    MaxIterations,
    TooLarge,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace kcert

#endif // KCERT_ERROR_HPP
