#pragma once

#include <stdexcept>
#include <string>

namespace qapbench {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed instance text (bad token, token-count mismatch, bad size).
struct ParseError : Error {
    using Error::Error;
};

/// A documented precondition was violated by the caller.
struct ContractError : Error {
    using Error::Error;
};

/// Invalid solver or experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// Not enough data points for the requested statistic.
struct InsufficientDataError : Error {
    using Error::Error;
};

/// Refused because the input exceeds a hard size guard.
struct SizeLimitError : Error {
    using Error::Error;
};

/// File system failure, carries the offending path in the message.
struct IoError : Error {
    using Error::Error;
};

} // namespace qapbench
