#pragma once

#include <stdexcept>
#include <string>

namespace regretlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct InvalidWeightError : Error {
    using Error::Error;
};

struct InvalidRoundError : Error {
    using Error::Error;
};

struct NonFiniteError : Error {
    using Error::Error;
};

struct CertificateError : Error {
    using Error::Error;
};

struct OracleFailure : Error {
    using Error::Error;
};

// Bound evaluated outside a corollary's stated parameter range, or a
// divergent closed form (nu = 1 with beta1 > 0).
struct BoundPreconditionError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw DimensionError(std::string(what) + ": size " + std::to_string(got) +
                             " does not match expected " + std::to_string(want));
    }
}

} // namespace regretlab
