#pragma once

#include <stdexcept>
#include <string>

namespace meanext {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ArityMismatch : Error {
    using Error::Error;
};

struct DomainViolation : Error {
    using Error::Error;
};

struct MalformedSystem : Error {
    using Error::Error;
};

struct InvalidDimensions : Error {
    using Error::Error;
};

struct SearchSpaceTooLarge : Error {
    using Error::Error;
};

struct NotAdmissible : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct MeansNotOrdered : Error {
    using Error::Error;
};

struct NoSignChange : Error {
    using Error::Error;
};

struct OddArity : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace meanext
