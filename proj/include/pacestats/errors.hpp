#ifndef PACESTATS_ERRORS_HPP
#define PACESTATS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pacestats {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Too few groups or too few observations to carry out the procedure.
class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& msg) : Error(msg) {}
};

/// Data admissible in shape but degenerate in content (e.g. zero variance
/// where a positive variance is required).
class DegenerateDataError : public Error {
public:
    explicit DegenerateDataError(const std::string& msg) : Error(msg) {}
};

/// A record cannot be placed in any pace band.
class NotPaceError : public Error {
public:
    explicit NotPaceError(const std::string& msg) : Error(msg) {}
};

/// Input file or stream does not match the expected column layout.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

/// A grouping operation produced an empty group.
class EmptyGroupError : public Error {
public:
    explicit EmptyGroupError(const std::string& msg) : Error(msg) {}
};

/// A file or stream could not be opened or read.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// An iterative numeric routine failed to converge.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// Command line was syntactically valid but semantically unusable.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

} // namespace pacestats

#endif
