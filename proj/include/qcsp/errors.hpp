#ifndef QCSP_ERRORS_HPP
#define QCSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcsp {

/// Malformed arguments: dimension/label/signature mismatches, bad parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A configured size cap (dimension, vertex count, search budget) was hit.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text input could not be parsed or failed strict validation.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace qcsp

#endif
