#pragma once

#include <stdexcept>
#include <string>

namespace critsamp {

/// Filesystem-level failure: missing input, unwritable output.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally invalid data: bad dimensions, empty samples, mismatched
/// diagrams, violated filtration order.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// PGM stream that does not parse. The kind distinguishes the failure
/// classes callers may want to handle separately.
class PgmParseError : public std::runtime_error {
public:
    enum class Kind {
        MalformedHeader,
        TruncatedPayload,
        PixelOutOfRange,
    };

    PgmParseError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace critsamp
