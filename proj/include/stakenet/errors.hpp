#ifndef STAKENET_ERRORS_HPP
#define STAKENET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stakenet {

enum class ErrorKind {
    DuplicateNodeId,
    DanglingEdgeEndpoint,
    SelfLoop,
    DuplicateEdge,
    ZeroStrengthEdge,
    UnknownNode,
    NonSquareMatrix,
    EntryOutOfRange,
    NonZeroDiagonal,
    ParseError,
    UnknownTieType,
    StrengthOutOfRange,
    EmptyInput,
    NetworkTooLarge,
    UnmappedRole,
    QuorumExceedsProjects,
    UnknownPhase,
    InvalidParameter,
    IoError,
};

const char* to_string(ErrorKind kind);

/// Domain error carrying a machine-checkable kind plus a message that
/// names the offending element (node id, line number, file, ...).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace stakenet

#endif
