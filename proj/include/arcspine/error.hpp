#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcspine {

enum class ErrorCode {
    InvalidContext,
    // map construction
    InvalidPermutation,
    InvalidInvolution,
    DuplicateVertexLabel,
    UnlabeledVertex,
    UnassignedPuncture,
    BadLabel,
    EulerMismatch,
    Disconnected,
    // subsystems
    EmptySystem,
    NotValidSystem,
    NotSigmaInvariant,
    // flips
    NotFlippable,
    SymmetryBroken,
    // deck involution
    NotInvolutive,
    OrientationPreserving,
    NotAutomorphism,
    FixedVertex,
    FixedEdge,
    FixedFace,
    LabelPairingBroken,
    // search / complexes
    BudgetExceeded,
    OrderViolation,
    ChainBroken,
    ConstructionFailed,
    Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace arcspine
