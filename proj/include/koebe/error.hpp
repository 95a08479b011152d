#pragma once

#include <stdexcept>
#include <string>

namespace koebe {

enum class ErrorCode {
    InvalidArgument = 1,
    Parse,
    DegenerateTriple,
    IdentityElement,
    WrongElementType,
    AmbiguousOrientation,
    NotOnGeodesic,
    UnsupportedSignature,
    UnsupportedRow,
    EllipticDihedralFactor,
    SharedElementMismatch,
    GluingOrderInvalid,
    CoordinateOutsideOuterDomain,
    BudgetExceeded,
    InternalInconsistency,
};

const char* error_code_name(ErrorCode code);

// All recoverable failures in the core carry a code so the C boundary can
// translate them without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace koebe
