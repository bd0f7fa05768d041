#ifndef BRANDTLAB_ERRORS_HPP
#define BRANDTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brandtlab {

enum class ErrorKind {
    invalid_argument,
    invalid_place,
    incompatible_algebra,
    construction_failed,
    malformed_order,
    rank_deficient,
    inconsistency,
    enumeration_failure,
    precondition,
    degenerate_combination,
    insufficient_precision,
    tolerance_resolution,
    cross_validation,
    schema_mismatch,
    io,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_place: return "invalid-place";
    case ErrorKind::incompatible_algebra: return "incompatible-algebra";
    case ErrorKind::construction_failed: return "construction-failed";
    case ErrorKind::malformed_order: return "malformed-order";
    case ErrorKind::rank_deficient: return "rank-deficient";
    case ErrorKind::inconsistency: return "internal-inconsistency";
    case ErrorKind::enumeration_failure: return "enumeration-failure";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::degenerate_combination: return "degenerate-combination";
    case ErrorKind::insufficient_precision: return "insufficient-precision";
    case ErrorKind::tolerance_resolution: return "tolerance-resolution";
    case ErrorKind::cross_validation: return "cross-validation";
    case ErrorKind::schema_mismatch: return "schema-mismatch";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can distinguish a usage error from a broken invariant.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace brandtlab

#endif // BRANDTLAB_ERRORS_HPP
