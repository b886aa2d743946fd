#pragma once

#include <stdexcept>
#include <string>

namespace tilecoh {

// Every module error derives from Error and carries a stable class name and
// process exit code so the CLI can report distinct failures.
class Error : public std::runtime_error {
public:
    Error(std::string kind, int exit_code, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)), exit_code_(exit_code) {}
    const std::string& kind() const { return kind_; }
    int exit_code() const { return exit_code_; }

private:
    std::string kind_;
    int exit_code_;
};

#define TILECOH_ERROR(Name, Code)                                                  \
    class Name : public Error {                                                    \
    public:                                                                        \
        explicit Name(const std::string& msg) : Error(#Name, Code, msg) {}         \
    };

TILECOH_ERROR(SchemaError, 10)
TILECOH_ERROR(RangeError, 11)
TILECOH_ERROR(LengthError, 12)
TILECOH_ERROR(ExpansionMismatch, 13)
TILECOH_ERROR(IncompatibleInvolution, 14)
TILECOH_ERROR(NotPrimitive, 20)
TILECOH_ERROR(MissingShape, 21)
TILECOH_ERROR(IllegalFace, 30)
TILECOH_ERROR(BorderNotAsserted, 31)
TILECOH_ERROR(ChainMapViolation, 32)
TILECOH_ERROR(NonCommuting, 33)
TILECOH_ERROR(OrientationReversingFixedCell, 34)
TILECOH_ERROR(NotCochainMap, 40)
TILECOH_ERROR(NotACocycle, 41)
TILECOH_ERROR(DimensionOverflow, 50)
TILECOH_ERROR(WrongDimension, 51)
TILECOH_ERROR(NotPrimitiveSpectrum, 60)
TILECOH_ERROR(DimensionMismatch, 70)
TILECOH_ERROR(UsageError, 2)

#undef TILECOH_ERROR

}  // namespace tilecoh
