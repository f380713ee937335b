#pragma once

#include <stdexcept>
#include <string>

namespace hopfcyc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define HOPFCYC_ERROR(Name)                                              \
    struct Name : Error {                                                \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

HOPFCYC_ERROR(MixedRingError);
HOPFCYC_ERROR(NotInvertibleError);
HOPFCYC_ERROR(DegreeOverflowError);
HOPFCYC_ERROR(SlotMismatchError);
HOPFCYC_ERROR(NotSubHopfError);
HOPFCYC_ERROR(VarianceMismatchError);
HOPFCYC_ERROR(NonSaydCoefficientError);
HOPFCYC_ERROR(CyclicIdentityFailureError);
HOPFCYC_ERROR(WindowTooSmallError);
HOPFCYC_ERROR(DegeneratePairingError);
HOPFCYC_ERROR(MorphismFailureError);
HOPFCYC_ERROR(NotEquivariantError);
HOPFCYC_ERROR(ManifestError);
HOPFCYC_ERROR(MissingGoldenError);
HOPFCYC_ERROR(ParseError);

#undef HOPFCYC_ERROR

} // namespace hopfcyc
