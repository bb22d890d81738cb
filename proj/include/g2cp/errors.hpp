#ifndef G2CP_ERRORS_HPP
#define G2CP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace g2cp {

/// Base class for all numeric / algebraic failures raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : Error {
    using Error::Error;
};

/// Im(Omega) not positive definite, or a matrix outside the Siegel half space.
struct NotPositive : Error {
    using Error::Error;
};

/// A Borchardt quadruple has no common half-plane: the standard sign choice
/// is undefined for this input.
struct HalfPlaneViolation : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct ZeroDivision : Error {
    using Error::Error;
};

struct SingularJacobian : Error {
    using Error::Error;
};

/// Measured precision loss per Newton step exceeded the operational bound.
struct DeltaBlowup : Error {
    using Error::Error;
};

/// A floating comparison fell inside the decision margin during numeric
/// reduction; the caller must raise the working precision.
struct BoundaryAmbiguity : Error {
    using Error::Error;
};

struct IterationCap : Error {
    using Error::Error;
};

struct NonIntegralPairing : Error {
    using Error::Error;
};

struct NonUnimodular : Error {
    using Error::Error;
};

struct DegenerateDenominator : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    using Error::Error;
};

/// h10 = 0: the product of the even theta squares vanishes.
struct SingularSurface : Error {
    using Error::Error;
};

/// Recognition residual too large: precision insufficient, or the value is
/// not in the field.
struct VerificationFailed : Error {
    using Error::Error;
};

struct DenominatorNotInvertible : Error {
    using Error::Error;
};

struct RamifiedOrInert : Error {
    using Error::Error;
};

struct UnmatchedRoot : Error {
    using Error::Error;
};

struct DataFileError : Error {
    using Error::Error;
};

}  // namespace g2cp

#endif
