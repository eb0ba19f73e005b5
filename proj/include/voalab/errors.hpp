#ifndef VOALAB_ERRORS_HPP
#define VOALAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace voalab {

// Base class for everything the engine can refuse to do.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A phase e^{2*pi*i*r} whose r has denominator not dividing 4; such an
// automorphism lives outside the Gaussian rationals and is rejected.
struct PhaseError : Error {
    explicit PhaseError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroError : Error {
    explicit DivisionByZeroError(const std::string& msg) : Error(msg) {}
};

// Mixing objects over different lattices, mismatched grades, etc.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A claimed isometry fails the exact Gram check, or a lift is unsupported.
struct IsometryError : Error {
    explicit IsometryError(const std::string& msg) : Error(msg) {}
};

// A grade above the built basis cutoff was requested.
struct CutoffError : Error {
    explicit CutoffError(const std::string& msg) : Error(msg) {}
};

// A weight-2 vector failed one of the conformal identities.
struct ConformalError : Error {
    ConformalError(const std::string& identity, int grade, const std::string& detail)
        : Error("not conformal: identity '" + identity + "' fails at grade " +
                std::to_string(grade) + (detail.empty() ? "" : ": " + detail)),
          identity(identity), grade(grade) {}
    std::string identity;
    int grade;
};

struct AffineTripleError : Error {
    explicit AffineTripleError(const std::string& msg) : Error(msg) {}
};

// Weight-one modes fail to span a grade, or letterwise images are inconsistent.
struct PropagationError : Error {
    explicit PropagationError(const std::string& msg) : Error(msg) {}
};

// Internal cross-checks (Burnside counts, closed forms vs. matrices) disagree.
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace voalab

#endif
