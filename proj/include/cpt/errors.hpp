#ifndef CPT_ERRORS_HPP
#define CPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cpt {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a fixed process exit code (see exit_code_for) so scripted runs can
// distinguish config syntax problems from bad parameter values from numerics.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed configuration text. Carries 1-based line/column of the offense.
struct ParseError : Error {
    ParseError(const std::string& what, int line, int column)
        : Error(what), line(line), column(column) {}
    int line;
    int column;
};

// Well-formed input whose values violate a documented precondition or range:
// invalid arguments, degenerate physics inputs, unknown config keys, grid or
// shape mismatches.
struct ValidationError : Error {
    using Error::Error;
};

// Both couplings zero: the dark state and the ground-state coherence are
// undefined at that point.
struct DegenerateInputError : ValidationError {
    using ValidationError::ValidationError;
};

// A width was requested for a profile that has no half-maximum crossing
// (flat profile, or contrast too low to ever reach half the peak).
struct NoPeaksError : ValidationError {
    using ValidationError::ValidationError;
};

// Argument leaves the mathematical domain of a closed form (e.g. arcsin of
// a value above 1 when the finesse is too small for the zone count).
struct OutOfDomainError : ValidationError {
    using ValidationError::ValidationError;
};

// Numerics failed at the requested discretization: integrator invariant
// drift, a feature too narrow for the grid, an all-zero spectrum.
struct NumericalError : Error {
    using Error::Error;
};

// Grid too coarse to resolve the feature being measured.
struct ResolutionError : NumericalError {
    using NumericalError::NumericalError;
};

// Invariant violation detected during time integration.
struct InstabilityError : NumericalError {
    using NumericalError::NumericalError;
};

struct IoError : Error {
    using Error::Error;
};

enum ExitCode {
    exit_ok = 0,
    exit_parse = 2,
    exit_validation = 3,
    exit_numerical = 4,
    exit_io = 5,
};

inline int exit_code_for(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return exit_parse;
    if (dynamic_cast<const ValidationError*>(&e)) return exit_validation;
    if (dynamic_cast<const NumericalError*>(&e)) return exit_numerical;
    if (dynamic_cast<const IoError*>(&e)) return exit_io;
    return exit_numerical;
}

} // namespace cpt

#endif
