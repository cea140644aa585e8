#pragma once

#include <stdexcept>
#include <string>

namespace evf {

// Every failure raised by the library derives from evf::Error, so callers
// (the CLI in particular) can map any of them to a nonzero exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the domain of a formula (zero field for w_B, negative energy, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Magnetic energy of a mode reaches the source energy; no propagating solution.
class EvanescentModeError : public Error {
public:
    using Error::Error;
};

// Laguerre order above the supported recurrence ceiling.
class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

// Analytic sampling asked for a waist that is not the magnetic width.
class NotAnEigenstateError : public Error {
public:
    using Error::Error;
};

// Propagation step violates the kinetic-phase anti-aliasing bound.
class StepTooLargeError : public Error {
public:
    using Error::Error;
};

// Field leaked to the edge of the computational window.
class ContainmentError : public Error {
public:
    using Error::Error;
};

// Two fields (or a field and a plan) live on different grids.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

// Grid too coarse to resolve a hologram carrier.
class SamplingError : public Error {
public:
    using Error::Error;
};

// Diffraction orders overlap inside the extraction window.
class SeparationError : public Error {
public:
    using Error::Error;
};

// Angular profile carries no measurable 2l-fold pattern.
class NoPatternError : public Error {
public:
    using Error::Error;
};

// Malformed quantity on the command line or in a config file.
class UnitParseError : public Error {
public:
    using Error::Error;
};

// Malformed or truncated field file.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace evf
