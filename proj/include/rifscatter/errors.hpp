#pragma once

#include <stdexcept>
#include <string>

namespace rif {

// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid user input: malformed config values, out-of-range parameters,
// mismatched arguments.
struct ValidationError : Error {
  using Error::Error;
};

// Frequency falls inside the guard band around a medium resonance where the
// real dispersion relation is not usable.
struct ResonanceProximityError : Error {
  using Error::Error;
};

// Requested a refractive index where n^2 <= 0 (between a resonance and the
// next propagating-band onset).
struct AnomalousBandError : Error {
  using Error::Error;
};

// The root finder produced a root set that violates a structural guarantee
// (wrong multiplicities, unpaired complex roots, residual too large).
struct RootCountError : Error {
  using Error::Error;
};

// Mode normalization failed, typically because the comoving group velocity
// vanishes at a subluminal-interval edge.
struct NormalizationError : Error {
  using Error::Error;
};

// The matching linear system is singular or too ill-conditioned to trust.
struct MatchingError : Error {
  using Error::Error;
};

// The scattering matrix violates pseudo-unitarity beyond tolerance. This is
// an internal consistency failure, never expected for a converged solve.
struct UnitarityError : Error {
  using Error::Error;
};

}  // namespace rif
