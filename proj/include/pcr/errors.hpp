#pragma once

#include <stdexcept>
#include <string>

namespace pcr {

// Bad user input: malformed specs, invalid indices, schema violations.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: non-Hermitian input, tolerance blowup, trace loss.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// A perturbative denominator hit (near-)zero detuning.
struct ResonanceError : NumericError {
  explicit ResonanceError(const std::string& msg) : NumericError(msg) {}
};

// Eigenvector assignment failed: the computational subspace is too
// hybridized for the effective 8x8 model to be meaningful.
struct HybridizationError : std::runtime_error {
  explicit HybridizationError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// No in-bounds initial parameter vector could be produced.
struct SeedingError : std::runtime_error {
  explicit SeedingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pcr
