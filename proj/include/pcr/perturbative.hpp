#pragma once

#include <optional>

#include "pcr/circuit.hpp"
#include "pcr/gates.hpp"
#include "pcr/params.hpp"

namespace pcr {

// First-order-in-Omega closed forms for the eight drive-induced
// coefficients. Only these are provided; diagonal/static words come from
// the nonperturbative pipeline.
struct PerturbativeCoefficients {
  double zix = 0.0, ziy = 0.0;
  double izx = 0.0, izy = 0.0;
  double iix = 0.0, iiy = 0.0;
  double zzx = 0.0, zzy = 0.0;

  double get(const std::string& word) const;
};

// Term-by-term transcription of the first-order coefficient formulas;
// inputs and outputs in Hz.
PerturbativeCoefficients perturbative_coefficients(const DressedTable& table,
                                                   const DriveSpec& drive);

// Initial parameter vector for an optimization run. A curated seed (when
// supplied) is returned verbatim after a bounds check; otherwise a coarse
// grid search maximizes the perturbative |alpha_ZZX| subject to the sign
// pattern of the target. Omega is the reference drive amplitude in Hz.
ParameterVector seed_parameters(
    const GateTarget& target, const CircuitSpec& spec,
    const ParameterBounds& bounds, double omega_ref_hz,
    const std::optional<ParameterVector>& curated = std::nullopt);

}  // namespace pcr
