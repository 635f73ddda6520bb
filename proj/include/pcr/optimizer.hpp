#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcr/circuit.hpp"
#include "pcr/effective.hpp"
#include "pcr/gates.hpp"
#include "pcr/params.hpp"
#include "pcr/powell.hpp"

namespace pcr {

struct CostBreakdown {
  double wanted = 0.0;
  double unwanted = 0.0;
  double constraint = 0.0;
  double total() const { return wanted + unwanted + constraint; }
  // Per-relation residuals in Hz (pivot first), for reporting.
  std::vector<double> wanted_residual_hz;
};

// Quadratic normalized residuals against alpha_opt; hinge penalty of
// weight 1e3 per squared out-of-bounds excess.
CostBreakdown evaluate_cost(const GateTarget& target,
                            const PauliCoefficients& coeffs,
                            const Eigen::VectorXd& params,
                            const ParameterBounds& bounds);

// One record per objective evaluation (JSON-lines friendly).
struct EvaluationRecord {
  long index = 0;
  Eigen::VectorXd params;
  CostBreakdown cost;
  // Total cost relative to the seed evaluation; reported alongside the raw
  // total because the raw scale is arbitrary across targets.
  double seed_ratio = 1.0;
  bool hybridization_failure = false;
};

using EvaluationSink = std::function<void(const EvaluationRecord&)>;

struct OptimizationOutcome {
  ParameterVector params;
  PauliCoefficients coefficients;
  PowellResult powell;
  CostBreakdown final_cost;
  double seed_cost = 0.0;
  long hybridization_failures = 0;
};

struct OptimizeOptions {
  double omega_ref_hz = 60e6;  // fixed reference drive amplitude
  int cutoff = 4;
  double eps = 1e-5;
  int max_iter = 60;
  EvaluationSink sink;  // optional
};

// End-to-end Powell loop over (wc12, wc23, A1, A2, A3): every objective
// evaluation runs the nonperturbative coefficient extraction. Drive
// phases are calibrated to {0, pi} by construction (negative A_j folds
// into a pi phase). Hybridization failures map to a 1e6 penalty.
OptimizationOutcome optimize_cell(const CircuitSpec& spec,
                                  const GateTarget& target,
                                  const ParameterVector& seed,
                                  const ParameterBounds& bounds,
                                  const OptimizeOptions& options = {});

// Coefficients at a given parameter vector (shared by the optimizer,
// verification sweeps and robustness sampling).
PauliCoefficients coefficients_at(const CircuitSpec& spec,
                                  const ParameterVector& params,
                                  double omega_ref_hz, int cutoff = 4);

}  // namespace pcr
