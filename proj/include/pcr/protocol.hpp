#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pcr/circuit.hpp"
#include "pcr/gates.hpp"
#include "pcr/lindblad.hpp"
#include "pcr/optimizer.hpp"
#include "pcr/params.hpp"
#include "pcr/pauli.hpp"

namespace pcr {

// Flat-top envelope with raised-cosine rise and fall. scale() is
// continuous, zero at both ends, 1 on the flat top; each edge integrates
// to edge/2, so the total area is flat_top + edge.
struct PulseShape {
  double flat_top_s = 0.0;
  double edge_s = 10e-9;

  double duration_s() const { return flat_top_s + 2.0 * edge_s; }
  double area_s() const { return flat_top_s + edge_s; }
  double scale(double t) const;    // t relative to pulse start
  double area_to(double t) const;  // integral of scale over [0, t]
};

// Flat-top length such that the accumulated rotation angle on the pivot
// word, 2 * 2pi * alpha * area, equals theta. alpha in Hz; theta and
// alpha must have the same sign handled by the caller (both > 0 here).
PulseShape shape_for_angle(double theta_rad, double alpha_hz,
                           double edge_s = 10e-9);

// Nominal pivot rotation angle of each protocol's single pulse. CZZ is
// negative: the drive sign is flipped to realize it.
double protocol_angle_rad(GateKind kind);

struct SimulationResult {
  double fidelity = 0.0;
  double duration_s = 0.0;
  double flat_top_s = 0.0;
  double drive_amplitude_hz = 0.0;
  bool noisy = false;
  Eigen::MatrixXcd unitary;  // 8x8 protocol propagator; empty when noisy
};

// Assembles and simulates the full gate protocol at the effective-
// Hamiltonian level. Drive-induced coefficients are rescaled linearly
// from coeffs.reference_amplitude_hz to drive_amplitude_hz (0 = keep);
// single-qubit layers are instantaneous ideal unitaries with a 30 ns
// decoherence idle each. Single-qubit Z frame terms are removed by
// exact virtual-Z correction. Fidelity: GHZ preparation uses the state
// fidelity from |000>; gates use the average gate fidelity (no noise)
// or the mean state fidelity over 20 probe states (with noise).
SimulationResult run_protocol(const GateTarget& target,
                              const PauliCoefficients& coeffs,
                              const NoiseModel& noise,
                              double drive_amplitude_hz = 0.0,
                              const LindbladOptions& lopt = {});

struct SweepPoint {
  double amplitude_hz = 0.0;
  double fidelity = 0.0;
  double duration_s = 0.0;
  bool failed = false;
  std::string error;
};

struct SweepResult {
  SimulationResult best;
  std::vector<SweepPoint> curve;
  long failures = 0;
};

// run_protocol per amplitude; argmax fidelity with the full curve kept.
// Throws NumericError when every grid point fails.
SweepResult amplitude_sweep(const GateTarget& target,
                            const PauliCoefficients& coeffs,
                            const NoiseModel& noise,
                            const std::vector<double>& amp_grid_hz);

struct RobustnessOptions {
  int n_samples = 32;
  unsigned long long base_seed = 1;
  double omega_ref_hz = 60e6;
  int cutoff = 4;
  double drive_amplitude_hz = 0.0;  // 0 = the optimization amplitude
  NoiseModel noise = NoiseModel::none();
};

struct RobustnessEnvelope {
  double fidelity_min = 0.0;
  double fidelity_median = 0.0;
  double fidelity_max = 0.0;
  std::vector<double> fidelities;  // successful samples, sample order
  long sample_failures = 0;
};

// Uniform perturbations of the optimized point: each A_j scaled by
// 1 + U(-0.02, 0.02), each coupler frequency shifted by U(-5, +5) MHz.
// Coefficients are recomputed nonperturbatively per sample. Per-sample
// RNG seed = base_seed + sample index, so the envelope is reproducible
// and order-independent.
RobustnessEnvelope robustness_sweep(const GateTarget& target,
                                    const CircuitSpec& spec,
                                    const ParameterVector& params,
                                    const RobustnessOptions& options);

// Average gate fidelity (|Tr(U^dag V)|^2 + d) / (d (d + 1)).
double average_gate_fidelity(const Eigen::MatrixXcd& u_ideal,
                             const Eigen::MatrixXcd& u_actual);

// 8 computational states plus |+>, |->, |+i>, |-i> on each qubit (the
// other two in |0>): the 20-state probe set of the noisy-gate metric.
const std::vector<Eigen::VectorXcd>& probe_states();

}  // namespace pcr
