#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pcr/boson.hpp"
#include "pcr/pauli.hpp"

namespace pcr {

enum class GateKind { GHZ, iToffoli, CCNOT, CZZ };

std::string gate_name(GateKind kind);
GateKind gate_from_name(const std::string& name);

// Logical ordering |q1 q2 q3> throughout this layer. The physical basis
// |Q1, Q3, Q2> coincides with it under the mapping (q1, q2, q3) ->
// (Q1, Q3, Q2), so Pauli-word matrices are shared with pcr/pauli.hpp.

// U_ZZX(theta) = exp(-i theta/2 Z x Z x X), and the IZX / two-qubit Z1X2
// analogues used by the preparation sequences.
Eigen::MatrixXcd u_zzx(double theta);
Eigen::MatrixXcd u_izx(double theta);
Eigen::Matrix4cd u_z1x2(double theta);

// S3 H2 H1 U_ZZX(pi/2) H1 H2: maps |000> to (|000> + |111>)/sqrt(2).
Eigen::MatrixXcd ghz_sequence();
// S2 H1 U_Z1X2(pi/2) H1: maps |00> to (|00> + |11>)/sqrt(2).
Eigen::Matrix4cd bell_sequence();

// Ideal gate Hamiltonians (dimensionless; exp(-iH) is the gate).
Eigen::MatrixXcd ccnot_hamiltonian();
Eigen::MatrixXcd itoffoli_hamiltonian();
Eigen::MatrixXcd czz_hamiltonian();

// H3 U_IZX(pi/2) U_ZZX(-pi/2) H3 -- equals exp(-i H_CZZ) up to a global
// phase.
Eigen::MatrixXcd czz_decomposition();

// Ideal unitary realized by each protocol (logical ordering). For GHZ
// this is the full preparation sequence.
Eigen::MatrixXcd ideal_unitary(GateKind kind);

// Frobenius distance minimized over a global phase.
double phase_aligned_distance(const Eigen::MatrixXcd& u,
                              const Eigen::MatrixXcd& v);

// Drift of an ideal GHZ state under the static two-body + ZZZ Hamiltonian
// for a hold time tau_p, plus the compensating single-qubit Z angle.
struct GhzDrift {
  Eigen::VectorXcd state;       // 8-component drifted state
  // Angle theta such that diag(e^{+i theta}, e^{-i theta}) on any one
  // qubit restores the ideal GHZ state; equals 2*pi*alpha_ZZZ*tau_p.
  double correction_angle_rad;
};
GhzDrift static_ghz_drift(double alpha_zzz_hz,
                          const std::array<double, 3>& alpha_twobody_hz,
                          double tau_p_s);

// Wanted/unwanted coefficient pattern consumed by the optimizer cost.
// Relations are pairwise against the pivot word: alpha_word = sign *
// alpha_pivot; the pivot itself is pinned to alpha_opt.
struct TargetRelation {
  std::string word;
  double sign;  // +1 or -1
};

struct GateTarget {
  GateKind kind = GateKind::GHZ;
  std::string pivot = "ZZX";
  double alpha_opt_hz = 0.5e6;  // target interaction strength
  std::vector<TargetRelation> relations;
  std::vector<std::string> unwanted;

  std::vector<std::string> wanted_words() const;

  // Standard presets. The iToffoli sign pattern follows the ideal
  // Hamiltonian (+IIX +ZZX -IZX -ZIX); `itoffoli_alternate` is the
  // flipped-IIX variant (alpha_IIX = -alpha_ZZX).
  static GateTarget for_gate(GateKind kind, double alpha_opt_hz = 0.5e6);
  static GateTarget itoffoli_alternate(double alpha_opt_hz = 0.5e6);
};

}  // namespace pcr
