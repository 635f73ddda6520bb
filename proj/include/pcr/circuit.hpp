#pragma once

#include <array>
#include <optional>
#include <string>

#include "pcr/boson.hpp"

namespace pcr {

// Three transmons (Q1, Q2, Q3) and two harmonic couplers (C12, C23).
// All frequencies and couplings are ordinary frequencies in Hz; builders
// multiply by 2*pi at the boundary so Hamiltonian matrices carry rad/s.
struct CircuitSpec {
  std::array<double, 3> qubit_freq_hz{};   // omega_j / 2pi
  std::array<double, 3> anharm_hz{};       // delta_j / 2pi, negative
  std::array<double, 2> coupler_freq_hz{}; // omega_C12, omega_C23

  // g[qubit][coupler]; distant pairs (Q1-C23, Q3-C12) are normally zero.
  std::array<std::array<double, 2>, 3> qubit_coupler_g_hz{};

  // Direct capacitive couplings for pairs (1,2), (2,3), (1,3).
  std::array<double, 3> direct_g_hz{};

  std::array<double, 3> t1_s{};  // amplitude-damping times
  std::array<double, 3> t2_s{};  // total dephasing times

  void validate() const;

  // True when any g_jCr / |omega_Cr - omega_j| exceeds 0.2 (not an error).
  bool dispersive_advisory() const;

  // Index of the direct-coupling slot for qubit pair (i, j), 0-based.
  static int pair_slot(int i, int j);
};

struct DriveSpec {
  std::array<double, 3> amplitude_hz{};  // Omega_j
  std::array<double, 3> phase_rad{};     // phi_j
  double drive_freq_hz = 0.0;            // omega_dr
  double reference_amplitude_hz = 0.0;   // Omega
  std::array<double, 3> scale{};         // A_j = Omega_j / Omega

  // Builds amplitudes from the reference amplitude and scale factors;
  // negative A_j is folded into a pi phase shift.
  static DriveSpec from_scales(double reference_amplitude_hz,
                               const std::array<double, 3>& scale,
                               double drive_freq_hz);
};

// Dressed energies, transitions, detunings and effective couplings of
// the undriven circuit. Excitation-level arguments realize the overline
// notation: delta(i, j, 1, 0) is the detuning with qubit i's 1->2
// transition entering the difference.
struct DressedTable {
  std::array<std::array<double, 4>, 3> energy_hz{};      // E_j(n), n=0..3
  std::array<std::array<double, 3>, 3> transition_hz{};  // w_j(n), n=0..2

  // Detuning Delta_{i^(m) j^(n)} = w_i(m) - w_j(n), Hz. m/n = overline count.
  double delta(int i, int j, int m = 0, int n = 0) const;

  // Effective coupling of qubit pair (i, j) at excitation levels (m, n),
  // Hz. Pair (1, 3) has no shared coupler, so all variants equal g_13.
  double coupling(int i, int j, int m = 0, int n = 0) const;

 private:
  friend DressedTable dressed_table(const CircuitSpec& spec);
  // J values per ordered qubit pair and excitation levels (m, n) in {0,1}^2.
  double j_mn_[3][3][2][2] = {};
};

// Deterministic mode ordering (Q1, Q2, Q3, C12, C23) with uniform local
// dimension cutoff+1.
ProductBasis default_basis(int max_total_excitation);

// Lab-frame circuit Hamiltonian (rad/s): anharmonic qubits, harmonic
// couplers, full (b - b^dag)(a - a^dag) couplings.
Matrix build_system_hamiltonian(const CircuitSpec& spec,
                                const ProductBasis& basis);

// Dressed energies E_j(n) = n w + n(n-1) d/2 - sum_r g^2 n / D_Crj(n-1)
// and effective couplings J_ij(m, n).
DressedTable dressed_table(const CircuitSpec& spec);

// Lab-frame, time-dependent drive Hamiltonian (rad/s) at time t.
Matrix build_drive_hamiltonian(const DriveSpec& drive,
                               const ProductBasis& basis, double t);

// Time-independent rotating-frame Hamiltonian (rad/s): RWA couplings,
// frame at drive_freq via the total-number operator, static drive term.
// When drive.drive_freq_hz is zero it is set to the dressed Q2 frequency.
Matrix rotating_frame_rwa(const CircuitSpec& spec, const DriveSpec& drive,
                          const ProductBasis& basis);

}  // namespace pcr
