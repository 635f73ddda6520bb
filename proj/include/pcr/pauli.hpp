#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "pcr/boson.hpp"

namespace pcr {

// Single-qubit Pauli matrices, letter order I, X, Y, Z.
const Eigen::Matrix2cd& pauli_matrix(char letter);

// 8x8 Pauli word A (x) B (x) C. Slot order follows the physical basis
// |Q1, Q3, Q2>: A acts on Q1, B on Q3, C on Q2 (the drive target).
Eigen::MatrixXcd pauli_word_matrix(const std::string& word);

// All 64 three-letter words "III".."ZZZ".
const std::vector<std::string>& all_pauli_words();

// The 16 words of the effective-Hamiltonian ansatz: A, B in {I, Z},
// C in {I, X, Y, Z}.
const std::vector<std::string>& ansatz_words();

// Real coefficients alpha_ABC of H_eff = sum alpha * (A x B x C),
// stored in Hz (ordinary frequency). The full 64-word table is kept;
// words outside the ansatz are leakage diagnostics.
struct PauliCoefficients {
  std::array<double, 64> alpha{};  // index: 16*a + 4*b + c, letters IXYZ=0..3

  // Drive amplitude (Hz) at which these coefficients were extracted; used
  // by the amplitude-scaling convention of the pulse simulator. Zero means
  // "not amplitude-tagged".
  double reference_amplitude_hz = 0.0;

  // Smallest assignment overlap seen during block diagonalization
  // (1.0 for exact/ideal coefficient sets).
  double min_assignment_overlap = 1.0;

  static int word_index(const std::string& word);
  double get(const std::string& word) const;
  void set(const std::string& word, double value_hz);

  // Reconstruct the 8x8 Hamiltonian sum alpha * word, in the units of
  // alpha (Hz unless rescaled by the caller).
  Eigen::MatrixXcd reconstruct() const;
};

// A word is drive-induced iff its target letter C is X or Y; those scale
// linearly with the drive amplitude. C in {I, Z} words are static.
bool is_drive_induced(const std::string& word);

// Words Z on exactly one qubit (ZII, IZI, IIZ): single-qubit frame terms.
bool is_single_qubit_z(const std::string& word);

}  // namespace pcr
