#pragma once

#include <array>
#include <utility>

#include "pcr/boson.hpp"
#include "pcr/circuit.hpp"
#include "pcr/pauli.hpp"

namespace pcr {

// Result of assigning one eigenvector of H_rot to each of the 8
// computational basis states |q1 q2 q3; 0 0>. Component s of the arrays
// corresponds to the computational state with bits (q1, q3, q2), i.e.
// s = 4*q1 + 2*q3 + q2 in the paper's |Q1, Q3, Q2> ordering.
struct BlockAssignment {
  std::array<int, 8> eigen_index{};
  std::array<double, 8> overlap{};
  bool low_overlap_warning = false;  // any overlap < 0.5
};

// Least-action block diagonalization: greedy maximum-overlap eigenvector
// assignment followed by Loewdin symmetric orthonormalization. The
// returned 8x8 Hamiltonian carries the units of h_rot and has exactly the
// assigned eigenvalues as its spectrum. Throws HybridizationError when
// any assigned overlap falls below 0.25.
std::pair<Eigen::MatrixXcd, BlockAssignment> block_diagonalize(
    const Matrix& h_rot, const ProductBasis& basis);

// Secular reduction of an 8x8 effective Hamiltonian onto the four
// two-dimensional (q1, q3) sectors {s, s+1}, s in {0, 2, 4, 6}. The drive
// frame leaves the two q2 states of a sector degenerate, so couplings
// within a sector are resonant and kept, while couplings between sectors
// are detuned by the large Z splittings and are folded into the sector
// blocks (least-action assignment per sector). The result is exactly of
// the {I,Z} x {I,Z} x {I,X,Y,Z} ansatz form and preserves the spectrum.
// Throws HybridizationError when an eigenvector cannot be attributed to a
// sector with summed overlap >= 0.5.
Eigen::MatrixXcd secular_sector_reduction(const Eigen::MatrixXcd& h_eff);

// Pauli projection alpha_ABC = Tr[(AxBxC) H] / 8 over all 64 words, in
// the units of h_eff. Rejects imaginary residue above tol (same units).
PauliCoefficients pauli_project(const Eigen::MatrixXcd& h_eff,
                                double imag_tol = 1.0);

// Full pipeline: rotating-frame RWA Hamiltonian at the given excitation
// cutoff, block diagonalization, Pauli projection. Coefficients in Hz.
// Ansatz words (A, B in {I, Z}) are read from the sector-reduced matrix
// so they match the first-order closed forms in the dispersive limit;
// words with A or B in {X, Y} are leakage diagnostics and are read from
// the unreduced 8x8 block.
PauliCoefficients coefficients_for(const CircuitSpec& spec,
                                   const DriveSpec& drive, int cutoff = 4);

}  // namespace pcr
