#include "pcr/effective.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>

#include "pcr/errors.hpp"

namespace pcr {

namespace {

// Row indices of the 8 computational states in the full basis, ordered
// by s = 4*q1 + 2*q3 + q2 (basis |Q1, Q3, Q2>).
std::array<int, 8> computational_rows(const ProductBasis& basis) {
  std::array<int, 8> rows{};
  for (int s = 0; s < 8; ++s) {
    const int q1 = (s >> 2) & 1, q3 = (s >> 1) & 1, q2 = s & 1;
    const int idx = basis.index_of({q1, q2, q3, 0, 0});
    if (idx < 0)
      throw ConfigError("block_diagonalize: computational state outside basis");
    rows[s] = idx;
  }
  return rows;
}

}  // namespace

std::pair<Eigen::MatrixXcd, BlockAssignment> block_diagonalize(
    const Matrix& h_rot, const ProductBasis& basis) {
  require_hermitian(h_rot, 1e-10, "block_diagonalize");
  const auto rows = computational_rows(basis);

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h_rot + h_rot.adjoint()));
  if (es.info() != Eigen::Success)
    throw NumericError("block_diagonalize: eigendecomposition failed");
  const Matrix& vec = es.eigenvectors();
  const Eigen::VectorXd& val = es.eigenvalues();
  const int dim = basis.dim();

  // Greedy assignment, globally ordered by descending best overlap.
  // Ties break toward the lowest eigenvalue index.
  BlockAssignment assign;
  std::array<bool, 8> state_done{};
  std::vector<bool> eig_done(dim, false);
  for (int round = 0; round < 8; ++round) {
    int best_s = -1, best_k = -1;
    double best = -1.0;
    for (int s = 0; s < 8; ++s) {
      if (state_done[s]) continue;
      for (int k = 0; k < dim; ++k) {
        if (eig_done[k]) continue;
        const double ov = std::norm(vec(rows[s], k));
        if (ov > best + 1e-15 ||
            (std::abs(ov - best) <= 1e-15 && best_k >= 0 && k < best_k)) {
          best = ov;
          best_s = s;
          best_k = k;
        }
      }
    }
    state_done[best_s] = true;
    eig_done[best_k] = true;
    assign.eigen_index[best_s] = best_k;
    assign.overlap[best_s] = best;
    if (best < 0.25)
      throw HybridizationError(
          "block_diagonalize: assigned overlap " + std::to_string(best) +
          " for computational state " + std::to_string(best_s));
    if (best < 0.5) assign.low_overlap_warning = true;
  }

  // Overlap block A[s, m] = <s | psi_{k_m}>.
  Eigen::MatrixXcd a(8, 8);
  for (int s = 0; s < 8; ++s)
    for (int m = 0; m < 8; ++m) a(s, m) = vec(rows[s], assign.eigen_index[m]);

  // Loewdin symmetric orthonormalization, W = A (A^dag A)^{-1/2}, via the
  // polar decomposition of A.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd w = svd.matrixU() * svd.matrixV().adjoint();

  Eigen::VectorXd d(8);
  for (int m = 0; m < 8; ++m) d(m) = val(assign.eigen_index[m]);
  Eigen::MatrixXcd h_eff = w * d.asDiagonal() * w.adjoint();
  h_eff = 0.5 * (h_eff + h_eff.adjoint()).eval();
  return {h_eff, assign};
}

Eigen::MatrixXcd secular_sector_reduction(const Eigen::MatrixXcd& h_eff) {
  if (h_eff.rows() != 8 || h_eff.cols() != 8)
    throw ConfigError("secular_sector_reduction: expected an 8x8 matrix");
  require_hermitian(h_eff, 1e-9, "secular_sector_reduction");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (h_eff + h_eff.adjoint()));
  if (es.info() != Eigen::Success)
    throw NumericError("secular_sector_reduction: eigendecomposition failed");
  const Eigen::MatrixXcd& vec = es.eigenvectors();
  const Eigen::VectorXd& val = es.eigenvalues();

  // Greedy assignment of two eigenvectors per sector, globally ordered by
  // descending sector overlap |<2t|psi>|^2 + |<2t+1|psi>|^2.
  std::array<std::array<int, 2>, 4> members{};
  std::array<int, 4> filled{};
  std::array<bool, 8> eig_done{};
  for (int round = 0; round < 8; ++round) {
    int best_t = -1, best_k = -1;
    double best = -1.0;
    for (int t = 0; t < 4; ++t) {
      if (filled[t] == 2) continue;
      for (int k = 0; k < 8; ++k) {
        if (eig_done[k]) continue;
        const double ov =
            std::norm(vec(2 * t, k)) + std::norm(vec(2 * t + 1, k));
        if (ov > best + 1e-15 ||
            (std::abs(ov - best) <= 1e-15 && best_k >= 0 && k < best_k)) {
          best = ov;
          best_t = t;
          best_k = k;
        }
      }
    }
    if (best < 0.5)
      throw HybridizationError(
          "secular_sector_reduction: sector overlap " + std::to_string(best) +
          " for sector " + std::to_string(best_t));
    members[best_t][filled[best_t]++] = best_k;
    eig_done[best_k] = true;
  }

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(8, 8);
  for (int t = 0; t < 4; ++t) {
    Eigen::MatrixXcd a(2, 2);
    Eigen::Vector2d d;
    for (int m = 0; m < 2; ++m) {
      const int k = members[t][m];
      a(0, m) = vec(2 * t, k);
      a(1, m) = vec(2 * t + 1, k);
      d(m) = val(k);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXcd w = svd.matrixU() * svd.matrixV().adjoint();
    out.block<2, 2>(2 * t, 2 * t) = w * d.asDiagonal() * w.adjoint();
  }
  return 0.5 * (out + out.adjoint());
}

PauliCoefficients pauli_project(const Eigen::MatrixXcd& h_eff,
                                double imag_tol) {
  if (h_eff.rows() != 8 || h_eff.cols() != 8)
    throw ConfigError("pauli_project: expected an 8x8 matrix");
  require_hermitian(h_eff, 1e-9, "pauli_project");
  PauliCoefficients c;
  for (const auto& word : all_pauli_words()) {
    const complexd tr = (pauli_word_matrix(word) * h_eff).trace() / 8.0;
    if (std::abs(tr.imag()) > imag_tol)
      throw NumericError("pauli_project: imaginary residue in alpha_" + word);
    c.set(word, tr.real());
  }
  return c;
}

PauliCoefficients coefficients_for(const CircuitSpec& spec,
                                   const DriveSpec& drive, int cutoff) {
  const ProductBasis basis = default_basis(cutoff);
  const Matrix h_rot = rotating_frame_rwa(spec, drive, basis);
  auto [h_eff, assign] = block_diagonalize(h_rot, basis);
  // Projection in Hz; 1 Hz imaginary-residue budget per the contract.
  // Ansatz words come from the sector-reduced matrix, leakage words from
  // the raw computational block.
  PauliCoefficients c = pauli_project(h_eff / kTwoPi, 1.0);
  const PauliCoefficients sec =
      pauli_project(secular_sector_reduction(h_eff) / kTwoPi, 1.0);
  for (const auto& word : ansatz_words()) c.set(word, sec.get(word));
  c.reference_amplitude_hz = drive.reference_amplitude_hz;
  c.min_assignment_overlap =
      *std::min_element(assign.overlap.begin(), assign.overlap.end());
  return c;
}

}  // namespace pcr
