#include "pcr/boson.hpp"

#include <Eigen/Eigenvalues>

#include "pcr/errors.hpp"

namespace pcr {

namespace {

void enumerate_states(const std::vector<ModeSpec>& modes, int cutoff,
                      std::vector<int>& current, int mode, int used,
                      std::vector<std::vector<int>>& out) {
  if (mode == static_cast<int>(modes.size())) {
    out.push_back(current);
    return;
  }
  const int cap = std::min(modes[mode].local_dim - 1, cutoff - used);
  for (int n = 0; n <= cap; ++n) {
    current[mode] = n;
    enumerate_states(modes, cutoff, current, mode + 1, used + n, out);
  }
  current[mode] = 0;
}

}  // namespace

ProductBasis::ProductBasis(std::vector<ModeSpec> modes,
                           int max_total_excitation)
    : modes_(std::move(modes)), cutoff_(max_total_excitation) {
  if (modes_.empty()) throw ConfigError("ProductBasis: empty mode list");
  if (cutoff_ < 0) throw ConfigError("ProductBasis: negative excitation cutoff");
  for (const auto& m : modes_) {
    const int min_dim = m.kind == ModeKind::qubit ? 2 : 1;
    if (m.local_dim < min_dim)
      throw ConfigError("ProductBasis: local_dim too small for mode '" +
                        m.label + "'");
  }
  std::vector<int> current(modes_.size(), 0);
  enumerate_states(modes_, cutoff_, current, 0, 0, states_);
  for (int i = 0; i < static_cast<int>(states_.size()); ++i)
    index_[states_[i]] = i;
}

int ProductBasis::index_of(const std::vector<int>& occupation) const {
  auto it = index_.find(occupation);
  return it == index_.end() ? -1 : it->second;
}

ProductBasis build_basis(std::vector<ModeSpec> modes,
                         int max_total_excitation) {
  return ProductBasis(std::move(modes), max_total_excitation);
}

Matrix lowering(const ProductBasis& basis, int mode_index) {
  if (mode_index < 0 || mode_index >= basis.n_modes())
    throw ConfigError("lowering: invalid mode index");
  Matrix b = Matrix::Zero(basis.dim(), basis.dim());
  for (int col = 0; col < basis.dim(); ++col) {
    std::vector<int> occ = basis.state(col);
    const int n = occ[mode_index];
    if (n == 0) continue;
    occ[mode_index] = n - 1;
    const int row = basis.index_of(occ);
    if (row >= 0) b(row, col) = std::sqrt(static_cast<double>(n));
  }
  return b;
}

Matrix number_op(const ProductBasis& basis, int mode_index) {
  if (mode_index < 0 || mode_index >= basis.n_modes())
    throw ConfigError("number_op: invalid mode index");
  Matrix n = Matrix::Zero(basis.dim(), basis.dim());
  for (int i = 0; i < basis.dim(); ++i)
    n(i, i) = static_cast<double>(basis.state(i)[mode_index]);
  return n;
}

Matrix embed_product(const ProductBasis& basis,
                     const std::vector<Eigen::Matrix2cd>& qubit_factors) {
  std::vector<int> qubit_modes;
  for (int j = 0; j < basis.n_modes(); ++j)
    if (basis.mode(j).kind == ModeKind::qubit) qubit_modes.push_back(j);
  if (qubit_factors.size() != qubit_modes.size())
    throw ConfigError("embed_product: factor count must match qubit modes (" +
                      std::to_string(qubit_modes.size()) + ")");

  Matrix op = Matrix::Zero(basis.dim(), basis.dim());
  for (int col = 0; col < basis.dim(); ++col) {
    const auto& occ = basis.state(col);
    bool in_subspace = true;
    for (int j = 0; j < basis.n_modes(); ++j) {
      const bool is_qubit = basis.mode(j).kind == ModeKind::qubit;
      if ((is_qubit && occ[j] > 1) || (!is_qubit && occ[j] != 0)) {
        in_subspace = false;
        break;
      }
    }
    if (!in_subspace) continue;
    // Expand the action of the factors on this computational state.
    const int nq = static_cast<int>(qubit_modes.size());
    std::vector<int> target(occ);
    // Iterate over all output bit patterns of the qubit modes.
    for (int pattern = 0; pattern < (1 << nq); ++pattern) {
      complexd amp = 1.0;
      for (int k = 0; k < nq; ++k) {
        const int out_bit = (pattern >> k) & 1;
        const int in_bit = occ[qubit_modes[k]];
        amp *= qubit_factors[k](out_bit, in_bit);
        target[qubit_modes[k]] = out_bit;
      }
      if (amp == complexd(0.0)) continue;
      const int row = basis.index_of(target);
      if (row >= 0) op(row, col) += amp;
    }
  }
  return op;
}

Matrix quadratic_pair(const ProductBasis& basis, int mode_a, bool raise_a,
                      int mode_b, bool raise_b) {
  if (mode_a < 0 || mode_a >= basis.n_modes() || mode_b < 0 ||
      mode_b >= basis.n_modes() || mode_a == mode_b)
    throw ConfigError("quadratic_pair: invalid mode pair");
  Matrix op = Matrix::Zero(basis.dim(), basis.dim());
  for (int col = 0; col < basis.dim(); ++col) {
    std::vector<int> occ = basis.state(col);
    double amp = 1.0;
    const int na = occ[mode_a];
    if (raise_a) {
      amp *= std::sqrt(static_cast<double>(na + 1));
      occ[mode_a] = na + 1;
    } else {
      if (na == 0) continue;
      amp *= std::sqrt(static_cast<double>(na));
      occ[mode_a] = na - 1;
    }
    const int nb = occ[mode_b];
    if (raise_b) {
      amp *= std::sqrt(static_cast<double>(nb + 1));
      occ[mode_b] = nb + 1;
    } else {
      if (nb == 0) continue;
      amp *= std::sqrt(static_cast<double>(nb));
      occ[mode_b] = nb - 1;
    }
    const int row = basis.index_of(occ);
    if (row >= 0) op(row, col) = amp;
  }
  return op;
}

double hermiticity_defect(const Matrix& m) {
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  return (m - m.adjoint()).norm() / norm;
}

void require_hermitian(const Matrix& m, double tol, const std::string& what) {
  if (hermiticity_defect(m) > tol)
    throw NumericError(what + ": matrix is not Hermitian (defect " +
                       std::to_string(hermiticity_defect(m)) + ")");
}

Matrix matrix_exponential(const Matrix& h, double t) {
  require_hermitian(h, 1e-10, "matrix_exponential");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success)
    throw NumericError("matrix_exponential: eigendecomposition failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (int i = 0; i < w.size(); ++i)
    phases(i) = std::exp(complexd(0.0, -w(i) * t));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace pcr
