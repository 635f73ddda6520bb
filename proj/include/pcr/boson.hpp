#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace pcr {

using Matrix = Eigen::MatrixXcd;
using complexd = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class ModeKind { qubit, coupler };

struct ModeSpec {
  std::string label;
  ModeKind kind = ModeKind::qubit;
  int local_dim = 2;  // per-mode level cap
};

// Tensor product of truncated bosonic modes with a global cap on the
// total excitation number. States are the lexicographically ordered
// occupation tuples (n_0, ..., n_{M-1}) with sum(n) <= cutoff and
// n_j < local_dim(j).
class ProductBasis {
 public:
  ProductBasis(std::vector<ModeSpec> modes, int max_total_excitation);

  int dim() const { return static_cast<int>(states_.size()); }
  int n_modes() const { return static_cast<int>(modes_.size()); }
  const ModeSpec& mode(int j) const { return modes_.at(j); }
  const std::vector<ModeSpec>& modes() const { return modes_; }
  int max_total_excitation() const { return cutoff_; }

  const std::vector<std::vector<int>>& states() const { return states_; }
  const std::vector<int>& state(int idx) const { return states_.at(idx); }

  // Index of an occupation tuple, or -1 if it is outside the basis.
  int index_of(const std::vector<int>& occupation) const;

 private:
  std::vector<ModeSpec> modes_;
  int cutoff_;
  std::vector<std::vector<int>> states_;
  std::map<std::vector<int>, int> index_;
};

ProductBasis build_basis(std::vector<ModeSpec> modes, int max_total_excitation);

// Annihilation operator b_j in the truncated basis: <..,n-1,..|b|..,n,..> =
// sqrt(n). Transitions leaving the basis are dropped.
Matrix lowering(const ProductBasis& basis, int mode_index);

// Number operator n_j = b_j^dag b_j (diagonal).
Matrix number_op(const ProductBasis& basis, int mode_index);

// Product of one ladder operator on each of two distinct modes (b or
// b^dag per the raise flags), built as the projection of the untruncated
// operator onto the basis. Unlike a product of two truncated matrices,
// no element is lost to an out-of-basis intermediate state, so
// Hermitian-conjugate pairs stay exact adjoints.
Matrix quadratic_pair(const ProductBasis& basis, int mode_a, bool raise_a,
                      int mode_b, bool raise_b);

// Embeds a product of 2x2 operators acting on levels {0,1} of each qubit
// mode (factors given in qubit-mode order); coupler modes and levels >= 2
// are projected out.
Matrix embed_product(const ProductBasis& basis,
                     const std::vector<Eigen::Matrix2cd>& qubit_factors);

// exp(-i H t) for Hermitian H (entries in rad/s, t in seconds), via
// eigendecomposition.
Matrix matrix_exponential(const Matrix& h, double t);

// Relative Frobenius deviation from Hermiticity.
double hermiticity_defect(const Matrix& m);

void require_hermitian(const Matrix& m, double tol, const std::string& what);

}  // namespace pcr
