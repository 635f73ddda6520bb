#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "pcr/boson.hpp"
#include "pcr/errors.hpp"

using namespace pcr;

namespace {

ProductBasis five_modes(int cutoff, int local_dim = 8) {
  std::vector<ModeSpec> modes;
  for (int j = 0; j < 5; ++j)
    modes.push_back({"m" + std::to_string(j),
                     j < 3 ? ModeKind::qubit : ModeKind::coupler, local_dim});
  return build_basis(std::move(modes), cutoff);
}

// Independent count of occupation tuples with sum <= cutoff (stars and
// bars, local dims assumed non-binding).
long n_choose_k(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("basis dimension: 5 modes, global cutoff 4 gives 126 states") {
  const ProductBasis b = five_modes(4);
  CHECK(b.dim() == 126);
  CHECK(b.dim() == n_choose_k(9, 5));  // C(5+4, 5)
}

TEST_CASE("basis dimension: cutoff 5 gives 252 states") {
  CHECK(five_modes(5).dim() == 252);
}

TEST_CASE("basis: single mode at cutoff 0 is just the vacuum") {
  const ProductBasis b = build_basis({{"q", ModeKind::qubit, 4}}, 0);
  CHECK(b.dim() == 1);
  CHECK(b.state(0) == std::vector<int>{0});
}

TEST_CASE("basis: 3 modes, cutoff 1 holds the vacuum plus one excitation each") {
  std::vector<ModeSpec> modes = {{"a", ModeKind::qubit, 4},
                                 {"b", ModeKind::qubit, 4},
                                 {"c", ModeKind::qubit, 4}};
  const ProductBasis b = build_basis(modes, 1);
  REQUIRE(b.dim() == 4);
  // Lexicographic by occupation tuple.
  CHECK(b.state(0) == std::vector<int>{0, 0, 0});
  CHECK(b.state(1) == std::vector<int>{0, 0, 1});
  CHECK(b.state(2) == std::vector<int>{0, 1, 0});
  CHECK(b.state(3) == std::vector<int>{1, 0, 0});
}

TEST_CASE("basis: per-mode local_dim caps occupations below the global cutoff") {
  const ProductBasis b = build_basis({{"q", ModeKind::qubit, 2}}, 4);
  CHECK(b.dim() == 2);  // levels 0, 1 only
}

TEST_CASE("basis: deterministic ordering and index lookup") {
  const ProductBasis a = five_modes(4);
  const ProductBasis b = five_modes(4);
  REQUIRE(a.dim() == b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    CHECK(a.state(i) == b.state(i));
    CHECK(a.index_of(a.state(i)) == i);
  }
  CHECK(a.index_of({9, 9, 9, 9, 9}) == -1);
}

TEST_CASE("basis: empty mode list and negative cutoff rejected") {
  CHECK_THROWS_AS(build_basis({}, 2), ConfigError);
  CHECK_THROWS_AS(build_basis({{"q", ModeKind::qubit, 2}}, -1), ConfigError);
}

TEST_CASE("lowering: sqrt(n) matrix elements on a single mode") {
  const ProductBasis b = build_basis({{"q", ModeKind::qubit, 3}}, 2);
  const Matrix low = lowering(b, 0);
  // b|2> = sqrt(2)|1>, b|1> = |0>, b|0> = 0.
  const int i0 = b.index_of({0}), i1 = b.index_of({1}), i2 = b.index_of({2});
  CHECK(std::abs(low(i1, i2) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(low(i0, i1) - 1.0) < 1e-15);
  CHECK(low.col(i0).norm() == 0.0);  // annihilates vacuum
}

TEST_CASE("lowering: two modes at cutoff 1, mode-0 operator kernel") {
  std::vector<ModeSpec> modes = {{"a", ModeKind::qubit, 4},
                                 {"b", ModeKind::qubit, 4}};
  const ProductBasis b = build_basis(modes, 1);
  const Matrix low = lowering(b, 0);
  const int i00 = b.index_of({0, 0}), i10 = b.index_of({1, 0}),
            i01 = b.index_of({0, 1});
  CHECK(std::abs(low(i00, i10) - 1.0) < 1e-15);
  CHECK(low.col(i01).norm() == 0.0);
  CHECK(low.col(i00).norm() == 0.0);
  CHECK_THROWS_AS(lowering(b, 7), ConfigError);
}

TEST_CASE("raising is exactly the adjoint of lowering") {
  const ProductBasis b = five_modes(4);
  for (int m = 0; m < 5; ++m) {
    const Matrix low = lowering(b, m);
    CHECK((low.adjoint() - low.adjoint()).norm() == 0.0);  // tautology guard
    // n = b^dag b reproduces number_op on every basis state.
    const Matrix n = low.adjoint() * low;
    CHECK((n - number_op(b, m)).norm() < 1e-12);
  }
}

TEST_CASE("commutator [b, b^dag] = 1 on states with headroom in the basis") {
  const ProductBasis b = five_modes(4);
  const int m = 2;
  const Matrix low = lowering(b, m);
  const Matrix comm = low * low.adjoint() - low.adjoint() * low;
  for (int i = 0; i < b.dim(); ++i) {
    const auto& occ = b.state(i);
    int total = 0;
    for (int v : occ) total += v;
    const bool headroom = total + 1 <= b.max_total_excitation() &&
                          occ[m] + 1 < b.mode(m).local_dim;
    if (headroom) CHECK(std::abs(comm(i, i) - 1.0) < 1e-12);
  }
}

TEST_CASE("number_op is diagonal with the occupation as entry") {
  const ProductBasis b = five_modes(4);
  const Matrix n = number_op(b, 1);
  const int idx = b.index_of({0, 2, 0, 0, 0});
  REQUIRE(idx >= 0);
  CHECK(std::abs(n(idx, idx) - 2.0) < 1e-15);
  CHECK((n - Matrix(n.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("quadratic_pair equals the untruncated product projected to the basis") {
  const ProductBasis b = five_modes(3, 4);
  // Against a roomier basis where the plain product does not truncate.
  std::vector<ModeSpec> big_modes;
  for (int j = 0; j < 5; ++j)
    big_modes.push_back({"m" + std::to_string(j),
                         j < 3 ? ModeKind::qubit : ModeKind::coupler, 9});
  const ProductBasis big = build_basis(big_modes, 8);
  const Matrix ref = lowering(big, 0).adjoint() * lowering(big, 3);
  const Matrix got = quadratic_pair(b, 3, false, 0, true);
  for (int c = 0; c < b.dim(); ++c)
    for (int r = 0; r < b.dim(); ++r) {
      const int rr = big.index_of(b.state(r)), cc = big.index_of(b.state(c));
      CHECK(std::abs(got(r, c) - ref(rr, cc)) < 1e-13);
    }
  CHECK_THROWS_AS(quadratic_pair(b, 1, false, 1, true), ConfigError);
}

TEST_CASE("quadratic_pair conjugate flags give exact adjoints") {
  const ProductBasis b = five_modes(4);
  const Matrix hop = quadratic_pair(b, 0, false, 3, true);
  const Matrix hop_dag = quadratic_pair(b, 0, true, 3, false);
  CHECK((hop.adjoint() - hop_dag).norm() == 0.0);
}

TEST_CASE("embed_product: identity factors project onto the computational subspace") {
  const ProductBasis b = five_modes(4);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Matrix p = embed_product(b, {id, id, id});
  CHECK((p * p - p).norm() < 1e-12);  // projector
  int rank = 0;
  for (int i = 0; i < b.dim(); ++i) rank += static_cast<int>(std::real(p(i, i)) + 0.5);
  CHECK(rank == 8);
}

TEST_CASE("embed_product: Z on the first qubit flips the sign of |100;00>") {
  const ProductBasis b = five_modes(4);
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Matrix op = embed_product(b, {z, id, id});
  const int idx = b.index_of({1, 0, 0, 0, 0});
  CHECK(std::abs(op(idx, idx) - complexd(-1.0)) < 1e-15);
  const int gnd = b.index_of({0, 0, 0, 0, 0});
  CHECK(std::abs(op(gnd, gnd) - complexd(1.0)) < 1e-15);
  CHECK_THROWS_AS(embed_product(b, {z, id}), ConfigError);
}

TEST_CASE("matrix_exponential: H = 0 gives the identity") {
  const Matrix h = Matrix::Zero(6, 6);
  CHECK((matrix_exponential(h, 1.0) - Matrix::Identity(6, 6)).norm() < 1e-14);
}

TEST_CASE("matrix_exponential: Euler identity exp(-i pi X / 2) = -i X") {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const Matrix u = matrix_exponential(M_PI / 2.0 * x, 1.0);
  const Matrix expect = complexd(0.0, -1.0) * x;
  CHECK((u - expect).norm() < 1e-12);
}

TEST_CASE("matrix_exponential: unitarity and inverse on random Hermitian input") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;
  Matrix a(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) a(i, j) = complexd(dist(rng), dist(rng));
  const Matrix h = 0.5 * (a + a.adjoint()) * 1e9;  // rad/s scale
  const Matrix u = matrix_exponential(h, 1e-9);
  CHECK((u.adjoint() * u - Matrix::Identity(8, 8)).norm() < 1e-10);
  CHECK((u * matrix_exponential(h, -1e-9) - Matrix::Identity(8, 8)).norm() <
        1e-10);
}

TEST_CASE("matrix_exponential rejects non-Hermitian input") {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 1) = 1.0;  // no conjugate partner
  CHECK_THROWS_AS(matrix_exponential(h, 1.0), NumericError);
}

TEST_CASE("hermiticity_defect: zero for Hermitian, positive otherwise") {
  Matrix h(2, 2);
  h << 1.0, complexd(0, 2), complexd(0, -2), 3.0;
  CHECK(hermiticity_defect(h) == 0.0);
  h(0, 1) = 5.0;
  CHECK(hermiticity_defect(h) > 0.1);
}
