#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pcr/boson.hpp"

namespace pcr {

// Per-qubit coherence times. Pure dephasing follows from
// 1/Tphi = 1/T2 - 1/(2 T1), which must be >= 0.
struct NoiseModel {
  std::array<double, 3> t1_s{};
  std::array<double, 3> t2_s{};

  static NoiseModel none();
  bool is_none() const;
  double pure_dephasing_rate(int qubit) const;  // 1/Tphi, 1/s
  void validate() const;
};

using HamiltonianFn = std::function<Matrix(double)>;  // rad/s

struct LindbladOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step_s = 0.0;  // 0 = unlimited
};

// Adaptive Dormand-Prince integration of
//   drho/dt = -i[H, rho] + sum_k (L rho L^dag - 1/2 {L^dag L, rho}).
// Returns rho at each requested grid time (t_grid ascending, first entry
// is the initial time of rho0).
std::vector<Matrix> evolve_lindblad(const HamiltonianFn& hamiltonian,
                                    const std::vector<Matrix>& collapse_ops,
                                    const Matrix& rho0,
                                    const std::vector<double>& t_grid,
                                    const LindbladOptions& options = {});

// Collapse operators on the 8-dim computational space |Q1, Q3, Q2>:
// sqrt(1/T1) b_j and sqrt(2/Tphi) n_j per qubit.
std::vector<Matrix> computational_collapse_ops(const NoiseModel& noise);

}  // namespace pcr
