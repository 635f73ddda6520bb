#include "pcr/lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

#include "pcr/errors.hpp"

namespace pcr {

NoiseModel NoiseModel::none() {
  NoiseModel n;
  n.t1_s = {0.0, 0.0, 0.0};
  n.t2_s = {0.0, 0.0, 0.0};
  return n;
}

bool NoiseModel::is_none() const {
  for (int j = 0; j < 3; ++j)
    if (t1_s[j] > 0.0 || t2_s[j] > 0.0) return false;
  return true;
}

double NoiseModel::pure_dephasing_rate(int qubit) const {
  const double t1 = t1_s.at(qubit), t2 = t2_s.at(qubit);
  if (t2 <= 0.0) return 0.0;
  const double rate = 1.0 / t2 - (t1 > 0.0 ? 1.0 / (2.0 * t1) : 0.0);
  return std::max(rate, 0.0);
}

void NoiseModel::validate() const {
  for (int j = 0; j < 3; ++j) {
    if (t1_s[j] < 0.0 || t2_s[j] < 0.0)
      throw ConfigError("NoiseModel: negative coherence time");
    if (t1_s[j] > 0.0 && t2_s[j] > 2.0 * t1_s[j] * (1.0 + 1e-12))
      throw ConfigError("NoiseModel: T2 exceeds 2*T1 for qubit " +
                        std::to_string(j + 1));
  }
}

std::vector<Matrix> computational_collapse_ops(const NoiseModel& noise) {
  noise.validate();
  std::vector<Matrix> ops;
  // Tensor slots of |Q1, Q3, Q2>: slot 0 = Q1, slot 1 = Q3, slot 2 = Q2.
  const std::array<int, 3> slot_of_qubit = {0, 2, 1};
  Eigen::Matrix2cd lower2 = Eigen::Matrix2cd::Zero();
  lower2(0, 1) = 1.0;
  Eigen::Matrix2cd num2 = Eigen::Matrix2cd::Zero();
  num2(1, 1) = 1.0;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  auto on_slot = [&](const Eigen::Matrix2cd& u, int slot) -> Matrix {
    const Eigen::Matrix2cd& a = slot == 0 ? u : id;
    const Eigen::Matrix2cd& b = slot == 1 ? u : id;
    const Eigen::Matrix2cd& c = slot == 2 ? u : id;
    return Eigen::kroneckerProduct(a, Eigen::kroneckerProduct(b, c).eval())
        .eval();
  };

  for (int q = 0; q < 3; ++q) {
    const int slot = slot_of_qubit[q];
    if (noise.t1_s[q] > 0.0)
      ops.push_back(std::sqrt(1.0 / noise.t1_s[q]) * on_slot(lower2, slot));
    const double gphi = noise.pure_dephasing_rate(q);
    if (gphi > 0.0)
      ops.push_back(std::sqrt(2.0 * gphi) * on_slot(num2, slot));
  }
  return ops;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0,
                 kB4 = 125.0 / 192.0, kB5 = -2187.0 / 6784.0,
                 kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;

}  // namespace

std::vector<Matrix> evolve_lindblad(const HamiltonianFn& hamiltonian,
                                    const std::vector<Matrix>& collapse_ops,
                                    const Matrix& rho0,
                                    const std::vector<double>& t_grid,
                                    const LindbladOptions& options) {
  if (t_grid.empty()) throw ConfigError("evolve_lindblad: empty time grid");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] < t_grid[i - 1])
      throw ConfigError("evolve_lindblad: time grid must be ascending");

  const int d = static_cast<int>(rho0.rows());
  std::vector<Matrix> ldag_l;
  ldag_l.reserve(collapse_ops.size());
  for (const auto& l : collapse_ops) ldag_l.push_back(l.adjoint() * l);

  const complexd mi(0.0, -1.0);
  auto rhs = [&](double t, const Matrix& rho) -> Matrix {
    const Matrix h = hamiltonian(t);
    Matrix drho = mi * (h * rho - rho * h);
    for (size_t k = 0; k < collapse_ops.size(); ++k) {
      const Matrix& l = collapse_ops[k];
      drho += l * rho * l.adjoint() -
              0.5 * (ldag_l[k] * rho + rho * ldag_l[k]);
    }
    return drho;
  };

  std::vector<Matrix> out;
  out.reserve(t_grid.size());
  Matrix rho = rho0;
  double t = t_grid.front();
  out.push_back(rho);

  const double total_span = t_grid.back() - t_grid.front();
  double h = total_span > 0.0 ? total_span / 1e3 : 0.0;
  if (options.max_step_s > 0.0) h = std::min(h, options.max_step_s);

  Matrix k1 = rhs(t, rho);
  for (size_t gi = 1; gi < t_grid.size(); ++gi) {
    const double t_target = t_grid[gi];
    int rejects_in_a_row = 0;
    while (t < t_target - 1e-18) {
      double step = std::min(h, t_target - t);
      if (options.max_step_s > 0.0) step = std::min(step, options.max_step_s);

      const Matrix k2 = rhs(t + kC2 * step, rho + step * (kA21 * k1));
      const Matrix k3 =
          rhs(t + kC3 * step, rho + step * (kA31 * k1 + kA32 * k2));
      const Matrix k4 = rhs(t + kC4 * step,
                            rho + step * (kA41 * k1 + kA42 * k2 + kA43 * k3));
      const Matrix k5 =
          rhs(t + kC5 * step, rho + step * (kA51 * k1 + kA52 * k2 +
                                            kA53 * k3 + kA54 * k4));
      const Matrix k6 =
          rhs(t + step, rho + step * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                                      kA64 * k4 + kA65 * k5));
      const Matrix rho_new =
          rho + step * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      const Matrix k7 = rhs(t + step, rho_new);
      const Matrix err_m = step * (kE1 * k1 + kE3 * k3 + kE4 * k4 +
                                   kE5 * k5 + kE6 * k6 + kE7 * k7);

      const double scale =
          options.abs_tol +
          options.rel_tol * std::max(rho.norm(), rho_new.norm());
      const double err = err_m.norm() / (scale * std::sqrt(double(d)));

      if (err <= 1.0) {
        t += step;
        rho = rho_new;
        k1 = k7;  // FSAL
        rejects_in_a_row = 0;
        const double grow =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h = step * std::clamp(grow, 0.2, 5.0);
      } else {
        h = step * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (++rejects_in_a_row > 60)
          throw NumericError(
              "evolve_lindblad: step control failed at t = " +
              std::to_string(t) + " s (err " + std::to_string(err) + ")");
      }
    }
    // Symmetrize against integration roundoff.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    out.push_back(rho);
    const double trace_err = std::abs(rho.trace().real() - 1.0);
    if (trace_err > 1e-6)
      throw NumericError("evolve_lindblad: trace loss " +
                         std::to_string(trace_err));
  }
  return out;
}

}  // namespace pcr
