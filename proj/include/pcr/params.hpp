#pragma once

#include <Eigen/Dense>
#include <array>

namespace pcr {

// Optimization variables: coupler frequencies in GHz plus the three
// dimensionless drive scale factors A_j = Omega_j / Omega.
struct ParameterVector {
  double wc12_ghz = 0.0;
  double wc23_ghz = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  Eigen::VectorXd to_eigen() const {
    Eigen::VectorXd x(5);
    x << wc12_ghz, wc23_ghz, a1, a2, a3;
    return x;
  }
  static ParameterVector from_eigen(const Eigen::VectorXd& x) {
    return {x(0), x(1), x(2), x(3), x(4)};
  }
};

struct ParameterBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  ParameterBounds();  // defaults: wc in [4.9, 7.0] GHz, A1/A3 in [-1.5, 1.5], A2 in [-0.1, 0.1]
  ParameterBounds(Eigen::VectorXd lo, Eigen::VectorXd hi);

  bool contains(const Eigen::VectorXd& x) const;
  Eigen::VectorXd clip(const Eigen::VectorXd& x) const;
};

}  // namespace pcr
