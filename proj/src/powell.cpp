#include "pcr/powell.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "pcr/errors.hpp"

namespace pcr {

ParameterBounds::ParameterBounds() {
  lower = Eigen::VectorXd(5);
  upper = Eigen::VectorXd(5);
  lower << 4.9, 4.9, -1.5, -0.1, -1.5;
  upper << 7.0, 7.0, 1.5, 0.1, 1.5;
}

ParameterBounds::ParameterBounds(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size())
    throw ConfigError("ParameterBounds: size mismatch");
  for (int i = 0; i < lower.size(); ++i)
    if (!(lower(i) < upper(i)))
      throw ConfigError("ParameterBounds: lower must be < upper");
}

bool ParameterBounds::contains(const Eigen::VectorXd& x) const {
  for (int i = 0; i < x.size(); ++i)
    if (x(i) < lower(i) || x(i) > upper(i)) return false;
  return true;
}

Eigen::VectorXd ParameterBounds::clip(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

namespace {

constexpr double kGolden = 0.61803398874989484820;

// Feasible step interval along direction d from x.
std::pair<double, double> step_interval(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& d,
                                        const ParameterBounds& b) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.size(); ++i) {
    if (d(i) == 0.0) continue;
    const double t1 = (b.lower(i) - x(i)) / d(i);
    const double t2 = (b.upper(i) - x(i)) / d(i);
    lo = std::max(lo, std::min(t1, t2));
    hi = std::min(hi, std::max(t1, t2));
  }
  if (!(lo <= 0.0)) lo = 0.0;
  if (!(hi >= 0.0)) hi = 0.0;
  return {lo, hi};
}

struct LineResult {
  double step = 0.0;
  double cost = 0.0;
};

// Bracketing + golden-section minimization of f(x + a d) over the
// bounds-feasible step interval. Always returns a step no worse than 0.
LineResult line_minimize(const Objective& f, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& d, const ParameterBounds& b,
                         double f_at_x, double h0, double rel_tol,
                         long& evals) {
  auto eval = [&](double a) {
    ++evals;
    return f(x + a * d);
  };
  const auto [alo, ahi] = step_interval(x, d, b);
  if (ahi - alo <= 0.0) return {0.0, f_at_x};

  const double dn = d.norm();
  if (dn == 0.0) return {0.0, f_at_x};
  double h = h0 / dn;

  // Probe both senses at shrinking scales; a probe clipped to a zero step
  // (start point pinned at a bound) is skipped, not mistaken for descent.
  double a1 = 0.0, f1 = f_at_x;
  for (double ah = h; ah >= h * 0x1p-16 && a1 == 0.0; ah *= 0.25) {
    for (const double sgn : {1.0, -1.0}) {
      const double cand = std::clamp(sgn * ah, alo, ahi);
      if (cand == 0.0) continue;
      const double fcand = eval(cand);
      if (fcand < f_at_x) {
        a1 = cand;
        f1 = fcand;
        break;
      }
    }
  }
  if (a1 == 0.0) return {0.0, f_at_x};

  // Expand geometrically until the cost turns upward or the bound is hit.
  double a0 = 0.0, f0 = f_at_x;
  double a2 = std::clamp(2.0 * a1, alo, ahi);
  double f2 = eval(a2);
  while (f2 < f1) {
    a0 = a1;
    f0 = f1;
    a1 = a2;
    f1 = f2;
    const double next = std::clamp(2.0 * a2, alo, ahi);
    if (next == a2) break;  // pinned at a bound
    a2 = next;
    f2 = eval(a2);
  }
  // Minimum bracketed in [min(a0,a2), max(a0,a2)] (or pinned at a bound).
  double lo = std::min(a0, a2), hi2 = std::max(a0, a2);
  if (f1 > f0 || f1 > f2) {
    // Bound-pinned monotone descent: return the best endpoint.
    if (f2 <= f1 && f2 <= f0) return {a2, f2};
    if (f0 <= f1) return {a0, f0};
  }

  // Golden-section refinement.
  double c = lo + (1.0 - kGolden) * (hi2 - lo);
  double dd = lo + kGolden * (hi2 - lo);
  double fc = eval(c);
  double fd = eval(dd);
  const double tol_floor = 1e-12;
  while (hi2 - lo > rel_tol * (std::abs(c) + std::abs(dd)) / 2.0 + tol_floor) {
    if (fc < fd) {
      hi2 = dd;
      dd = c;
      fd = fc;
      c = lo + (1.0 - kGolden) * (hi2 - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = dd;
      fc = fd;
      dd = lo + kGolden * (hi2 - lo);
      fd = eval(dd);
    }
  }
  const double a_best = fc < fd ? c : dd;
  const double f_best = std::min(fc, fd);
  if (f_best > f_at_x) return {0.0, f_at_x};
  return {a_best, f_best};
}

}  // namespace

PowellResult powell_minimize(const Objective& objective,
                             const Eigen::VectorXd& x0,
                             const ParameterBounds& bounds,
                             const PowellOptions& options) {
  const int n = static_cast<int>(x0.size());
  if (!bounds.contains(x0))
    throw ConfigError("powell_minimize: x0 violates the bounds");

  PowellResult res;
  res.evaluations = 0;

  Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(n, n);
  if (options.initial_directions.size() > 0) {
    if (options.initial_directions.rows() != n ||
        options.initial_directions.cols() != n)
      throw ConfigError("powell_minimize: initial_directions must be n x n");
    dirs = options.initial_directions;
  }
  Eigen::VectorXd xbase = x0;
  double fbase = objective(xbase);
  ++res.evaluations;
  res.trace.push_back({0, xbase, fbase});

  for (int it = 1; it <= options.max_iter; ++it) {
    Eigen::VectorXd x = xbase;
    double fx = fbase;
    int longest = 0;
    double longest_step = -1.0;

    for (int i = 0; i < n; ++i) {
      const LineResult lr =
          line_minimize(objective, x, dirs.col(i), bounds, fx,
                        options.initial_step, options.line_tol,
                        res.evaluations);
      x += lr.step * dirs.col(i);
      fx = lr.cost;
      const double len = std::abs(lr.step) * dirs.col(i).norm();
      if (len > longest_step) {
        longest_step = len;
        longest = i;
      }
    }

    const Eigen::VectorXd u = x - xbase;
    Eigen::VectorXd xnew = x;
    double fnew = fx;
    if (u.norm() > 0.0) {
      const LineResult lr =
          line_minimize(objective, xbase, u, bounds, fbase,
                        options.initial_step, options.line_tol,
                        res.evaluations);
      if (lr.cost <= fnew) {
        xnew = xbase + lr.step * u;
        fnew = lr.cost;
      }
      dirs.col(longest) = u;
    }

    // Keep the direction set well-conditioned; reset on collapse.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dirs);
    const double smin = svd.singularValues()(n - 1);
    const double smax = svd.singularValues()(0);
    if (smin <= 0.0 || smax / smin > 1e8)
      dirs = Eigen::MatrixXd::Identity(n, n);

    const double move = (xnew - xbase).norm();
    xbase = xnew;
    fbase = fnew;
    res.major_iterations = it;
    res.trace.push_back({it, xbase, fbase});
    if (move < options.eps) {
      res.converged = true;
      break;
    }
  }

  res.x = xbase;
  res.cost = fbase;
  return res;
}

}  // namespace pcr
