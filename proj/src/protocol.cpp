#include "pcr/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pcr/errors.hpp"

namespace pcr {

double PulseShape::scale(double t) const {
  if (t <= 0.0 || t >= duration_s()) return 0.0;
  if (t < edge_s) return 0.5 * (1.0 - std::cos(M_PI * t / edge_s));
  if (t <= edge_s + flat_top_s) return 1.0;
  const double u = t - edge_s - flat_top_s;
  return 0.5 * (1.0 + std::cos(M_PI * u / edge_s));
}

double PulseShape::area_to(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= duration_s()) return area_s();
  if (t < edge_s)
    return 0.5 * (t - (edge_s / M_PI) * std::sin(M_PI * t / edge_s));
  if (t <= edge_s + flat_top_s) return 0.5 * edge_s + (t - edge_s);
  const double u = t - edge_s - flat_top_s;
  return 0.5 * edge_s + flat_top_s +
         0.5 * (u + (edge_s / M_PI) * std::sin(M_PI * u / edge_s));
}

PulseShape shape_for_angle(double theta_rad, double alpha_hz, double edge_s) {
  if (!(alpha_hz > 0.0) || !(theta_rad > 0.0))
    throw NumericError("shape_for_angle: needs positive angle and pivot");
  PulseShape shape;
  shape.edge_s = edge_s;
  const double area = theta_rad / (2.0 * kTwoPi * alpha_hz);
  shape.flat_top_s = area - edge_s;
  if (shape.flat_top_s < -1e-15)
    throw NumericError(
        "shape_for_angle: required pulse area is shorter than the rise and "
        "fall edges (drive too strong)");
  shape.flat_top_s = std::max(shape.flat_top_s, 0.0);
  return shape;
}

double protocol_angle_rad(GateKind kind) {
  switch (kind) {
    case GateKind::GHZ: return M_PI / 2.0;
    case GateKind::iToffoli: return M_PI / 4.0;
    case GateKind::CCNOT: return M_PI / 4.0;
    case GateKind::CZZ: return -M_PI / 2.0;
  }
  throw ConfigError("protocol_angle_rad: invalid kind");
}

double average_gate_fidelity(const Eigen::MatrixXcd& u_ideal,
                             const Eigen::MatrixXcd& u_actual) {
  const double d = static_cast<double>(u_ideal.rows());
  const double tr = std::abs((u_ideal.adjoint() * u_actual).trace());
  return (tr * tr + d) / (d * (d + 1.0));
}

const std::vector<Eigen::VectorXcd>& probe_states() {
  static const std::vector<Eigen::VectorXcd> probes = [] {
    std::vector<Eigen::VectorXcd> out;
    for (int s = 0; s < 8; ++s) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
      v(s) = 1.0;
      out.push_back(v);
    }
    const complexd phases[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const int stride[3] = {4, 2, 1};  // slots Q1, Q3, Q2
    for (int slot = 0; slot < 3; ++slot)
      for (const complexd& c : phases) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
        v(0) = 1.0 / std::sqrt(2.0);
        v(stride[slot]) = c / std::sqrt(2.0);
        out.push_back(v);
      }
    return out;
  }();
  return probes;
}

namespace {

const complexd kI(0.0, 1.0);

Eigen::Matrix2cd hadamard2() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::Matrix2cd phase_s2() {
  Eigen::Matrix2cd s;
  s << 1, 0, 0, kI;
  return s;
}

Eigen::MatrixXcd on_slot3(const Eigen::Matrix2cd& u, int slot) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(8, 8);
  const int stride = slot == 0 ? 4 : slot == 1 ? 2 : 1;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const int rb = (r / stride) % 2, cb = (c / stride) % 2;
      if ((r & ~(stride)) != (c & ~(stride))) continue;
      out(r, c) = u(rb, cb);
    }
  return out;
}

struct Segment {
  enum class Kind { unitary, idle, pulse } kind = Kind::idle;
  Eigen::MatrixXcd u;
  double duration_s = 0.0;
  PulseShape shape;
  double drive_sign = 1.0;
};

constexpr double kSingleQubitIdleS = 30e-9;

// Effective Hamiltonian split (Hz-unit 8x8 matrices). Frame terms ZII
// and IZI commute with the whole ansatz, so omitting them here is the
// exact virtual-Z correction; III is a global phase.
struct SplitHamiltonian {
  Eigen::MatrixXcd static_hz = Eigen::MatrixXcd::Zero(8, 8);
  Eigen::MatrixXcd drive_hz = Eigen::MatrixXcd::Zero(8, 8);
};

SplitHamiltonian split_coefficients(const PauliCoefficients& coeffs,
                                    double amp_ratio) {
  SplitHamiltonian h;
  for (const auto& w : ansatz_words()) {
    if (w == "III" || w == "ZII" || w == "IZI") continue;
    const double a = coeffs.get(w);
    if (a == 0.0) continue;
    if (is_drive_induced(w))
      h.drive_hz += (a * amp_ratio) * pauli_word_matrix(w);
    else
      h.static_hz += a * pauli_word_matrix(w);
  }
  return h;
}

std::vector<Segment> assemble_schedule(GateKind kind, const PulseShape& shape,
                                       double drive_sign) {
  const Eigen::MatrixXcd h1 = on_slot3(hadamard2(), 0);
  const Eigen::MatrixXcd h2 = on_slot3(hadamard2(), 1);
  const Eigen::MatrixXcd h3 = on_slot3(hadamard2(), 2);
  const Eigen::MatrixXcd s3 = on_slot3(phase_s2(), 2);

  Segment pulse;
  pulse.kind = Segment::Kind::pulse;
  pulse.shape = shape;
  pulse.drive_sign = drive_sign;
  pulse.duration_s = shape.duration_s();

  auto gate = [](const Eigen::MatrixXcd& u) {
    Segment s;
    s.kind = Segment::Kind::unitary;
    s.u = u;
    return s;
  };
  auto idle = [](double t) {
    Segment s;
    s.kind = Segment::Kind::idle;
    s.duration_s = t;
    return s;
  };

  std::vector<Segment> segs;
  switch (kind) {
    case GateKind::GHZ:
      segs = {gate(h2 * h1), idle(kSingleQubitIdleS), pulse,
              gate(s3 * h2 * h1), idle(kSingleQubitIdleS)};
      break;
    case GateKind::iToffoli:
      segs = {pulse};
      break;
    case GateKind::CCNOT: {
      // exp(-i pi/8 (ZII + IZI - III)): the calibrated single-qubit Z
      // rotations on both controls closing the ideal-gate phase pattern.
      const Eigen::MatrixXcd corr =
          std::exp(kI * (M_PI / 8.0)) *
          (matrix_exponential(M_PI / 8.0 * pauli_word_matrix("ZII"), 1.0) *
           matrix_exponential(M_PI / 8.0 * pauli_word_matrix("IZI"), 1.0));
      segs = {pulse, gate(corr), idle(kSingleQubitIdleS)};
      break;
    }
    case GateKind::CZZ:
      segs = {gate(h3), idle(kSingleQubitIdleS), pulse, gate(h3),
              idle(kSingleQubitIdleS)};
      break;
  }
  return segs;
}

Eigen::MatrixXcd propagate_unitary(const std::vector<Segment>& segs,
                                   const SplitHamiltonian& h) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(8, 8);
  for (const auto& seg : segs) {
    switch (seg.kind) {
      case Segment::Kind::unitary:
        u = seg.u * u;
        break;
      case Segment::Kind::idle:
        u = matrix_exponential(kTwoPi * h.static_hz, seg.duration_s) * u;
        break;
      case Segment::Kind::pulse: {
        const double total = seg.shape.duration_s();
        const int n = std::max(400, static_cast<int>(total / 2.5e-10) + 1);
        const double dt = total / n;
        // Per-step exact envelope area keeps the commuting (ideal) case
        // exact and leaves only O(dt^2) splitting error otherwise.
        for (int k = 0; k < n; ++k) {
          const double a0 = seg.shape.area_to(k * dt);
          const double a1 = seg.shape.area_to((k + 1) * dt);
          const Eigen::MatrixXcd step =
              kTwoPi * (h.static_hz * dt +
                        seg.drive_sign * (a1 - a0) * h.drive_hz);
          u = matrix_exponential(step, 1.0) * u;
        }
        break;
      }
    }
  }
  return u;
}

Eigen::MatrixXcd propagate_density(const std::vector<Segment>& segs,
                                   const SplitHamiltonian& h,
                                   const std::vector<Matrix>& collapse,
                                   const Eigen::MatrixXcd& rho0,
                                   const LindbladOptions& lopt) {
  Eigen::MatrixXcd rho = rho0;
  for (const auto& seg : segs) {
    switch (seg.kind) {
      case Segment::Kind::unitary:
        rho = seg.u * rho * seg.u.adjoint();
        break;
      case Segment::Kind::idle: {
        const Matrix hm = kTwoPi * h.static_hz;
        auto fn = [&hm](double) { return hm; };
        rho = evolve_lindblad(fn, collapse, rho, {0.0, seg.duration_s}, lopt)
                  .back();
        break;
      }
      case Segment::Kind::pulse: {
        const PulseShape shape = seg.shape;
        const double sign = seg.drive_sign;
        auto fn = [&h, shape, sign](double t) -> Matrix {
          return kTwoPi * (h.static_hz + sign * shape.scale(t) * h.drive_hz);
        };
        rho = evolve_lindblad(fn, collapse, rho,
                              {0.0, seg.shape.duration_s()}, lopt)
                  .back();
        break;
      }
    }
  }
  return rho;
}

}  // namespace

SimulationResult run_protocol(const GateTarget& target,
                              const PauliCoefficients& coeffs,
                              const NoiseModel& noise,
                              double drive_amplitude_hz,
                              const LindbladOptions& lopt) {
  double ratio = 1.0;
  if (drive_amplitude_hz > 0.0 && coeffs.reference_amplitude_hz > 0.0)
    ratio = drive_amplitude_hz / coeffs.reference_amplitude_hz;

  const SplitHamiltonian h = split_coefficients(coeffs, ratio);
  const double pivot_hz = coeffs.get(target.pivot) * ratio;
  const double theta = protocol_angle_rad(target.kind);
  // A negative angle (CZZ) or pivot flips the drive sign; the shape is
  // always computed from positive quantities.
  const double signed_area = theta / (2.0 * kTwoPi * pivot_hz);
  if (!std::isfinite(signed_area) || signed_area == 0.0)
    throw NumericError("run_protocol: pivot coefficient is zero");
  const double drive_sign = signed_area > 0.0 ? 1.0 : -1.0;
  const PulseShape shape =
      shape_for_angle(std::abs(theta), std::abs(pivot_hz));

  const std::vector<Segment> segs =
      assemble_schedule(target.kind, shape, drive_sign);

  SimulationResult res;
  res.flat_top_s = shape.flat_top_s;
  res.drive_amplitude_hz =
      drive_amplitude_hz > 0.0 ? drive_amplitude_hz
                               : coeffs.reference_amplitude_hz;
  for (const auto& s : segs) res.duration_s += s.duration_s;

  const Eigen::MatrixXcd u_ideal = ideal_unitary(target.kind);
  Eigen::VectorXcd e000 = Eigen::VectorXcd::Zero(8);
  e000(0) = 1.0;

  if (noise.is_none()) {
    res.unitary = propagate_unitary(segs, h);
    if (target.kind == GateKind::GHZ) {
      const Eigen::VectorXcd ideal = u_ideal * e000;
      const complexd amp = ideal.dot(res.unitary * e000);
      res.fidelity = std::norm(amp);
    } else {
      res.fidelity = average_gate_fidelity(u_ideal, res.unitary);
    }
    return res;
  }

  res.noisy = true;
  const std::vector<Matrix> collapse = computational_collapse_ops(noise);
  if (target.kind == GateKind::GHZ) {
    const Eigen::MatrixXcd rho =
        propagate_density(segs, h, collapse, e000 * e000.adjoint(), lopt);
    const Eigen::VectorXcd ideal = u_ideal * e000;
    res.fidelity = (ideal.adjoint() * rho * ideal)(0, 0).real();
  } else {
    double sum = 0.0;
    for (const auto& psi : probe_states()) {
      const Eigen::MatrixXcd rho =
          propagate_density(segs, h, collapse, psi * psi.adjoint(), lopt);
      const Eigen::VectorXcd ideal = u_ideal * psi;
      sum += (ideal.adjoint() * rho * ideal)(0, 0).real();
    }
    res.fidelity = sum / static_cast<double>(probe_states().size());
  }
  return res;
}

SweepResult amplitude_sweep(const GateTarget& target,
                            const PauliCoefficients& coeffs,
                            const NoiseModel& noise,
                            const std::vector<double>& amp_grid_hz) {
  if (amp_grid_hz.empty())
    throw ConfigError("amplitude_sweep: empty amplitude grid");
  SweepResult out;
  bool have_best = false;
  for (const double amp : amp_grid_hz) {
    SweepPoint pt;
    pt.amplitude_hz = amp;
    try {
      const SimulationResult r = run_protocol(target, coeffs, noise, amp);
      pt.fidelity = r.fidelity;
      pt.duration_s = r.duration_s;
      if (!have_best || r.fidelity > out.best.fidelity) {
        out.best = r;
        have_best = true;
      }
    } catch (const std::exception& e) {
      pt.failed = true;
      pt.error = e.what();
      ++out.failures;
    }
    out.curve.push_back(pt);
  }
  if (!have_best)
    throw NumericError("amplitude_sweep: every grid point failed (first: " +
                       out.curve.front().error + ")");
  return out;
}

RobustnessEnvelope robustness_sweep(const GateTarget& target,
                                    const CircuitSpec& spec,
                                    const ParameterVector& params,
                                    const RobustnessOptions& options) {
  if (options.n_samples < 8)
    throw ConfigError("robustness_sweep: need at least 8 samples");

  RobustnessEnvelope env;
  for (int i = 0; i < options.n_samples; ++i) {
    std::mt19937_64 rng(options.base_seed + static_cast<unsigned long long>(i));
    std::uniform_real_distribution<double> amp_jitter(-0.02, 0.02);
    std::uniform_real_distribution<double> freq_jitter_ghz(-0.005, 0.005);
    ParameterVector p = params;
    p.a1 *= 1.0 + amp_jitter(rng);
    p.a2 *= 1.0 + amp_jitter(rng);
    p.a3 *= 1.0 + amp_jitter(rng);
    p.wc12_ghz += freq_jitter_ghz(rng);
    p.wc23_ghz += freq_jitter_ghz(rng);
    try {
      const PauliCoefficients coeffs =
          coefficients_at(spec, p, options.omega_ref_hz, options.cutoff);
      const SimulationResult r = run_protocol(target, coeffs, options.noise,
                                              options.drive_amplitude_hz);
      env.fidelities.push_back(r.fidelity);
    } catch (const std::exception&) {
      ++env.sample_failures;
    }
  }
  if (env.fidelities.empty())
    throw NumericError("robustness_sweep: every sample failed");

  std::vector<double> sorted = env.fidelities;
  std::sort(sorted.begin(), sorted.end());
  env.fidelity_min = sorted.front();
  env.fidelity_max = sorted.back();
  const size_t n = sorted.size();
  env.fidelity_median = n % 2 == 1
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return env;
}

}  // namespace pcr
