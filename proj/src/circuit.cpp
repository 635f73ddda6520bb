#include "pcr/circuit.hpp"

#include <cmath>

#include "pcr/errors.hpp"

namespace pcr {

namespace {

constexpr double kMinDetuningHz = 1e3;  // resonance guard for 1/Delta terms

// Shared coupler of qubit pair (i, j), or -1 for the (1, 3) pair.
int shared_coupler(int i, int j) {
  const int lo = std::min(i, j), hi = std::max(i, j);
  if (lo == 0 && hi == 1) return 0;  // C12
  if (lo == 1 && hi == 2) return 1;  // C23
  return -1;
}

double coupler_detuning_hz(const CircuitSpec& spec, int r, int j, int n) {
  return spec.coupler_freq_hz[r] - spec.qubit_freq_hz[j] -
         static_cast<double>(n) * spec.anharm_hz[j];
}

}  // namespace

void CircuitSpec::validate() const {
  for (int j = 0; j < 3; ++j) {
    if (qubit_freq_hz[j] <= 0.0)
      throw ConfigError("CircuitSpec: qubit frequency must be positive");
    if (anharm_hz[j] == 0.0)
      throw ConfigError("CircuitSpec: anharmonicity must be nonzero");
  }
  for (int r = 0; r < 2; ++r)
    if (coupler_freq_hz[r] <= 0.0)
      throw ConfigError("CircuitSpec: coupler frequency must be positive");
}

bool CircuitSpec::dispersive_advisory() const {
  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 2; ++r) {
      const double g = qubit_coupler_g_hz[j][r];
      if (g == 0.0) continue;
      const double det = std::abs(coupler_freq_hz[r] - qubit_freq_hz[j]);
      if (det == 0.0 || g / det > 0.2) return true;
    }
  return false;
}

int CircuitSpec::pair_slot(int i, int j) {
  const int lo = std::min(i, j), hi = std::max(i, j);
  if (lo == 0 && hi == 1) return 0;
  if (lo == 1 && hi == 2) return 1;
  if (lo == 0 && hi == 2) return 2;
  throw ConfigError("pair_slot: invalid qubit pair");
}

DriveSpec DriveSpec::from_scales(double reference_amplitude_hz,
                                 const std::array<double, 3>& scale,
                                 double drive_freq_hz) {
  DriveSpec d;
  d.reference_amplitude_hz = reference_amplitude_hz;
  d.scale = scale;
  d.drive_freq_hz = drive_freq_hz;
  for (int j = 0; j < 3; ++j) {
    const double omega = scale[j] * reference_amplitude_hz;
    d.amplitude_hz[j] = std::abs(omega);
    d.phase_rad[j] = omega < 0.0 ? M_PI : 0.0;
  }
  return d;
}

ProductBasis default_basis(int max_total_excitation) {
  const int dim = max_total_excitation + 1;
  std::vector<ModeSpec> modes = {
      {"Q1", ModeKind::qubit, std::max(dim, 2)},
      {"Q2", ModeKind::qubit, std::max(dim, 2)},
      {"Q3", ModeKind::qubit, std::max(dim, 2)},
      {"C12", ModeKind::coupler, std::max(dim, 1)},
      {"C23", ModeKind::coupler, std::max(dim, 1)},
  };
  return ProductBasis(std::move(modes), max_total_excitation);
}

Matrix build_system_hamiltonian(const CircuitSpec& spec,
                                const ProductBasis& basis) {
  spec.validate();
  if (basis.n_modes() != 5)
    throw ConfigError("build_system_hamiltonian: basis must have 5 modes "
                      "(Q1, Q2, Q3, C12, C23)");
  for (int j = 0; j < 3; ++j)
    if (basis.mode(j).kind != ModeKind::qubit)
      throw ConfigError("build_system_hamiltonian: modes 0..2 must be qubits");
  for (int r = 3; r < 5; ++r)
    if (basis.mode(r).kind != ModeKind::coupler)
      throw ConfigError(
          "build_system_hamiltonian: modes 3..4 must be couplers");

  const int dim = basis.dim();
  Matrix h = Matrix::Zero(dim, dim);

  for (int j = 0; j < 3; ++j) {
    const Matrix n = number_op(basis, j);
    h += kTwoPi * spec.qubit_freq_hz[j] * n;
    h += kTwoPi * spec.anharm_hz[j] / 2.0 * n *
         (n - Matrix::Identity(dim, dim));
  }
  for (int r = 0; r < 2; ++r)
    h += kTwoPi * spec.coupler_freq_hz[r] * number_op(basis, 3 + r);

  // Charge-operator coupling i(b^dag - b) i(a^dag - a), i.e. the i^2 = -1
  // multiple of (b - b^dag)(a - a^dag): the co-rotating part enters with
  // +g, matching the sign convention of the effective-coupling formula
  // (the destructive g_ij vs coupler-path interference is gauge-invariant
  // on the qubit-coupler-qubit triangle, so this sign is observable).
  // Assembled term by term so the truncation keeps conjugate pairs exact
  // adjoints.
  auto full_coupling = [&](int i, int j) -> Matrix {
    return quadratic_pair(basis, i, false, j, true) +
           quadratic_pair(basis, i, true, j, false) -
           quadratic_pair(basis, i, false, j, false) -
           quadratic_pair(basis, i, true, j, true);
  };

  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 2; ++r) {
      const double g = spec.qubit_coupler_g_hz[j][r];
      if (g == 0.0) continue;
      h += kTwoPi * g * full_coupling(j, 3 + r);
    }

  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {1, 2}, {0, 2}}};
  for (int p = 0; p < 3; ++p) {
    const double g = spec.direct_g_hz[p];
    if (g == 0.0) continue;
    const auto [i, j] = pairs[p];
    h += kTwoPi * g * full_coupling(i, j);
  }

  require_hermitian(h, 1e-12, "build_system_hamiltonian");
  return 0.5 * (h + h.adjoint());
}

DressedTable dressed_table(const CircuitSpec& spec) {
  spec.validate();
  DressedTable t;
  for (int j = 0; j < 3; ++j) {
    for (int n = 0; n <= 3; ++n) {
      double e = n * spec.qubit_freq_hz[j] +
                 n * (n - 1) / 2.0 * spec.anharm_hz[j];
      for (int r = 0; r < 2; ++r) {
        const double g = spec.qubit_coupler_g_hz[j][r];
        if (g == 0.0 || n == 0) continue;
        const double det = coupler_detuning_hz(spec, r, j, n - 1);
        if (std::abs(det) < kMinDetuningHz)
          throw ResonanceError("dressed_table: coupler " + std::to_string(r) +
                               " resonant with qubit " + std::to_string(j));
        e -= g * g * n / det;
      }
      t.energy_hz[j][n] = e;
    }
    for (int n = 0; n <= 2; ++n)
      t.transition_hz[j][n] = t.energy_hz[j][n + 1] - t.energy_hz[j][n];
  }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const int slot = CircuitSpec::pair_slot(i, j);
      const int r = shared_coupler(i, j);
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          double jj = spec.direct_g_hz[slot];
          if (r >= 0) {
            const double gi = spec.qubit_coupler_g_hz[i][r];
            const double gj = spec.qubit_coupler_g_hz[j][r];
            if (gi != 0.0 && gj != 0.0) {
              const double di = coupler_detuning_hz(spec, r, i, m);
              const double dj = coupler_detuning_hz(spec, r, j, n);
              if (std::abs(di) < kMinDetuningHz ||
                  std::abs(dj) < kMinDetuningHz)
                throw ResonanceError(
                    "dressed_table: singular effective-coupling denominator");
              jj -= gi * gj / 2.0 * (1.0 / di + 1.0 / dj);
            }
          }
          t.j_mn_[i][j][m][n] = jj;
        }
    }
  return t;
}

double DressedTable::delta(int i, int j, int m, int n) const {
  return transition_hz.at(i).at(m) - transition_hz.at(j).at(n);
}

double DressedTable::coupling(int i, int j, int m, int n) const {
  if (i < 0 || i > 2 || j < 0 || j > 2 || i == j || m < 0 || m > 1 ||
      n < 0 || n > 1)
    throw ConfigError("DressedTable::coupling: invalid indices");
  return j_mn_[i][j][m][n];
}

Matrix build_drive_hamiltonian(const DriveSpec& drive,
                               const ProductBasis& basis, double t) {
  if (basis.n_modes() != 5)
    throw ConfigError("build_drive_hamiltonian: basis must have 5 modes");
  Matrix h = Matrix::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < 3; ++j) {
    const double omega = drive.amplitude_hz[j];
    if (omega == 0.0) continue;
    const Matrix b = lowering(basis, j);
    h += kTwoPi * omega *
         std::cos(kTwoPi * drive.drive_freq_hz * t + drive.phase_rad[j]) *
         (b + b.adjoint());
  }
  return h;
}

Matrix rotating_frame_rwa(const CircuitSpec& spec, const DriveSpec& drive,
                          const ProductBasis& basis) {
  spec.validate();
  if (basis.n_modes() != 5)
    throw ConfigError("rotating_frame_rwa: basis must have 5 modes");

  double f_dr = drive.drive_freq_hz;
  if (f_dr == 0.0) f_dr = dressed_table(spec).transition_hz[1][0];

  const int dim = basis.dim();
  Matrix h = Matrix::Zero(dim, dim);

  std::array<Matrix, 5> b;
  for (int m = 0; m < 5; ++m) b[m] = lowering(basis, m);

  for (int j = 0; j < 3; ++j) {
    const Matrix n = number_op(basis, j);
    h += kTwoPi * (spec.qubit_freq_hz[j] - f_dr) * n;
    h += kTwoPi * spec.anharm_hz[j] / 2.0 * n *
         (n - Matrix::Identity(dim, dim));
  }
  for (int r = 0; r < 2; ++r)
    h += kTwoPi * (spec.coupler_freq_hz[r] - f_dr) * number_op(basis, 3 + r);

  // Excitation-conserving couplings only. The exchange sign follows the
  // standard charge-coupling convention, +g(b a^dag + b^dag a), which in
  // the dispersive limit reproduces the effective J of the dressed table.
  auto exchange = [&](int i, int j) -> Matrix {
    const Matrix hop = quadratic_pair(basis, i, false, j, true);
    return hop + hop.adjoint();
  };

  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 2; ++r) {
      const double g = spec.qubit_coupler_g_hz[j][r];
      if (g == 0.0) continue;
      h += kTwoPi * g * exchange(j, 3 + r);
    }
  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {1, 2}, {0, 2}}};
  for (int p = 0; p < 3; ++p) {
    const double g = spec.direct_g_hz[p];
    if (g == 0.0) continue;
    const auto [i, j] = pairs[p];
    h += kTwoPi * g * exchange(i, j);
  }

  for (int j = 0; j < 3; ++j) {
    const double omega = drive.amplitude_hz[j];
    if (omega == 0.0) continue;
    const complexd phase = std::exp(complexd(0.0, drive.phase_rad[j]));
    h += kTwoPi * omega / 2.0 *
         (phase * b[j] + std::conj(phase) * b[j].adjoint());
  }

  require_hermitian(h, 1e-12, "rotating_frame_rwa");
  return 0.5 * (h + h.adjoint());
}

}  // namespace pcr
