#include "pcr/perturbative.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcr/errors.hpp"

namespace pcr {

namespace {

constexpr double kMinDetuningHz = 1e3;

// Wraps the dressed table with paper-style 1-based qubit labels and a
// resonance guard on every detuning used in a denominator.
struct Sym {
  const DressedTable& t;

  // J_{i^(m) j^(n)} with i, j in {1, 2, 3}; overline count = level index.
  double J(int i, int j, int m = 0, int n = 0) const {
    return t.coupling(i - 1, j - 1, m, n);
  }
  // Detuning Delta_{i^(m) j^(n)}.
  double D(int i, int j, int m = 0, int n = 0) const {
    const double d = t.delta(i - 1, j - 1, m, n);
    if (std::abs(d) < kMinDetuningHz)
      throw ResonanceError("perturbative_coefficients: near-zero detuning");
    return d;
  }
};

}  // namespace

double PerturbativeCoefficients::get(const std::string& word) const {
  if (word == "ZIX") return zix;
  if (word == "ZIY") return ziy;
  if (word == "IZX") return izx;
  if (word == "IZY") return izy;
  if (word == "IIX") return iix;
  if (word == "IIY") return iiy;
  if (word == "ZZX") return zzx;
  if (word == "ZZY") return zzy;
  throw ConfigError("perturbative coefficient not provided for " + word);
}

PerturbativeCoefficients perturbative_coefficients(const DressedTable& table,
                                                   const DriveSpec& drive) {
  const Sym s{table};
  const double o1 = drive.amplitude_hz[0];
  const double o2 = drive.amplitude_hz[1];
  const double o3 = drive.amplitude_hz[2];
  const double c1 = std::cos(drive.phase_rad[0]);
  const double c2 = std::cos(drive.phase_rad[1]);
  const double c3 = std::cos(drive.phase_rad[2]);
  const double s1 = std::sin(drive.phase_rad[0]);
  const double s2 = std::sin(drive.phase_rad[1]);
  const double s3 = std::sin(drive.phase_rad[2]);

  // Brackets shared between the X (cos phi) and Y (sin phi) rows.
  // Overline placement is transcribed literally, including the
  // asymmetric Delta_13 / Delta_{1 2bar} pattern between the ZIX and IZX
  // mirror expressions.
  const double zi_b1 = s.J(1, 2, 1, 0) / s.D(1, 2, 1, 0) -
                       s.J(1, 2) / s.D(1, 2) +
                       s.J(1, 3, 0, 1) * s.J(3, 2, 1, 0) /
                           (s.D(1, 3) * s.D(3, 2, 1, 0)) -
                       s.J(1, 3, 1, 1) * s.J(3, 2, 1, 0) /
                           (s.D(1, 2, 0, 1) * s.D(3, 2, 1, 0));
  const double zi_b3 = s.J(1, 3, 0, 1) * s.J(1, 2) /
                           (s.D(3, 2, 1, 0) * s.D(1, 2)) -
                       s.J(1, 3, 1, 1) * s.J(1, 2, 1, 0) /
                           (s.D(3, 2, 1, 0) * s.D(1, 2, 1, 0));
  const double zi_b2 = std::pow(s.J(1, 2, 1, 0) / s.D(1, 2, 1, 0), 2) +
                       std::pow(s.J(1, 2, 0, 1) / s.D(1, 2, 0, 1), 2) -
                       2.0 * s.J(1, 2) * s.J(1, 2, 0, 1) /
                           (s.D(1, 2) * s.D(1, 2, 0, 1));

  const double iz_b3 = s.J(3, 2, 1, 0) / s.D(3, 2, 1, 0) -
                       s.J(3, 2) / s.D(3, 2) +
                       s.J(1, 3, 0, 1) * s.J(1, 2, 1, 0) /
                           (s.D(1, 2, 0, 1) * s.D(3, 2, 1, 0)) -
                       s.J(1, 3, 1, 1) * s.J(1, 2, 1, 0) /
                           (s.D(1, 2, 1, 0) * s.D(3, 2, 1, 0));
  const double iz_b1 = s.J(1, 3, 1, 0) * s.J(3, 2) /
                           (s.D(1, 2, 1, 0) * s.D(3, 2)) -
                       s.J(1, 3, 1, 1) * s.J(3, 2, 1, 0) /
                           (s.D(1, 2, 1, 0) * s.D(3, 2, 1, 0));
  const double iz_b2 = std::pow(s.J(3, 2, 1, 0) / s.D(3, 2, 1, 0), 2) +
                       std::pow(s.J(3, 2, 0, 1) / s.D(3, 2, 0, 1), 2) -
                       2.0 * s.J(3, 2) * s.J(3, 2, 0, 1) /
                           (s.D(3, 2) * s.D(3, 2, 0, 1));

  const double ii_b1 = s.J(1, 2, 1, 0) / s.D(1, 2, 1, 0) -
                       s.J(1, 3, 1, 1) * s.J(3, 2, 1, 0) /
                           (s.D(1, 2, 1, 0) * s.D(3, 2, 1, 0));
  const double ii_b3 = s.J(3, 2, 1, 0) / s.D(3, 2, 1, 0) -
                       s.J(1, 3, 1, 1) * s.J(1, 2, 1, 0) /
                           (s.D(1, 2, 1, 0) * s.D(3, 2, 1, 0));

  const double zz_b1 =
      s.J(3, 2) / s.D(3, 2) * s.J(1, 3) / s.D(1, 2) -
      s.J(3, 2) / s.D(3, 2) * s.J(1, 3, 1, 0) / s.D(1, 2, 1, 0) -
      s.J(3, 2, 1, 0) / s.D(3, 2, 1, 0) * s.J(1, 3, 0, 1) / s.D(1, 2) +
      s.J(3, 2, 1, 0) / s.D(3, 2, 1, 0) * s.J(1, 3, 1, 1) / s.D(1, 2, 1, 0);
  const double zz_b3 =
      s.J(1, 2) / s.D(1, 2) * s.J(1, 3) / s.D(3, 2) -
      s.J(1, 2) / s.D(1, 2) * s.J(1, 3, 0, 1) / s.D(3, 2, 1, 0) -
      s.J(1, 2, 1, 0) / s.D(1, 2, 1, 0) * s.J(1, 3, 1, 0) / s.D(3, 2, 0, 1) +
      s.J(1, 2, 1, 0) / s.D(1, 2, 1, 0) * s.J(1, 3, 1, 1) / s.D(3, 2, 1, 0);

  PerturbativeCoefficients out;
  out.zix = 0.5 * (o1 * c1 * zi_b1 + o3 * c3 * zi_b3) + o2 / 4.0 * c2 * zi_b2;
  out.ziy = 0.5 * (o1 * s1 * zi_b1 + o3 * s3 * zi_b3) + o2 / 4.0 * s2 * zi_b2;
  out.izx = 0.5 * (o3 * c3 * iz_b3 + o1 * c1 * iz_b1) + o2 / 4.0 * c2 * iz_b2;
  out.izy = 0.5 * (o3 * s3 * iz_b3 + o1 * s1 * iz_b1) + o2 / 4.0 * s2 * iz_b2;
  out.iix = 0.5 * (o2 * c2 - o1 * c1 * ii_b1 - o3 * c3 * ii_b3);
  out.iiy = 0.5 * (o2 * s2 - o1 * s1 * ii_b1 - o3 * s3 * ii_b3);
  out.zzx = o1 / 2.0 * c1 * zz_b1 + o3 / 2.0 * c3 * zz_b3;
  out.zzy = o1 / 2.0 * s1 * zz_b1 + o3 / 2.0 * s3 * zz_b3;
  return out;
}

ParameterVector seed_parameters(
    const GateTarget& target, const CircuitSpec& spec,
    const ParameterBounds& bounds, double omega_ref_hz,
    const std::optional<ParameterVector>& curated) {
  if (curated) {
    if (!bounds.contains(curated->to_eigen()))
      throw SeedingError("curated seed for " + gate_name(target.kind) +
                         " is outside the parameter bounds");
    return *curated;
  }

  // Coarse grid: coupler frequencies on a 25 MHz grid, A1/A3 from a small
  // symmetric menu, A2 = 0.
  const double grid_step = 0.025;
  const std::vector<double> a_menu = {-1.5, -1.0, -0.5, -0.25,
                                      0.25, 0.5,  1.0,  1.5};
  ParameterVector best;
  double best_score = -1.0;
  bool best_feasible = false;
  int attempted = 0, errored = 0;

  const int n12 = static_cast<int>(
      (bounds.upper(0) - bounds.lower(0)) / grid_step + 1e-9);
  const int n23 = static_cast<int>(
      (bounds.upper(1) - bounds.lower(1)) / grid_step + 1e-9);
  for (int k12 = 0; k12 <= n12; ++k12)
    for (int k23 = 0; k23 <= n23; ++k23) {
      const double w12 =
          std::min(bounds.lower(0) + k12 * grid_step, bounds.upper(0));
      const double w23 =
          std::min(bounds.lower(1) + k23 * grid_step, bounds.upper(1));
      CircuitSpec cand = spec;
      cand.coupler_freq_hz = {w12 * 1e9, w23 * 1e9};
      DressedTable table;
      try {
        table = dressed_table(cand);
      } catch (const ResonanceError&) {
        ++errored;
        continue;
      }
      for (double a1 : a_menu)
        for (double a3 : a_menu) {
          ++attempted;
          const DriveSpec drive = DriveSpec::from_scales(
              omega_ref_hz, {a1, 0.0, a3}, table.transition_hz[1][0]);
          PerturbativeCoefficients pc;
          try {
            pc = perturbative_coefficients(table, drive);
          } catch (const ResonanceError&) {
            ++errored;
            continue;
          }
          const double zzx = pc.zzx;
          if (zzx == 0.0) continue;
          bool feasible = true;
          for (const auto& rel : target.relations) {
            double v;
            try {
              v = pc.get(rel.word);
            } catch (const ConfigError&) {
              continue;  // static word (e.g. ZZI): no perturbative value
            }
            if (v * rel.sign * zzx < 0.0) feasible = false;
          }
          const double score = std::abs(zzx);
          if ((feasible && !best_feasible) ||
              (feasible == best_feasible && score > best_score)) {
            best_score = score;
            best_feasible = feasible;
            best = {w12, w23, a1, 0.0, a3};
          }
        }
    }

  if (best_score < 0.0)
    throw SeedingError("seed grid search failed: " + std::to_string(errored) +
                       " of " + std::to_string(attempted) +
                       " grid points errored, none usable");
  return best;
}

}  // namespace pcr
