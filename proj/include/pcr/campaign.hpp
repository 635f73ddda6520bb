#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcr/device.hpp"
#include "pcr/gates.hpp"
#include "pcr/optimizer.hpp"
#include "pcr/protocol.hpp"

namespace pcr {

struct CampaignOptions {
  std::vector<GateKind> targets;
  std::vector<int> cells;  // 1-based cell indices; empty = every cell
  double omega_ref_hz = 60e6;
  int cutoff = 4;
  double eps = 1e-5;
  int max_iter = 60;
  std::vector<double> amp_grid_hz;  // empty = default grid around omega_ref
  int robust_samples = 0;           // 0 disables the robustness sweep
  unsigned long long seed = 1;
  int jobs = 1;
  std::string out_dir = ".";
  bool resume = false;
  std::string seed_table_path;  // optional curated seeds
};

struct CampaignRow {
  int cell = 0;
  std::string target;
  bool ok = false;
  bool converged = false;
  std::string error;

  ParameterVector seed_params;
  ParameterVector params;
  double seed_cost = 0.0;
  double final_cost = 0.0;
  double max_wanted_residual_hz = 0.0;
  std::map<std::string, double> alpha_hz;  // ansatz words

  double best_amplitude_hz = 0.0;
  double fidelity = 0.0;
  double duration_s = 0.0;

  double robust_min = 0.0;
  double robust_median = 0.0;
  double robust_max = 0.0;
  long robust_failures = 0;
};

struct CampaignReport {
  std::vector<CampaignRow> rows;
};

// Default amplitude grid: {0.75, 1.0, 1.25, 1.5, 1.75, 2.0} x omega_ref.
std::vector<double> default_amp_grid(double omega_ref_hz);

// One row per requested cell x target: seed, optimize, re-evaluate,
// amplitude-sweep simulate with the cell's coherence times, optional
// robustness sweep. Failures are recorded per row; the campaign
// continues. Completed rows are journaled to <out_dir>/journal.jsonl and
// skipped on resume. Row order in the report is deterministic
// (cell-major, then target) regardless of worker scheduling.
CampaignReport run_campaign(const Device& device,
                            const CampaignOptions& options);

void write_report_csv(const CampaignReport& report, const std::string& path);
void write_report_json(const CampaignReport& report, const std::string& path);
CampaignReport load_report_json(const std::string& path);

// Coefficient-vs-amplitude verification table at fixed optimized
// parameters: every alpha recomputed nonperturbatively per grid point.
struct AmplitudeTableRow {
  double omega_hz = 0.0;
  PauliCoefficients coeffs;
};

std::vector<AmplitudeTableRow> verify_coefficients(
    const CircuitSpec& spec, const ParameterVector& params,
    const std::vector<double>& omega_grid_hz, int cutoff = 4);

void write_amplitude_table_csv(const std::vector<AmplitudeTableRow>& table,
                               const std::string& path);

}  // namespace pcr
