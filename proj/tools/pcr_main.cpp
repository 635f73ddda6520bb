// pcr: synthesize and simulate parity cross-resonance gate protocols on
// three-transmon unit cells. See README.md for the verb reference.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcr/campaign.hpp"
#include "pcr/device.hpp"
#include "pcr/errors.hpp"
#include "pcr/optimizer.hpp"
#include "pcr/perturbative.hpp"
#include "pcr/protocol.hpp"

namespace {

using namespace pcr;

std::vector<GateKind> parse_targets(const std::string& csv) {
  std::vector<GateKind> out;
  std::string token;
  for (size_t i = 0; i <= csv.size(); ++i) {
    if (i == csv.size() || csv[i] == ',') {
      if (!token.empty()) out.push_back(gate_from_name(token));
      token.clear();
    } else {
      token += csv[i];
    }
  }
  return out;
}

std::vector<double> mhz_grid_to_hz(const std::vector<double>& mhz) {
  std::vector<double> hz;
  for (const double m : mhz) hz.push_back(m * 1e6);
  return hz;
}

const UnitCell& pick_cell(const std::vector<UnitCell>& cells, int index) {
  if (index < 1 || index > static_cast<int>(cells.size()))
    throw ConfigError("cell index " + std::to_string(index) +
                      " out of range (device has " +
                      std::to_string(cells.size()) + " cells)");
  return cells[index - 1];
}

ParameterVector params_from_flag(const std::vector<double>& v) {
  if (v.size() != 5)
    throw ConfigError("--params needs 5 values: wc12_GHz wc23_GHz A1 A2 A3");
  return {v[0], v[1], v[2], v[3], v[4]};
}

void print_coefficients(const PauliCoefficients& coeffs) {
  std::printf("%-6s %14s\n", "word", "alpha (MHz)");
  for (const auto& w : ansatz_words())
    std::printf("%-6s %14.6f\n", w.c_str(), coeffs.get(w) / 1e6);
}

int run(int argc, char** argv) {
  CLI::App app{"parity cross-resonance gate synthesis toolkit"};
  app.require_subcommand(1);

  std::string device_path;
  std::string target_name = "GHZ";
  std::string targets_csv = "GHZ";
  std::string seed_file;
  std::string out_dir = ".";
  std::string cells_csv;
  std::vector<double> params_flag;
  std::vector<double> amp_grid_mhz;
  double omega_mhz = 60.0;
  double eps = 1e-5;
  int cell_index = 1;
  int max_iter = 60;
  int robust_samples = 32;
  int jobs = 1;
  unsigned long long seed = 1;
  bool resume = false;
  bool no_noise = false;

  auto add_device = [&](CLI::App* cmd) {
    cmd->add_option("--device", device_path, "device JSON file")->required();
  };

  CLI::App* dev = app.add_subcommand("device", "device file operations");
  CLI::App* dev_validate =
      dev->add_subcommand("validate", "parse, validate and summarize");
  add_device(dev_validate);

  CLI::App* cells = app.add_subcommand("cells", "unit-cell operations");
  CLI::App* cells_list = cells->add_subcommand("list", "list unit cells");
  add_device(cells_list);

  CLI::App* optimize =
      app.add_subcommand("optimize", "optimize one cell for one target");
  add_device(optimize);
  optimize->add_option("--cell", cell_index, "1-based unit-cell index");
  optimize->add_option("--target", target_name, "GHZ|iToffoli|CCNOT|CZZ");
  optimize->add_option("--seed-file", seed_file, "curated seed table JSON");
  optimize->add_option("--omega-mhz", omega_mhz, "reference drive amplitude");
  optimize->add_option("--max-iter", max_iter, "Powell major iterations");
  optimize->add_option("--eps", eps, "Powell convergence tolerance");
  optimize->add_option("--out-dir", out_dir, "output directory");

  CLI::App* verify = app.add_subcommand(
      "verify", "coefficient-vs-amplitude table at fixed parameters");
  add_device(verify);
  verify->add_option("--cell", cell_index, "1-based unit-cell index");
  verify->add_option("--params", params_flag, "wc12 wc23 A1 A2 A3")
      ->expected(5);
  verify->add_option("--amp-grid", amp_grid_mhz, "drive amplitudes, MHz")
      ->expected(-1);
  verify->add_option("--out-dir", out_dir, "output directory");

  CLI::App* simulate =
      app.add_subcommand("simulate", "protocol simulation at fixed parameters");
  add_device(simulate);
  simulate->add_option("--cell", cell_index, "1-based unit-cell index");
  simulate->add_option("--target", target_name, "GHZ|iToffoli|CCNOT|CZZ");
  simulate->add_option("--params", params_flag, "wc12 wc23 A1 A2 A3")
      ->expected(5);
  simulate->add_option("--omega-mhz", omega_mhz, "reference drive amplitude");
  simulate->add_option("--amp-grid", amp_grid_mhz, "drive amplitudes, MHz")
      ->expected(-1);
  simulate->add_flag("--no-noise", no_noise, "disable decoherence");

  CLI::App* campaign =
      app.add_subcommand("campaign", "optimize + simulate cells x targets");
  add_device(campaign);
  campaign->add_option("--targets", targets_csv, "comma-separated target list");
  campaign->add_option("--cells", cells_csv,
                       "comma-separated 1-based cell indices (default all)");
  campaign->add_option("--omega-mhz", omega_mhz, "reference drive amplitude");
  campaign->add_option("--amp-grid", amp_grid_mhz, "drive amplitudes, MHz")
      ->expected(-1);
  campaign->add_option("--robust-samples", robust_samples,
                       "robustness samples per row (0 disables)");
  campaign->add_option("--jobs", jobs, "worker threads");
  campaign->add_option("--seed", seed, "campaign RNG seed");
  campaign->add_option("--out-dir", out_dir, "output directory");
  campaign->add_option("--seed-file", seed_file, "curated seed table JSON");
  campaign->add_option("--max-iter", max_iter, "Powell major iterations");
  campaign->add_option("--eps", eps, "Powell convergence tolerance");
  campaign->add_flag("--resume", resume, "resume from the journal");

  CLI::App* report =
      app.add_subcommand("report", "re-emit CSV from a campaign report");
  report->add_option("--out-dir", out_dir, "directory holding report.json")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (dev_validate->parsed()) {
    const Device d = load_device(device_path);
    const auto unit_cells = enumerate_cells(d);
    std::printf("device ok: %zu qubits, %zu couplers, %zu couplings, "
                "%zu unit cells\n",
                d.qubits.size(), d.couplers.size(), d.couplings.size(),
                unit_cells.size());
    return 0;
  }

  if (cells_list->parsed()) {
    const Device d = load_device(device_path);
    for (const auto& c : enumerate_cells(d))
      std::printf("cell %3d: Q1=%s Q2=%s Q3=%s\n", c.index,
                  c.labels[0].c_str(), c.labels[1].c_str(),
                  c.labels[2].c_str());
    return 0;
  }

  if (optimize->parsed()) {
    const Device d = load_device(device_path);
    const std::vector<UnitCell> all_cells = enumerate_cells(d);
    const UnitCell& cell = pick_cell(all_cells, cell_index);
    const GateKind kind = gate_from_name(target_name);
    const GateTarget target = GateTarget::for_gate(kind);

    std::optional<ParameterVector> curated;
    if (!seed_file.empty())
      curated = load_seed_table(seed_file).lookup(kind, cell.index);
    const ParameterVector seed_params = seed_parameters(
        target, cell.spec, cell.bounds, omega_mhz * 1e6, curated);

    OptimizeOptions oo;
    oo.omega_ref_hz = omega_mhz * 1e6;
    oo.eps = eps;
    oo.max_iter = max_iter;

    const std::string trace_path = out_dir + "/trace.jsonl";
    std::ofstream trace(trace_path, std::ios::trunc);
    if (!trace) throw ConfigError("cannot open trace '" + trace_path + "'");
    oo.sink = [&trace](const EvaluationRecord& rec) {
      nlohmann::json j;
      j["eval"] = rec.index;
      j["params"] = std::vector<double>(rec.params.data(),
                                        rec.params.data() + rec.params.size());
      j["L_total"] = rec.cost.total();
      j["L_wanted"] = rec.cost.wanted;
      j["L_unwanted"] = rec.cost.unwanted;
      j["L_constraint"] = rec.cost.constraint;
      j["seed_ratio"] = rec.seed_ratio;
      j["hybridization_failure"] = rec.hybridization_failure;
      trace << j.dump() << "\n";
    };

    const OptimizationOutcome out =
        optimize_cell(cell.spec, target, seed_params, cell.bounds, oo);

    std::printf("cell %d target %s: cost %.6g -> %.6g (%s, %d iters)\n",
                cell.index, target_name.c_str(), out.seed_cost,
                out.final_cost.total(),
                out.powell.converged ? "converged" : "NOT converged",
                out.powell.major_iterations);
    std::printf("params: wc12=%.6f GHz wc23=%.6f GHz A=(%.4f, %.4f, %.4f)\n",
                out.params.wc12_ghz, out.params.wc23_ghz, out.params.a1,
                out.params.a2, out.params.a3);
    print_coefficients(out.coefficients);
    return out.powell.converged ? 0 : 4;
  }

  if (verify->parsed()) {
    const Device d = load_device(device_path);
    const std::vector<UnitCell> all_cells = enumerate_cells(d);
    const UnitCell& cell = pick_cell(all_cells, cell_index);
    const ParameterVector params = params_from_flag(params_flag);
    std::vector<double> grid = mhz_grid_to_hz(amp_grid_mhz);
    if (grid.empty())
      for (int m = 1; m <= 10; ++m) grid.push_back(m * 1e7);
    const auto table = verify_coefficients(cell.spec, params, grid);
    const std::string path = out_dir + "/coefficients_vs_amplitude.csv";
    write_amplitude_table_csv(table, path);
    std::printf("wrote %s (%zu rows)\n", path.c_str(), table.size());
    return 0;
  }

  if (simulate->parsed()) {
    const Device d = load_device(device_path);
    const std::vector<UnitCell> all_cells = enumerate_cells(d);
    const UnitCell& cell = pick_cell(all_cells, cell_index);
    const GateKind kind = gate_from_name(target_name);
    const GateTarget target = GateTarget::for_gate(kind);
    const ParameterVector params = params_from_flag(params_flag);
    const PauliCoefficients coeffs =
        coefficients_at(cell.spec, params, omega_mhz * 1e6);

    NoiseModel noise = NoiseModel::none();
    if (!no_noise) {
      noise.t1_s = cell.spec.t1_s;
      noise.t2_s = cell.spec.t2_s;
    }
    std::vector<double> grid = mhz_grid_to_hz(amp_grid_mhz);
    if (grid.empty()) grid = default_amp_grid(omega_mhz * 1e6);
    const SweepResult sweep = amplitude_sweep(target, coeffs, noise, grid);
    for (const auto& pt : sweep.curve) {
      if (pt.failed)
        std::printf("Omega/2pi = %7.2f MHz: failed (%s)\n",
                    pt.amplitude_hz / 1e6, pt.error.c_str());
      else
        std::printf("Omega/2pi = %7.2f MHz: fidelity %.6f, duration %.1f ns\n",
                    pt.amplitude_hz / 1e6, pt.fidelity, pt.duration_s * 1e9);
    }
    std::printf("best: Omega/2pi = %.2f MHz, fidelity %.6f, %.1f ns\n",
                sweep.best.drive_amplitude_hz / 1e6, sweep.best.fidelity,
                sweep.best.duration_s * 1e9);
    return 0;
  }

  if (campaign->parsed()) {
    const Device d = load_device(device_path);
    CampaignOptions co;
    co.targets = parse_targets(targets_csv);
    if (!cells_csv.empty()) {
      std::string token;
      for (size_t i = 0; i <= cells_csv.size(); ++i) {
        if (i == cells_csv.size() || cells_csv[i] == ',') {
          if (!token.empty()) co.cells.push_back(std::stoi(token));
          token.clear();
        } else {
          token += cells_csv[i];
        }
      }
    }
    co.omega_ref_hz = omega_mhz * 1e6;
    co.amp_grid_hz = mhz_grid_to_hz(amp_grid_mhz);
    co.robust_samples = robust_samples;
    co.jobs = jobs;
    co.seed = seed;
    co.out_dir = out_dir;
    co.resume = resume;
    co.seed_table_path = seed_file;
    co.eps = eps;
    co.max_iter = max_iter;

    const CampaignReport rep = run_campaign(d, co);
    write_report_json(rep, out_dir + "/report.json");
    write_report_csv(rep, out_dir + "/report.csv");
    long failures = 0, nonconverged = 0;
    for (const auto& r : rep.rows) {
      if (!r.ok) ++failures;
      else if (!r.converged) ++nonconverged;
    }
    std::printf("campaign: %zu rows, %ld failed, %ld non-converged\n",
                rep.rows.size(), failures, nonconverged);
    if (failures == static_cast<long>(rep.rows.size()) && failures > 0)
      return 3;
    return nonconverged > 0 ? 4 : 0;
  }

  if (report->parsed()) {
    const CampaignReport rep = load_report_json(out_dir + "/report.json");
    write_report_csv(rep, out_dir + "/report.csv");
    std::printf("wrote %s/report.csv (%zu rows)\n", out_dir.c_str(),
                rep.rows.size());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pcr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pcr::SeedingError& e) {
    std::cerr << "seeding failed: " << e.what() << "\n";
    return 4;
  } catch (const pcr::HybridizationError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const pcr::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
