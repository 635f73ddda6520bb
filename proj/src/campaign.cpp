#include "pcr/campaign.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pcr/errors.hpp"
#include "pcr/perturbative.hpp"
#include "json.hpp"

namespace pcr {

using nlohmann::json;

namespace {

json params_to_json(const ParameterVector& p) {
  return json::array({p.wc12_ghz, p.wc23_ghz, p.a1, p.a2, p.a3});
}

ParameterVector params_from_json(const json& j) {
  ParameterVector p;
  p.wc12_ghz = j.at(0).get<double>();
  p.wc23_ghz = j.at(1).get<double>();
  p.a1 = j.at(2).get<double>();
  p.a2 = j.at(3).get<double>();
  p.a3 = j.at(4).get<double>();
  return p;
}

json row_to_json(const CampaignRow& r) {
  json j;
  j["cell"] = r.cell;
  j["target"] = r.target;
  j["ok"] = r.ok;
  j["converged"] = r.converged;
  j["error"] = r.error;
  j["seed_params"] = params_to_json(r.seed_params);
  j["params"] = params_to_json(r.params);
  j["seed_cost"] = r.seed_cost;
  j["final_cost"] = r.final_cost;
  j["max_wanted_residual_hz"] = r.max_wanted_residual_hz;
  j["alpha_hz"] = r.alpha_hz;
  j["best_amplitude_hz"] = r.best_amplitude_hz;
  j["fidelity"] = r.fidelity;
  j["duration_s"] = r.duration_s;
  j["robust_min"] = r.robust_min;
  j["robust_median"] = r.robust_median;
  j["robust_max"] = r.robust_max;
  j["robust_failures"] = r.robust_failures;
  return j;
}

CampaignRow row_from_json(const json& j) {
  CampaignRow r;
  r.cell = j.at("cell").get<int>();
  r.target = j.at("target").get<std::string>();
  r.ok = j.at("ok").get<bool>();
  r.converged = j.at("converged").get<bool>();
  r.error = j.at("error").get<std::string>();
  r.seed_params = params_from_json(j.at("seed_params"));
  r.params = params_from_json(j.at("params"));
  r.seed_cost = j.at("seed_cost").get<double>();
  r.final_cost = j.at("final_cost").get<double>();
  r.max_wanted_residual_hz = j.at("max_wanted_residual_hz").get<double>();
  r.alpha_hz = j.at("alpha_hz").get<std::map<std::string, double>>();
  r.best_amplitude_hz = j.at("best_amplitude_hz").get<double>();
  r.fidelity = j.at("fidelity").get<double>();
  r.duration_s = j.at("duration_s").get<double>();
  r.robust_min = j.at("robust_min").get<double>();
  r.robust_median = j.at("robust_median").get<double>();
  r.robust_max = j.at("robust_max").get<double>();
  r.robust_failures = j.at("robust_failures").get<long>();
  return r;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp + "'");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("cannot move '" + tmp + "' to '" + path + "'");
}

CampaignRow compute_row(const UnitCell& cell, GateKind kind,
                        const CampaignOptions& opt, const SeedTable* seeds,
                        const std::vector<double>& amp_grid) {
  CampaignRow row;
  row.cell = cell.index;
  row.target = gate_name(kind);
  try {
    const GateTarget target = GateTarget::for_gate(kind);
    std::optional<ParameterVector> curated;
    if (seeds) curated = seeds->lookup(kind, cell.index);
    row.seed_params = seed_parameters(target, cell.spec, cell.bounds,
                                      opt.omega_ref_hz, curated);

    OptimizeOptions oo;
    oo.omega_ref_hz = opt.omega_ref_hz;
    oo.cutoff = opt.cutoff;
    oo.eps = opt.eps;
    oo.max_iter = opt.max_iter;
    const OptimizationOutcome outcome =
        optimize_cell(cell.spec, target, row.seed_params, cell.bounds, oo);

    row.params = outcome.params;
    row.converged = outcome.powell.converged;
    row.seed_cost = outcome.seed_cost;
    row.final_cost = outcome.final_cost.total();
    for (const double r : outcome.final_cost.wanted_residual_hz)
      row.max_wanted_residual_hz =
          std::max(row.max_wanted_residual_hz, std::abs(r));
    for (const auto& w : ansatz_words())
      row.alpha_hz[w] = outcome.coefficients.get(w);

    NoiseModel noise;
    noise.t1_s = cell.spec.t1_s;
    noise.t2_s = cell.spec.t2_s;
    const SweepResult sweep =
        amplitude_sweep(target, outcome.coefficients, noise, amp_grid);
    row.best_amplitude_hz = sweep.best.drive_amplitude_hz;
    row.fidelity = sweep.best.fidelity;
    row.duration_s = sweep.best.duration_s;

    if (opt.robust_samples > 0) {
      RobustnessOptions ro;
      ro.n_samples = opt.robust_samples;
      ro.base_seed = opt.seed * 1000003ull +
                     static_cast<unsigned long long>(cell.index) * 16ull +
                     static_cast<unsigned long long>(kind);
      ro.omega_ref_hz = opt.omega_ref_hz;
      ro.cutoff = opt.cutoff;
      ro.drive_amplitude_hz = row.best_amplitude_hz;
      ro.noise = noise;
      const RobustnessEnvelope env =
          robustness_sweep(target, cell.spec, row.params, ro);
      row.robust_min = env.fidelity_min;
      row.robust_median = env.fidelity_median;
      row.robust_max = env.fidelity_max;
      row.robust_failures = env.sample_failures;
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<double> default_amp_grid(double omega_ref_hz) {
  return {0.75 * omega_ref_hz, 1.0 * omega_ref_hz,  1.25 * omega_ref_hz,
          1.5 * omega_ref_hz,  1.75 * omega_ref_hz, 2.0 * omega_ref_hz,
          2.5 * omega_ref_hz,  3.0 * omega_ref_hz};
}

CampaignReport run_campaign(const Device& device,
                            const CampaignOptions& options) {
  const std::vector<UnitCell> all_cells = enumerate_cells(device);
  std::vector<const UnitCell*> cells;
  if (options.cells.empty()) {
    for (const auto& c : all_cells) cells.push_back(&c);
  } else {
    for (const int idx : options.cells) {
      if (idx < 1 || idx > static_cast<int>(all_cells.size()))
        throw ConfigError("cell index " + std::to_string(idx) +
                          " out of range (device has " +
                          std::to_string(all_cells.size()) + " cells)");
      cells.push_back(&all_cells[idx - 1]);
    }
  }

  SeedTable seeds;
  const SeedTable* seeds_ptr = nullptr;
  if (!options.seed_table_path.empty()) {
    seeds = load_seed_table(options.seed_table_path);
    seeds_ptr = &seeds;
  }

  const std::vector<double> amp_grid = options.amp_grid_hz.empty()
                                           ? default_amp_grid(options.omega_ref_hz)
                                           : options.amp_grid_hz;

  struct Job {
    const UnitCell* cell;
    GateKind kind;
  };
  std::vector<Job> jobs;
  for (const UnitCell* c : cells)
    for (const GateKind k : options.targets) jobs.push_back({c, k});

  const std::string journal_path = options.out_dir + "/journal.jsonl";
  std::map<std::pair<int, std::string>, CampaignRow> done;
  if (options.resume) {
    std::ifstream in(journal_path);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty()) continue;
      const CampaignRow row = row_from_json(json::parse(line));
      done[{row.cell, row.target}] = row;
    }
  }

  std::ofstream journal(journal_path,
                        options.resume ? std::ios::app : std::ios::trunc);
  if (!journal) throw ConfigError("cannot open journal '" + journal_path + "'");
  std::mutex journal_mutex;

  std::vector<CampaignRow> rows(jobs.size());
  std::vector<char> computed(jobs.size(), 0);
  for (size_t i = 0; i < jobs.size(); ++i) {
    const auto it = done.find({jobs[i].cell->index, gate_name(jobs[i].kind)});
    if (it != done.end()) {
      rows[i] = it->second;
      computed[i] = 1;
    }
  }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      if (computed[i]) continue;
      const CampaignRow row =
          compute_row(*jobs[i].cell, jobs[i].kind, options, seeds_ptr, amp_grid);
      rows[i] = row;
      std::lock_guard<std::mutex> lock(journal_mutex);
      journal << row_to_json(row).dump() << "\n";
      journal.flush();
    }
  };

  const int n_threads = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CampaignReport report;
  report.rows = std::move(rows);
  return report;
}

void write_report_json(const CampaignReport& report, const std::string& path) {
  json j = json::array();
  for (const auto& row : report.rows) j.push_back(row_to_json(row));
  atomic_write(path, j.dump(2) + "\n");
}

CampaignReport load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": JSON parse failure: " + e.what());
  }
  CampaignReport report;
  for (const auto& jr : j) report.rows.push_back(row_from_json(jr));
  return report;
}

void write_report_csv(const CampaignReport& report, const std::string& path) {
  std::ostringstream out;
  out << "cell,target,ok,converged,seed_cost,final_cost,"
         "max_wanted_residual_hz,wc12_ghz,wc23_ghz,a1,a2,a3,"
         "best_amplitude_hz,fidelity,duration_s,"
         "robust_min,robust_median,robust_max,robust_failures";
  for (const auto& w : ansatz_words()) out << ",alpha_" << w << "_hz";
  out << ",error\n";
  out.precision(17);
  for (const auto& r : report.rows) {
    out << r.cell << ',' << r.target << ',' << (r.ok ? 1 : 0) << ','
        << (r.converged ? 1 : 0) << ',' << r.seed_cost << ',' << r.final_cost
        << ',' << r.max_wanted_residual_hz << ',' << r.params.wc12_ghz << ','
        << r.params.wc23_ghz << ',' << r.params.a1 << ',' << r.params.a2
        << ',' << r.params.a3 << ',' << r.best_amplitude_hz << ','
        << r.fidelity << ',' << r.duration_s << ',' << r.robust_min << ','
        << r.robust_median << ',' << r.robust_max << ',' << r.robust_failures;
    for (const auto& w : ansatz_words()) {
      const auto it = r.alpha_hz.find(w);
      out << ',' << (it == r.alpha_hz.end() ? 0.0 : it->second);
    }
    std::string err = r.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    out << ',' << err << '\n';
  }
  atomic_write(path, out.str());
}

std::vector<AmplitudeTableRow> verify_coefficients(
    const CircuitSpec& spec, const ParameterVector& params,
    const std::vector<double>& omega_grid_hz, int cutoff) {
  if (omega_grid_hz.empty())
    throw ConfigError("verify_coefficients: empty amplitude grid");
  std::vector<AmplitudeTableRow> table;
  for (const double omega : omega_grid_hz) {
    AmplitudeTableRow row;
    row.omega_hz = omega;
    row.coeffs = coefficients_at(spec, params, omega, cutoff);
    table.push_back(row);
  }
  return table;
}

void write_amplitude_table_csv(const std::vector<AmplitudeTableRow>& table,
                               const std::string& path) {
  std::ostringstream out;
  out << "omega_hz";
  for (const auto& w : ansatz_words()) out << ",alpha_" << w << "_hz";
  out << "\n";
  out.precision(17);
  for (const auto& row : table) {
    out << row.omega_hz;
    for (const auto& w : ansatz_words()) out << ',' << row.coeffs.get(w);
    out << '\n';
  }
  atomic_write(path, out.str());
}

}  // namespace pcr
