#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcr/circuit.hpp"
#include "pcr/gates.hpp"
#include "pcr/params.hpp"

namespace pcr {

struct DeviceQubit {
  std::string label;
  double freq_ghz = 0.0;
  double anharm_mhz = 0.0;
  double t1_us = 0.0;
  double t2_us = 0.0;
};

struct DeviceCoupler {
  std::string label;
  double freq_ghz = 0.0;
  double min_ghz = 0.0;
  double max_ghz = 0.0;
};

struct DeviceCoupling {
  std::string a;
  std::string b;
  double g_mhz = 0.0;
};

struct Device {
  std::vector<DeviceQubit> qubits;
  std::vector<DeviceCoupler> couplers;
  std::vector<DeviceCoupling> couplings;
  std::vector<std::array<std::string, 3>> unit_cells;

  const DeviceQubit* find_qubit(const std::string& label) const;
  const DeviceCoupler* find_coupler(const std::string& label) const;
  // Coupling strength between two labels in Hz, 0 if absent.
  double coupling_hz(const std::string& a, const std::string& b) const;
  // Shared coupler between two qubits, or nullptr.
  const DeviceCoupler* shared_coupler(const std::string& qa,
                                      const std::string& qb) const;
};

// A resolved three-qubit cell: labels (Q1, Q2, Q3), the CircuitSpec with
// the virtual direct Q1-Q3 coupling filled in, and the optimization
// bounds derived from the coupler tuning ranges.
struct UnitCell {
  int index = 0;
  std::array<std::string, 3> labels;
  CircuitSpec spec;
  ParameterBounds bounds;
};

// Strict-schema JSON load: unknown keys anywhere are rejected, every
// field is required. Errors name the path and the offending field.
Device load_device(const std::string& path);
Device parse_device(const std::string& json_text, const std::string& origin);

// Validates adjacency/distinctness of every declared cell and resolves
// the per-cell CircuitSpec. Qubit pairs without a direct coupling entry
// get the virtual default (Q1-Q3) of virtual_g13_hz.
std::vector<UnitCell> enumerate_cells(const Device& device,
                                      double virtual_g13_hz = 9e6);

// Curated per-target, per-cell seeds (the shipped seed-table file).
struct SeedTable {
  // key: (gate name, cell index)
  std::map<std::pair<std::string, int>, ParameterVector> seeds;

  std::optional<ParameterVector> lookup(GateKind kind, int cell_index) const;
};

SeedTable load_seed_table(const std::string& path);

}  // namespace pcr
