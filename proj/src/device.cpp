#include "pcr/device.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pcr/errors.hpp"
#include "json.hpp"

namespace pcr {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

double num_field(const json& obj, const std::string& key,
                 const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError(where + ": missing field '" + key + "'");
  if (!obj.at(key).is_number())
    throw ConfigError(where + ": field '" + key + "' must be a number");
  return obj.at(key).get<double>();
}

std::string str_field(const json& obj, const std::string& key,
                      const std::string& where) {
  if (!obj.contains(key))
    throw ConfigError(where + ": missing field '" + key + "'");
  if (!obj.at(key).is_string())
    throw ConfigError(where + ": field '" + key + "' must be a string");
  return obj.at(key).get<std::string>();
}

}  // namespace

const DeviceQubit* Device::find_qubit(const std::string& label) const {
  for (const auto& q : qubits)
    if (q.label == label) return &q;
  return nullptr;
}

const DeviceCoupler* Device::find_coupler(const std::string& label) const {
  for (const auto& c : couplers)
    if (c.label == label) return &c;
  return nullptr;
}

double Device::coupling_hz(const std::string& a, const std::string& b) const {
  for (const auto& c : couplings)
    if ((c.a == a && c.b == b) || (c.a == b && c.b == a))
      return c.g_mhz * 1e6;
  return 0.0;
}

const DeviceCoupler* Device::shared_coupler(const std::string& qa,
                                            const std::string& qb) const {
  for (const auto& c : couplers) {
    if (coupling_hz(qa, c.label) != 0.0 && coupling_hz(qb, c.label) != 0.0)
      return &c;
  }
  return nullptr;
}

Device parse_device(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": JSON parse failure: " + e.what());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
  check_keys(root, {"qubits", "couplers", "couplings", "unit_cells"}, origin);
  for (const char* key : {"qubits", "couplers", "couplings", "unit_cells"})
    if (!root.contains(key))
      throw ConfigError(origin + ": missing section '" + std::string(key) + "'");

  Device dev;
  std::set<std::string> labels;

  for (const auto& jq : root.at("qubits")) {
    const std::string where = origin + ": qubits";
    check_keys(jq, {"label", "freq_GHz", "anharm_MHz", "T1_us", "T2_us"},
               where);
    DeviceQubit q;
    q.label = str_field(jq, "label", where);
    q.freq_ghz = num_field(jq, "freq_GHz", where + "[" + q.label + "]");
    q.anharm_mhz = num_field(jq, "anharm_MHz", where + "[" + q.label + "]");
    q.t1_us = num_field(jq, "T1_us", where + "[" + q.label + "]");
    q.t2_us = num_field(jq, "T2_us", where + "[" + q.label + "]");
    if (!labels.insert(q.label).second)
      throw ConfigError(where + ": duplicate label '" + q.label + "'");
    dev.qubits.push_back(q);
  }

  for (const auto& jc : root.at("couplers")) {
    const std::string where = origin + ": couplers";
    check_keys(jc, {"label", "freq_GHz", "min_GHz", "max_GHz"}, where);
    DeviceCoupler c;
    c.label = str_field(jc, "label", where);
    c.freq_ghz = num_field(jc, "freq_GHz", where + "[" + c.label + "]");
    c.min_ghz = num_field(jc, "min_GHz", where + "[" + c.label + "]");
    c.max_ghz = num_field(jc, "max_GHz", where + "[" + c.label + "]");
    if (!(c.min_ghz < c.max_ghz))
      throw ConfigError(where + "[" + c.label + "]: min_GHz must be < max_GHz");
    if (!labels.insert(c.label).second)
      throw ConfigError(where + ": duplicate label '" + c.label + "'");
    dev.couplers.push_back(c);
  }

  for (const auto& jg : root.at("couplings")) {
    const std::string where = origin + ": couplings";
    check_keys(jg, {"a", "b", "g_MHz"}, where);
    DeviceCoupling g;
    g.a = str_field(jg, "a", where);
    g.b = str_field(jg, "b", where);
    g.g_mhz = num_field(jg, "g_MHz", where);
    if (!labels.count(g.a) || !labels.count(g.b))
      throw ConfigError(where + ": coupling references unknown label '" +
                        (labels.count(g.a) ? g.b : g.a) + "'");
    dev.couplings.push_back(g);
  }

  for (const auto& jc : root.at("unit_cells")) {
    if (!jc.is_array() || jc.size() != 3)
      throw ConfigError(origin + ": unit_cells entries must be 3-element arrays");
    std::array<std::string, 3> cell;
    for (int i = 0; i < 3; ++i) {
      if (!jc.at(i).is_string())
        throw ConfigError(origin + ": unit_cells entries must hold qubit labels");
      cell[i] = jc.at(i).get<std::string>();
    }
    dev.unit_cells.push_back(cell);
  }
  return dev;
}

Device load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open device file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_device(buf.str(), path);
}

std::vector<UnitCell> enumerate_cells(const Device& device,
                                      double virtual_g13_hz) {
  std::vector<UnitCell> cells;
  int index = 0;
  for (const auto& labels : device.unit_cells) {
    ++index;
    const std::string where = "unit cell " + std::to_string(index);
    if (labels[0] == labels[1] || labels[1] == labels[2] ||
        labels[0] == labels[2])
      throw ConfigError(where + ": qubit labels must be distinct");

    UnitCell cell;
    cell.index = index;
    cell.labels = labels;

    const DeviceQubit* q[3];
    for (int i = 0; i < 3; ++i) {
      q[i] = device.find_qubit(labels[i]);
      if (!q[i])
        throw ConfigError(where + ": unknown qubit '" + labels[i] + "'");
      cell.spec.qubit_freq_hz[i] = q[i]->freq_ghz * 1e9;
      cell.spec.anharm_hz[i] = q[i]->anharm_mhz * 1e6;
      cell.spec.t1_s[i] = q[i]->t1_us * 1e-6;
      cell.spec.t2_s[i] = q[i]->t2_us * 1e-6;
    }

    const DeviceCoupler* c12 = device.shared_coupler(labels[0], labels[1]);
    const DeviceCoupler* c23 = device.shared_coupler(labels[1], labels[2]);
    if (!c12 || !c23)
      throw ConfigError(where + ": qubits '" + labels[0] + "', '" +
                        labels[1] + "', '" + labels[2] +
                        "' are not adjacent (no shared coupler)");
    cell.spec.coupler_freq_hz = {c12->freq_ghz * 1e9, c23->freq_ghz * 1e9};

    const DeviceCoupler* couplers[2] = {c12, c23};
    for (int i = 0; i < 3; ++i)
      for (int r = 0; r < 2; ++r)
        cell.spec.qubit_coupler_g_hz[i][r] =
            device.coupling_hz(labels[i], couplers[r]->label);

    cell.spec.direct_g_hz[0] = device.coupling_hz(labels[0], labels[1]);
    cell.spec.direct_g_hz[1] = device.coupling_hz(labels[1], labels[2]);
    cell.spec.direct_g_hz[2] = device.coupling_hz(labels[0], labels[2]);
    if (cell.spec.direct_g_hz[2] == 0.0)
      cell.spec.direct_g_hz[2] = virtual_g13_hz;

    cell.bounds.lower(0) = c12->min_ghz;
    cell.bounds.upper(0) = c12->max_ghz;
    cell.bounds.lower(1) = c23->min_ghz;
    cell.bounds.upper(1) = c23->max_ghz;

    cell.spec.validate();
    cells.push_back(cell);
  }
  return cells;
}

std::optional<ParameterVector> SeedTable::lookup(GateKind kind,
                                                 int cell_index) const {
  const auto it = seeds.find({gate_name(kind), cell_index});
  if (it == seeds.end()) return std::nullopt;
  return it->second;
}

SeedTable load_seed_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open seed table '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": JSON parse failure: " + e.what());
  }
  SeedTable table;
  for (const auto& gate_entry : root.items()) {
    gate_from_name(gate_entry.key());  // validates the name
    for (const auto& cell_entry : gate_entry.value().items()) {
      const int cell = std::stoi(cell_entry.key());
      const auto& v = cell_entry.value();
      if (!v.is_array() || v.size() != 5)
        throw ConfigError(path + ": seed for " + gate_entry.key() + "/" +
                          cell_entry.key() + " must be a 5-element array");
      ParameterVector p;
      p.wc12_ghz = v.at(0).get<double>();
      p.wc23_ghz = v.at(1).get<double>();
      p.a1 = v.at(2).get<double>();
      p.a2 = v.at(3).get<double>();
      p.a3 = v.at(4).get<double>();
      table.seeds[{gate_entry.key(), cell}] = p;
    }
  }
  return table;
}

}  // namespace pcr
