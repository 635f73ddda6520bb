#include "pcr/gates.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>

#include "pcr/errors.hpp"

namespace pcr {

namespace {

const complexd kI(0.0, 1.0);

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::Matrix2cd phase_s() {
  Eigen::Matrix2cd s;
  s << 1, 0, 0, kI;
  return s;
}

// Single-qubit gate on logical slot (0-based) of a 3-qubit register.
Eigen::MatrixXcd gate_on3(const Eigen::Matrix2cd& u, int slot) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd& a = slot == 0 ? u : id;
  const Eigen::Matrix2cd& b = slot == 1 ? u : id;
  const Eigen::Matrix2cd& c = slot == 2 ? u : id;
  return Eigen::kroneckerProduct(a, Eigen::kroneckerProduct(b, c).eval())
      .eval();
}

Eigen::Matrix4cd gate_on2(const Eigen::Matrix2cd& u, int slot) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return slot == 0 ? Eigen::kroneckerProduct(u, id).eval()
                   : Eigen::kroneckerProduct(id, u).eval();
}

Eigen::MatrixXcd pauli_rotation(const Eigen::MatrixXcd& word, double theta) {
  const int d = static_cast<int>(word.rows());
  return std::cos(theta / 2.0) * Eigen::MatrixXcd::Identity(d, d) -
         kI * std::sin(theta / 2.0) * word;
}

}  // namespace

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::GHZ: return "GHZ";
    case GateKind::iToffoli: return "iToffoli";
    case GateKind::CCNOT: return "CCNOT";
    case GateKind::CZZ: return "CZZ";
  }
  throw ConfigError("gate_name: invalid kind");
}

GateKind gate_from_name(const std::string& name) {
  if (name == "GHZ" || name == "ghz") return GateKind::GHZ;
  if (name == "iToffoli" || name == "itoffoli") return GateKind::iToffoli;
  if (name == "CCNOT" || name == "ccnot") return GateKind::CCNOT;
  if (name == "CZZ" || name == "czz") return GateKind::CZZ;
  throw ConfigError("unknown gate target '" + name + "'");
}

Eigen::MatrixXcd u_zzx(double theta) {
  return pauli_rotation(pauli_word_matrix("ZZX"), theta);
}

Eigen::MatrixXcd u_izx(double theta) {
  return pauli_rotation(pauli_word_matrix("IZX"), theta);
}

Eigen::Matrix4cd u_z1x2(double theta) {
  Eigen::Matrix4cd zx =
      Eigen::kroneckerProduct(pauli_matrix('Z'), pauli_matrix('X')).eval();
  return std::cos(theta / 2.0) * Eigen::Matrix4cd::Identity() -
         kI * std::sin(theta / 2.0) * zx;
}

Eigen::MatrixXcd ghz_sequence() {
  const Eigen::MatrixXcd h1 = gate_on3(hadamard(), 0);
  const Eigen::MatrixXcd h2 = gate_on3(hadamard(), 1);
  const Eigen::MatrixXcd s3 = gate_on3(phase_s(), 2);
  return s3 * h2 * h1 * u_zzx(M_PI / 2.0) * h1 * h2;
}

Eigen::Matrix4cd bell_sequence() {
  const Eigen::Matrix4cd h1 = gate_on2(hadamard(), 0);
  const Eigen::Matrix4cd s2 = gate_on2(phase_s(), 1);
  return s2 * h1 * u_z1x2(M_PI / 2.0) * h1;
}

Eigen::MatrixXcd ccnot_hamiltonian() {
  auto w = [](const char* s) { return pauli_word_matrix(s); };
  return M_PI / 8.0 *
         (w("IZI") + w("ZII") + w("IIX") + w("ZZX") - w("ZZI") - w("IZX") -
          w("ZIX") - w("III"));
}

Eigen::MatrixXcd itoffoli_hamiltonian() {
  auto w = [](const char* s) { return pauli_word_matrix(s); };
  return M_PI / 8.0 * (w("IIX") + w("ZZX") - w("IZX") - w("ZIX"));
}

Eigen::MatrixXcd czz_hamiltonian() {
  auto w = [](const char* s) { return pauli_word_matrix(s); };
  return M_PI / 4.0 * (w("IZZ") - w("ZZZ"));
}

Eigen::MatrixXcd czz_decomposition() {
  const Eigen::MatrixXcd h3 = gate_on3(hadamard(), 2);
  return h3 * u_izx(M_PI / 2.0) * u_zzx(-M_PI / 2.0) * h3;
}

Eigen::MatrixXcd ideal_unitary(GateKind kind) {
  switch (kind) {
    case GateKind::GHZ: return ghz_sequence();
    case GateKind::iToffoli: return matrix_exponential(itoffoli_hamiltonian(), 1.0);
    case GateKind::CCNOT: return matrix_exponential(ccnot_hamiltonian(), 1.0);
    case GateKind::CZZ: return matrix_exponential(czz_hamiltonian(), 1.0);
  }
  throw ConfigError("ideal_unitary: invalid kind");
}

double phase_aligned_distance(const Eigen::MatrixXcd& u,
                              const Eigen::MatrixXcd& v) {
  const complexd tr = (u.adjoint() * v).trace();
  const complexd phase =
      std::abs(tr) > 0.0 ? tr / std::abs(tr) : complexd(1.0, 0.0);
  return (v - phase * u).norm();
}

GhzDrift static_ghz_drift(double alpha_zzz_hz,
                          const std::array<double, 3>& alpha_twobody_hz,
                          double tau_p_s) {
  Eigen::MatrixXcd h = kTwoPi * alpha_twobody_hz[0] * pauli_word_matrix("ZZI") +
                       kTwoPi * alpha_twobody_hz[1] * pauli_word_matrix("ZIZ") +
                       kTwoPi * alpha_twobody_hz[2] * pauli_word_matrix("IZZ") +
                       kTwoPi * alpha_zzz_hz * pauli_word_matrix("ZZZ");
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  GhzDrift out;
  out.state = matrix_exponential(h, tau_p_s) * ghz;
  out.correction_angle_rad = kTwoPi * alpha_zzz_hz * tau_p_s;
  return out;
}

std::vector<std::string> GateTarget::wanted_words() const {
  std::vector<std::string> w = {pivot};
  for (const auto& r : relations) w.push_back(r.word);
  return w;
}

GateTarget GateTarget::for_gate(GateKind kind, double alpha_opt_hz) {
  GateTarget t;
  t.kind = kind;
  t.alpha_opt_hz = alpha_opt_hz;
  switch (kind) {
    case GateKind::GHZ:
      break;  // ZZX only
    case GateKind::iToffoli:
      t.relations = {{"IIX", +1.0}, {"ZIX", -1.0}, {"IZX", -1.0}};
      break;
    case GateKind::CCNOT:
      t.relations = {
          {"IIX", +1.0}, {"ZIX", -1.0}, {"IZX", -1.0}, {"ZZI", -1.0}};
      break;
    case GateKind::CZZ:
      t.relations = {{"IZX", -1.0}};
      break;
  }
  const auto wanted = t.wanted_words();
  for (const auto& w : ansatz_words()) {
    if (w == "III") continue;
    // Single-qubit Z terms on the undriven qubits are frame terms
    // (control detunings); they commute with every ansatz word and are
    // removed by exact virtual-Z corrections in the pulse protocol.
    if (w == "ZII" || w == "IZI") continue;
    if (std::find(wanted.begin(), wanted.end(), w) != wanted.end()) continue;
    t.unwanted.push_back(w);
  }
  return t;
}

GateTarget GateTarget::itoffoli_alternate(double alpha_opt_hz) {
  GateTarget t = for_gate(GateKind::iToffoli, alpha_opt_hz);
  for (auto& r : t.relations)
    if (r.word == "IIX") r.sign = -1.0;
  return t;
}

}  // namespace pcr
