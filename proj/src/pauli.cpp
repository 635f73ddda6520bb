#include "pcr/pauli.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "pcr/errors.hpp"

namespace pcr {

namespace {

constexpr const char* kLetters = "IXYZ";

int letter_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default:
      throw ConfigError(std::string("unknown Pauli letter '") + c + "'");
  }
}

}  // namespace

const Eigen::Matrix2cd& pauli_matrix(char letter) {
  static const std::array<Eigen::Matrix2cd, 4> mats = [] {
    std::array<Eigen::Matrix2cd, 4> m;
    const complexd i(0.0, 1.0);
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, -i, i, 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return mats[letter_index(letter)];
}

Eigen::MatrixXcd pauli_word_matrix(const std::string& word) {
  if (word.size() != 3) throw ConfigError("Pauli word must have 3 letters");
  return Eigen::kroneckerProduct(
             pauli_matrix(word[0]),
             Eigen::kroneckerProduct(pauli_matrix(word[1]),
                                     pauli_matrix(word[2]))
                 .eval())
      .eval();
}

const std::vector<std::string>& all_pauli_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          w.push_back({kLetters[a], kLetters[b], kLetters[c]});
    return w;
  }();
  return words;
}

const std::vector<std::string>& ansatz_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w;
    for (char a : {'I', 'Z'})
      for (char b : {'I', 'Z'})
        for (char c : {'I', 'X', 'Y', 'Z'}) w.push_back({a, b, c});
    return w;
  }();
  return words;
}

int PauliCoefficients::word_index(const std::string& word) {
  if (word.size() != 3) throw ConfigError("Pauli word must have 3 letters");
  return 16 * letter_index(word[0]) + 4 * letter_index(word[1]) +
         letter_index(word[2]);
}

double PauliCoefficients::get(const std::string& word) const {
  return alpha[word_index(word)];
}

void PauliCoefficients::set(const std::string& word, double value_hz) {
  alpha[word_index(word)] = value_hz;
}

Eigen::MatrixXcd PauliCoefficients::reconstruct() const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(8, 8);
  for (const auto& w : all_pauli_words()) {
    const double a = get(w);
    if (a != 0.0) h += a * pauli_word_matrix(w);
  }
  return h;
}

bool is_drive_induced(const std::string& word) {
  return word[2] == 'X' || word[2] == 'Y';
}

bool is_single_qubit_z(const std::string& word) {
  int z = 0, other = 0;
  for (char c : word) {
    if (c == 'Z') ++z;
    else if (c != 'I') ++other;
  }
  return z == 1 && other == 0;
}

}  // namespace pcr
