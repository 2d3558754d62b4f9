#include "duality/limits.hpp"

#include <cstdlib>
#include <string>

namespace duality {

namespace {

constexpr int kDefaultDenseMax = 12;
constexpr int kDefaultStateMax = 14;

int env_override() {
  const char* raw = std::getenv("PAULI_DUALITY_LMAX");
  if (raw == nullptr) return 0;
  try {
    int value = std::stoi(raw);
    return value > 0 ? value : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int max_dense_qubits() {
  static const int value = env_override() > 0 ? env_override() : kDefaultDenseMax;
  return value;
}

int max_state_qubits() {
  static const int value =
      env_override() > 0 ? env_override() : kDefaultStateMax;
  return value;
}

}  // namespace duality
