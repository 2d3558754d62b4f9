#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "duality/circuits.hpp"
#include "duality/local_ops.hpp"
#include "duality/pauli.hpp"

namespace duality {

/// 2^length complex amplitude vector. Basis index bit (length-1-k) carries
/// site k, i.e. site 1 is the most significant bit, matching the Kronecker
/// order of to_dense.
struct DenseState {
  int length = 0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
  void normalize();
  bool is_normalized(double tol = 1e-12) const;

  static DenseState basis_state(int length, std::uint64_t index);
  static DenseState plus_state(int length);
  static DenseState all_ones(int length);
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending; full spectrum on dense path
  double ground_energy = 0.0;
  double gap = 0.0;  // to the first strictly higher level (degeneracy-aware)
  bool full_spectrum = true;

  static constexpr double kDegeneracyTol = 1e-8;
};

Eigen::MatrixXcd to_dense(const PauliSum& h);
Eigen::MatrixXcd to_dense(const Circuit& c);

/// Ground eigenpair of a Hermitian PauliSum: full dense diagonalization up
/// to max_dense_qubits, a Lanczos extremal-pair solve up to
/// max_state_qubits. The returned state is normalized (global phase
/// arbitrary).
std::pair<SpectrumResult, DenseState> ground(const PauliSum& h);

/// Gate-by-gate application of the circuit (non-unitary gates allowed; the
/// norm changes unless renormalize is set).
DenseState apply(const Circuit& c, const DenseState& s,
                 bool renormalize = false);
DenseState apply(const Gate& g, const DenseState& s);

/// Matrix-free H |psi>.
DenseState apply(const PauliSum& h, const DenseState& s);
Complex expectation(const PauliSum& h, const DenseState& s);

Eigen::MatrixXcd reduced_density(const DenseState& s,
                                 const std::vector<int>& sites);

/// Von Neumann entropy of the reduced state on `sites`, in bits. Eigenvalues
/// below 1e-12 are clamped to zero before p log p.
double local_entropy(const DenseState& s, const std::vector<int>& sites);

/// |<a|b>|^2 over normalized copies of both states.
double fidelity(const DenseState& a, const DenseState& b);

struct EnergyScanRow {
  int length = 0;
  double J = 0.0;
  double energy_per_site = 0.0;  // E0(H(J)) / L
  double delta = 0.0;            // |E0(H(J)) - J * E0(H(1/J))| / L
  double gap = 0.0;
  double gap_reference = 0.0;  // 2 |1 - 1/J|
};

/// Open-chain Ising at unit field across the (J, L) grid, sorted by L then
/// J. J values must be nonzero and finite (the coupling inversion
/// degenerates in the extreme cases).
std::vector<EnergyScanRow> duality_energy_scan(
    const std::vector<double>& j_values, const std::vector<int>& l_values);

}  // namespace duality
