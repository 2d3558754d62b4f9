#pragma once

namespace duality {

// Desk-scale backend limits. Defaults: 12 qubits for full 2^L x 2^L
// matrices, 14 for state vectors and iterative eigenpairs. The environment
// variable PAULI_DUALITY_LMAX overrides both at process startup.
int max_dense_qubits();
int max_state_qubits();

}  // namespace duality
