#pragma once

#include <string>
#include <string_view>

#include "duality/circuits.hpp"
#include "duality/pauli.hpp"

namespace duality {

enum class ModelFamily { Ising, Cluster, ClusterIsing, Zxz, XyField };

std::string family_name(ModelFamily family);
ModelFamily family_from_name(std::string_view name);
Boundary default_boundary(ModelFamily family);

/// Spin-chain Hamiltonian parameters. The families, with 1-based site labels
/// and open boundaries unless noted:
///   Ising:        sum_{k<L} J X_k X_{k+1} + sum_k B Z_k          (B = 1 default)
///   Cluster:      sum_{1<k<L} J X_{k-1} Z_k X_{k+1} + sum_k B Z_k
///   ClusterIsing: Cluster(J1) + sum_{k<L} J2 X_k X_{k+1} + sum_k B Z_k
///   Zxz:          sum_k [-J Z_{k-1} X_k Z_{k+1} + B Z_k]          (periodic)
///   XyField:      sum_{k<L} (J1 X_k X_{k+1} + J2 Y_k Y_{k+1}) + sum_k B Z_k
/// Periodic mode wraps every interaction range over the full ring.
struct ModelSpec {
  ModelFamily family = ModelFamily::Ising;
  int length = 4;
  double J = 1.0;
  double J1 = 0.0;
  double J2 = 0.0;
  double B = 1.0;
  Boundary boundary = Boundary::Open;
};

/// Canonical PauliSum of the model; always Hermitian.
PauliSum build(const ModelSpec& spec);

// The transformed-model targets stated for the open-boundary duality
// identities, built verbatim so finite-size deviations of the conjugation
// output show up as explicit residual terms.
PauliSum ising_dual_target(int length, double coupling_j);
PauliSum cluster_dual_target(int length, double coupling_j, double field_b);
PauliSum cluster_ising_dual_target(int length, double j1, double j2,
                                   double field_b);

struct DualityPair {
  PauliSum transformed;  // conjugation of the model by the duality circuit
  PauliSum target;       // stated right-hand side, built directly
};

/// Conjugates the model by the CNOT+Hadamard duality circuit and builds the
/// stated dual. Supported families: Ising (requires B == 1, exact identity),
/// Cluster and ClusterIsing (bulk-exact; any residual is boundary-supported).
DualityPair duality_residual(const ModelSpec& spec);

}  // namespace duality
