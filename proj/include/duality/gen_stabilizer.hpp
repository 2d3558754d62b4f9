#pragma once

#include <string>
#include <vector>

#include "duality/dense.hpp"
#include "duality/local_ops.hpp"

namespace duality {

/// Commuting, independent tensor products of arbitrary (possibly
/// non-Hermitian) local operators whose joint +1 eigenspace is
/// one-dimensional; the fixed state is the state they describe.
struct GeneratorSet {
  int length = 0;
  std::vector<OperatorString> generators;
};

/// Pairwise commutation plus the operational independence test.
bool well_formed(const GeneratorSet& g, double tol = 1e-10);

/// Parameters of the periodic ZXZ chain
///   H = sum_k [-J Z_{k-1} X_k Z_{k+1} + B Z_k]
/// whose ground state is fixed by the lambda-deformed cluster generators.
struct ZxzParams {
  int sites = 4;
  double J = 1.0;
  double B = 0.0;

  /// Positive-branch root of lambda^2 + (2B/J) lambda - 1 = 0, with the sign
  /// of the square root following sign(J). Throws DegenerateParameterError
  /// when J == 0 (the deformation is undefined there; the J = 0 chain is a
  /// plain product state handled by the dense backend).
  double lambda() const;
  double lambda_other_root() const;  // diagnostic only, never used to build
  double ground_energy() const;      // -N sqrt(B^2 + J^2)
};

/// The N generators Z_{k-1} M_k Z_{k+1} with M = [[0, lambda],
/// [1/lambda, 0]], periodic indexing.
GeneratorSet zxz_generators(const ZxzParams& p);

/// The unique normalized joint +1 eigenstate, extracted as the null space of
/// sum_k (g_k - 1)^dag (g_k - 1). Throws FixedPointError when the null space
/// is empty or has dimension >= 2.
DenseState fixed_state(const GeneratorSet& g);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct ZxzReport {
  ZxzParams params;
  double lambda = 0.0;
  double tol = 0.0;
  double energy_analytic = 0.0;
  double energy_numeric = 0.0;
  std::vector<CheckResult> checks;
  bool pass = false;
};

/// Runs the full solution chain for the periodic ZXZ chain:
///  (a) conjugation by the diagonalizing transform gives the single-site
///      block sum [[B, -J/lambda], [-J lambda, -B]] exactly,
///  (b) |+> is an eigenstate of the block at -sqrt(B^2 + J^2),
///  (c) the transformed plus state is an H eigenstate at -N sqrt(B^2 + J^2),
///  (d) the generator fixed state matches the diagonalized ground state,
///  (e) the reversed transform applied to |1...1> gives the same state.
ZxzReport verify_zxz_solution(const ZxzParams& p, double tol = 1e-9);

/// Generator-set description of an arbitrary normalized two-qubit pure
/// state: local maps from the Schmidt decomposition conjugate the
/// stabilizers of a maximally entangled reference pair ((|00>+|11>)/sqrt 2).
/// Product states (Schmidt rank 1) get local reflection generators fixing
/// each factor instead.
GeneratorSet two_qubit_generators(const DenseState& state);

}  // namespace duality
