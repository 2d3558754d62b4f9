#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "duality/local_ops.hpp"
#include "duality/pauli.hpp"

namespace duality {

enum class Boundary { Open, Periodic };

/// One gate of a sequence. Clifford kinds (Cnot, Hadamard, Cz) act on Pauli
/// sums by exact string rewriting; Local gates carry an arbitrary invertible
/// 2x2 operator together with its exact inverse and act by Pauli-basis
/// expansion.
struct Gate {
  enum class Kind { Cnot, Hadamard, Cz, Local };

  Kind kind = Kind::Hadamard;
  int a = 0;  // Cnot: control; Cz: first site; Hadamard/Local: site
  int b = 0;  // Cnot: target; Cz: second site
  LocalOp op, op_inverse;
  bool unitary = true;

  static Gate cnot(int control, int target);
  static Gate hadamard(int site);
  static Gate cz(int site_a, int site_b);
  /// Local gate; the inverse is computed from m (throws
  /// SingularOperatorError when m is singular).
  static Gate local(int site, const LocalOp& m);
  /// Local gate with a caller-supplied exact inverse; validated to 1e-12.
  static Gate local(int site, const LocalOp& m, const LocalOp& m_inverse);

  Gate inverted() const;
};

/// Ordered gate sequence over `length` sites. Read left to right as applied
/// to states: the first listed gate acts first. The boundary mode is used by
/// the canned layer builders (nearest-neighbour pairs wrap iff periodic).
class Circuit {
 public:
  explicit Circuit(int length, Boundary boundary = Boundary::Open);

  int length() const { return length_; }
  Boundary boundary() const { return boundary_; }
  const std::vector<Gate>& gates() const { return gates_; }

  void append(const Gate& g);
  void append(const Circuit& other);

  Circuit inverted() const;
  bool is_unitary() const;

 private:
  int length_;
  Boundary boundary_;
  std::vector<Gate> gates_;
};

/// Conjugation action h -> C^{-1} h C, where C is the circuit as applied to
/// states (first gate innermost). For unitary gates the inverse is the
/// adjoint, so this reduces to the usual Heisenberg transformation; for
/// invertible non-unitary gates it is the similarity transformation.
/// Clifford gates map each term to a single term with exact discrete phase;
/// Local gates map each term to at most four.
PauliSum conjugate(const Circuit& c, const PauliSum& h);

/// CNOT staircase (control k, target k+1, ascending) followed by a Hadamard
/// layer. Conjugation realizes the duality map
///   X_n -> Z_1 ... Z_n,   Z_n -> X_n X_{n+1}   (X_L X_{L+1} read as X_L),
/// with 1-based site labels and open boundaries.
Circuit ising_duality_circuit(int length);

/// Controlled-phase gates on every nearest-neighbour pair. Conjugation sends
/// X_k -> Z_{k-1} X_k Z_{k+1} (truncated at open ends) and fixes every Z_k.
Circuit cz_layer(int length, Boundary boundary);

Circuit hadamard_layer(int length, Boundary boundary = Boundary::Open);

/// Hadamard layer, CZ layer, Hadamard layer (open boundaries). Conjugation
/// swaps the roles of the three-site XZX coupling and the transverse field
/// in the bulk of the cluster chain; see the models module.
Circuit cluster_selfdual_circuit(int length);

/// The non-unitary transform that maps the periodic ZXZ chain onto decoupled
/// single-site blocks: a CZ layer followed by diag(sqrt(lambda),
/// 1/sqrt(lambda)) on every site. lambda may be negative (complex square
/// roots are used); lambda == 0 throws SingularOperatorError.
Circuit zxz_diagonalizing_transform(int length, double lambda);

/// Variant with the layer order reversed and the single-site operations made
/// unitary: a layer of local unitaries followed by the CZ layer. Each local
/// unitary diagonalizes [[B, -J], [-J, -B]] with the lower eigenvalue's
/// eigenvector placed at |1>. (J, B) == (0, 0) is rejected.
Circuit zxz_reversed_transform(int length, double coupling_j, double field_b);

/// One gate per line: "CNOT c t", "H s", "CZ a b",
/// "LOCAL s re00 im00 re01 im01 re10 im10 re11 im11"; sites are 1-based.
std::string to_text(const Circuit& c);
Circuit parse_circuit(std::string_view text, int length,
                      Boundary boundary = Boundary::Open);

}  // namespace duality
