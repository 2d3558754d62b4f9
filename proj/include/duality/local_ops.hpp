#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <span>

#include "duality/pauli.hpp"

namespace duality {

/// Arbitrary complex 2x2 operator acting on one site.
class LocalOp {
 public:
  LocalOp();  // identity
  LocalOp(Complex m00, Complex m01, Complex m10, Complex m11);
  explicit LocalOp(const Eigen::Matrix2cd& m);

  static LocalOp pauli(PauliOp op);
  static LocalOp diagonal(Complex top, Complex bottom);

  const Eigen::Matrix2cd& matrix() const { return m_; }
  Complex determinant() const;
  bool is_invertible(double tol = 1e-14) const;
  LocalOp inverse() const;  // throws SingularOperatorError
  LocalOp adjoint() const;
  bool is_unitary(double tol = 1e-12) const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_identity(double tol = 1e-14) const;

  /// Coefficients (c_I, c_X, c_Y, c_Z) such that
  /// m = c_I*I + c_X*X + c_Y*Y + c_Z*Z, exact to machine precision.
  std::array<Complex, 4> pauli_coefficients() const;

  friend LocalOp operator*(const LocalOp& a, const LocalOp& b);

 private:
  Eigen::Matrix2cd m_;
};

/// Site-indexed tensor product of LocalOps with a global complex scale.
/// Unlisted sites act as the identity.
class OperatorString {
 public:
  explicit OperatorString(int length, Complex scale = 1.0);

  int length() const { return length_; }
  Complex scale() const { return scale_; }
  void set_scale(Complex scale) { scale_ = scale; }
  void set_site(int site, const LocalOp& op);
  const std::map<int, LocalOp>& sites() const { return sites_; }

  OperatorString adjoint() const;

  /// Sitewise composition: (tensor A_k)(tensor B_k) = tensor (A_k B_k).
  friend OperatorString operator*(const OperatorString& a,
                                  const OperatorString& b);

 private:
  int length_;
  Complex scale_;
  std::map<int, LocalOp> sites_;
};

/// Pauli-basis expansion; the dense matrix of the result equals the dense
/// matrix of op. At most 4^(number of non-identity sites) terms.
PauliSum expand(const OperatorString& op);

/// Exact 2^L x 2^L Kronecker realization. Throws SizeLimitError above the
/// dense backend limit.
Eigen::MatrixXcd to_dense(const OperatorString& op);

bool commutator_is_zero(const OperatorString& a, const OperatorString& b,
                        double tol = 1e-10);

/// Dimension of the joint +1 fixed space of the generators (dense null-space
/// count of sum_k (g_k - 1)^dag (g_k - 1)).
int fixed_space_dimension(std::span<const OperatorString> generators,
                          double tol = 1e-10);

/// Operational independence: removing any one generator must strictly
/// enlarge the joint +1 fixed space. (Every proper subset then has a larger
/// fixed space than the full set, by monotonicity.)
bool independence_check(std::span<const OperatorString> generators,
                        double tol = 1e-10);

}  // namespace duality
