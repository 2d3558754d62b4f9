#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "duality/errors.hpp"

namespace duality {

using Complex = std::complex<double>;

/// Single-site Pauli operator tag.
enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp op);
PauliOp pauli_from_char(char c);

/// Tensor product of single-site Pauli operators over `length` sites with a
/// discrete phase i^t, t in {0,1,2,3}. Sites are encoded as two bitmasks:
/// the x-part (set for X and Y) and the z-part (set for Z and Y). The phase
/// is an exact fourth root of unity and never touches floating point, so
/// arbitrarily long products keep exact phases.
class PauliString {
 public:
  /// Identity string of the given length, phase +1.
  explicit PauliString(int length);

  static PauliString single(int length, int site, PauliOp op);
  /// Parse a letter string such as "IXZY"; phase +1.
  static PauliString parse(std::string_view letters);

  int length() const { return length_; }
  PauliOp op(int site) const;
  void set_op(int site, PauliOp op);

  bool x_bit(int site) const;
  bool z_bit(int site) const;
  void set_bits(int site, bool x, bool z);

  /// Exponent t of the phase i^t.
  int phase_exponent() const { return phase_; }
  Complex phase() const;
  /// Multiply the phase by i^exponent.
  void multiply_phase(int exponent);

  bool is_identity() const;  // all sites I; phase ignored
  bool is_hermitian() const { return phase_ == 0 || phase_ == 2; }
  int weight() const;  // number of non-identity sites

  /// Two strings either commute or anticommute; this decides which via the
  /// symplectic inner product of the bitmasks.
  bool commutes_with(const PauliString& other) const;

  PauliString adjoint() const;

  /// Letter representation, e.g. "IXZY" (phase not included).
  std::string letters() const;

  /// Phase-free strict ordering on (z-mask, x-mask); used for the canonical
  /// term order of PauliSum and for deterministic output.
  static bool key_less(const PauliString& a, const PauliString& b);
  bool same_letters(const PauliString& other) const;

  /// Group product with exact discrete phase. Throws DimensionError on
  /// length mismatch.
  friend PauliString operator*(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b);

 private:
  int length_;
  int phase_;  // 0..3
  std::vector<std::uint64_t> x_, z_;

  friend class PauliSum;
};

struct PauliKeyLess {
  bool operator()(const PauliString& a, const PauliString& b) const {
    return PauliString::key_less(a, b);
  }
};

/// Finite complex-weighted sum of Pauli strings in canonical form: term keys
/// are phase-free strings (phases folded into the coefficients), keys are
/// unique, coefficients with |c| <= kZeroEps are pruned, and iteration order
/// is the deterministic (z-mask, x-mask) order.
class PauliSum {
 public:
  explicit PauliSum(int length);
  static PauliSum identity(int length, Complex coeff = 1.0);

  int length() const { return length_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Add coeff * s; the discrete phase of s is folded into the coefficient.
  void add(const PauliString& s, Complex coeff);

  /// Coefficient of s in this sum (adjusted for the phase of s).
  Complex coefficient(const PauliString& s) const;

  const std::map<PauliString, Complex, PauliKeyLess>& terms() const {
    return terms_;
  }

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex factor);

  friend PauliSum operator+(PauliSum a, const PauliSum& b);
  friend PauliSum operator-(PauliSum a, const PauliSum& b);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(Complex factor, PauliSum a);
  friend PauliSum operator*(PauliSum a, Complex factor);

  PauliSum adjoint() const;

  /// All keys are Hermitian strings, so the sum is Hermitian iff every
  /// coefficient is real (within tol).
  bool is_hermitian(double tol = 1e-12) const;

  /// One term per line, "<re> <im> <letters>", in canonical order. The
  /// round trip through from_text is exact.
  std::string to_text() const;
  static PauliSum from_text(std::string_view text);

  static constexpr double kZeroEps = 1e-14;

 private:
  int length_;
  std::map<PauliString, Complex, PauliKeyLess> terms_;
};

/// Max |coefficient difference| over the union of term keys.
double max_coefficient_difference(const PauliSum& a, const PauliSum& b);
double max_abs_coefficient(const PauliSum& a);
bool approx_equal(const PauliSum& a, const PauliSum& b, double tol);

}  // namespace duality
