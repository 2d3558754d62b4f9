#include "duality/local_ops.hpp"

#include <Eigen/Eigenvalues>

#include "duality/limits.hpp"

namespace duality {

namespace {

const Complex kI{0.0, 1.0};

Eigen::Matrix2cd pauli_matrix(PauliOp op) {
  Eigen::Matrix2cd m;
  switch (op) {
    case PauliOp::I: m << 1, 0, 0, 1; break;
    case PauliOp::X: m << 0, 1, 1, 0; break;
    case PauliOp::Y: m << 0, -kI, kI, 0; break;
    case PauliOp::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

LocalOp::LocalOp() { m_.setIdentity(); }

LocalOp::LocalOp(Complex m00, Complex m01, Complex m10, Complex m11) {
  m_ << m00, m01, m10, m11;
}

LocalOp::LocalOp(const Eigen::Matrix2cd& m) : m_(m) {}

LocalOp LocalOp::pauli(PauliOp op) { return LocalOp(pauli_matrix(op)); }

LocalOp LocalOp::diagonal(Complex top, Complex bottom) {
  return LocalOp(top, 0.0, 0.0, bottom);
}

Complex LocalOp::determinant() const { return m_.determinant(); }

bool LocalOp::is_invertible(double tol) const {
  return std::abs(determinant()) > tol;
}

LocalOp LocalOp::inverse() const {
  const Complex det = determinant();
  if (std::abs(det) <= 1e-14)
    throw SingularOperatorError("LocalOp::inverse: operator is singular");
  return LocalOp(m_(1, 1) / det, -m_(0, 1) / det, -m_(1, 0) / det,
                 m_(0, 0) / det);
}

LocalOp LocalOp::adjoint() const { return LocalOp(m_.adjoint().eval()); }

bool LocalOp::is_unitary(double tol) const {
  return (m_ * m_.adjoint() - Eigen::Matrix2cd::Identity()).norm() <= tol;
}

bool LocalOp::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).norm() <= tol;
}

bool LocalOp::is_identity(double tol) const {
  return (m_ - Eigen::Matrix2cd::Identity()).norm() <= tol;
}

std::array<Complex, 4> LocalOp::pauli_coefficients() const {
  return {0.5 * (m_(0, 0) + m_(1, 1)), 0.5 * (m_(0, 1) + m_(1, 0)),
          0.5 * kI * (m_(0, 1) - m_(1, 0)), 0.5 * (m_(0, 0) - m_(1, 1))};
}

LocalOp operator*(const LocalOp& a, const LocalOp& b) {
  return LocalOp((a.m_ * b.m_).eval());
}

OperatorString::OperatorString(int length, Complex scale)
    : length_(length), scale_(scale) {
  if (length <= 0)
    throw DimensionError("OperatorString length must be positive");
}

void OperatorString::set_site(int site, const LocalOp& op) {
  if (site < 0 || site >= length_)
    throw DimensionError("OperatorString site out of range");
  sites_[site] = op;
}

OperatorString OperatorString::adjoint() const {
  OperatorString out(length_, std::conj(scale_));
  for (const auto& [site, op] : sites_) out.set_site(site, op.adjoint());
  return out;
}

OperatorString operator*(const OperatorString& a, const OperatorString& b) {
  if (a.length_ != b.length_)
    throw DimensionError("OperatorString product: length mismatch");
  OperatorString out(a.length_, a.scale_ * b.scale_);
  out.sites_ = a.sites_;
  for (const auto& [site, op] : b.sites_) {
    auto it = out.sites_.find(site);
    if (it == out.sites_.end())
      out.sites_[site] = op;
    else
      it->second = it->second * op;
  }
  return out;
}

PauliSum expand(const OperatorString& op) {
  std::vector<std::pair<PauliString, Complex>> terms;
  terms.emplace_back(PauliString(op.length()), op.scale());
  for (const auto& [site, local] : op.sites()) {
    const auto coeffs = local.pauli_coefficients();
    std::vector<std::pair<PauliString, Complex>> next;
    next.reserve(terms.size() * 4);
    for (const auto& [s, c] : terms) {
      for (int w = 0; w < 4; ++w) {
        if (std::abs(coeffs[static_cast<std::size_t>(w)]) == 0.0) continue;
        PauliString t = s;
        t.set_op(site, static_cast<PauliOp>(w));
        next.emplace_back(std::move(t),
                          c * coeffs[static_cast<std::size_t>(w)]);
      }
    }
    terms = std::move(next);
  }
  PauliSum out(op.length());
  for (const auto& [s, c] : terms) out.add(s, c);
  return out;
}

// Kronecker order: site 0 is the outermost (most significant) factor.
Eigen::MatrixXcd to_dense(const OperatorString& op) {
  if (op.length() > max_dense_qubits())
    throw SizeLimitError("to_dense(OperatorString): size exceeds dense limit");
  Eigen::MatrixXcd out(1, 1);
  out(0, 0) = op.scale();
  for (int site = 0; site < op.length(); ++site) {
    Eigen::Matrix2cd local = Eigen::Matrix2cd::Identity();
    auto it = op.sites().find(site);
    if (it != op.sites().end()) local = it->second.matrix();
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c)
        next.block(r * 2, c * 2, 2, 2) = out(r, c) * local;
    out = std::move(next);
  }
  return out;
}

bool commutator_is_zero(const OperatorString& a, const OperatorString& b,
                        double tol) {
  if (a.length() != b.length())
    throw DimensionError("commutator_is_zero: length mismatch");
  const PauliSum ea = expand(a);
  const PauliSum eb = expand(b);
  return max_coefficient_difference(ea * eb, eb * ea) <= tol;
}

namespace {

int fixed_dim_of(const std::vector<Eigen::MatrixXcd>& deviations,
                 Eigen::Index dim, double tol) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& d : deviations) a += d.adjoint() * d;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  const auto& evs = es.eigenvalues();
  const double threshold = tol * std::max(1.0, evs(evs.size() - 1));
  int count = 0;
  for (Eigen::Index i = 0; i < evs.size(); ++i)
    if (evs(i) <= threshold) ++count;
  return count;
}

}  // namespace

int fixed_space_dimension(std::span<const OperatorString> generators,
                          double tol) {
  if (generators.empty())
    throw std::invalid_argument("fixed_space_dimension: empty generator list");
  const int length = generators[0].length();
  if (length > max_dense_qubits())
    throw SizeLimitError("fixed_space_dimension: size exceeds dense limit");
  const Eigen::Index dim = Eigen::Index{1} << length;
  std::vector<Eigen::MatrixXcd> deviations;
  for (const auto& g : generators) {
    if (g.length() != length)
      throw DimensionError("fixed_space_dimension: length mismatch");
    deviations.push_back(to_dense(g) -
                         Eigen::MatrixXcd::Identity(dim, dim));
  }
  return fixed_dim_of(deviations, dim, tol);
}

bool independence_check(std::span<const OperatorString> generators,
                        double tol) {
  if (generators.empty()) return true;
  const int length = generators[0].length();
  if (static_cast<int>(generators.size()) > length)
    throw std::invalid_argument(
        "independence_check: more generators than sites");
  if (length > max_dense_qubits())
    throw SizeLimitError("independence_check: size exceeds dense limit");
  const Eigen::Index dim = Eigen::Index{1} << length;
  std::vector<Eigen::MatrixXcd> deviations;
  for (const auto& g : generators) {
    if (g.length() != length)
      throw DimensionError("independence_check: length mismatch");
    deviations.push_back(to_dense(g) -
                         Eigen::MatrixXcd::Identity(dim, dim));
  }
  const int full = fixed_dim_of(deviations, dim, tol);
  if (generators.size() == 1)
    return full < static_cast<int>(dim);
  for (std::size_t skip = 0; skip < deviations.size(); ++skip) {
    std::vector<Eigen::MatrixXcd> subset;
    for (std::size_t i = 0; i < deviations.size(); ++i)
      if (i != skip) subset.push_back(deviations[i]);
    if (fixed_dim_of(subset, dim, tol) <= full) return false;
  }
  return true;
}

}  // namespace duality
