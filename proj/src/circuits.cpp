#include "duality/circuits.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace duality {

namespace {

void check_inverse_pair(const LocalOp& m, const LocalOp& m_inverse) {
  const double err =
      (m.matrix() * m_inverse.matrix() - Eigen::Matrix2cd::Identity()).norm() +
      (m_inverse.matrix() * m.matrix() - Eigen::Matrix2cd::Identity()).norm();
  if (err > 1e-12)
    throw SingularOperatorError(
        "Gate::local: supplied inverse does not invert the operator");
}

}  // namespace

Gate Gate::cnot(int control, int target) {
  if (control == target)
    throw std::invalid_argument("Gate::cnot: control equals target");
  Gate g;
  g.kind = Kind::Cnot;
  g.a = control;
  g.b = target;
  return g;
}

Gate Gate::hadamard(int site) {
  Gate g;
  g.kind = Kind::Hadamard;
  g.a = site;
  return g;
}

Gate Gate::cz(int site_a, int site_b) {
  if (site_a == site_b)
    throw std::invalid_argument("Gate::cz: sites must differ");
  Gate g;
  g.kind = Kind::Cz;
  g.a = site_a;
  g.b = site_b;
  return g;
}

Gate Gate::local(int site, const LocalOp& m) {
  return local(site, m, m.inverse());
}

Gate Gate::local(int site, const LocalOp& m, const LocalOp& m_inverse) {
  check_inverse_pair(m, m_inverse);
  Gate g;
  g.kind = Kind::Local;
  g.a = site;
  g.op = m;
  g.op_inverse = m_inverse;
  g.unitary = m.is_unitary();
  return g;
}

Gate Gate::inverted() const {
  if (kind != Kind::Local) return *this;  // CNOT, H, CZ are involutions
  Gate g = *this;
  std::swap(g.op, g.op_inverse);
  return g;
}

Circuit::Circuit(int length, Boundary boundary)
    : length_(length), boundary_(boundary) {
  if (length <= 0) throw DimensionError("Circuit length must be positive");
}

void Circuit::append(const Gate& g) {
  auto check = [this](int site) {
    if (site < 0 || site >= length_)
      throw DimensionError("Circuit::append: gate site out of range");
  };
  check(g.a);
  if (g.kind == Gate::Kind::Cnot || g.kind == Gate::Kind::Cz) check(g.b);
  gates_.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.length_ != length_)
    throw DimensionError("Circuit::append: length mismatch");
  for (const auto& g : other.gates_) gates_.push_back(g);
}

Circuit Circuit::inverted() const {
  Circuit out(length_, boundary_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
    out.append(it->inverted());
  return out;
}

bool Circuit::is_unitary() const {
  for (const auto& g : gates_)
    if (!g.unitary) return false;
  return true;
}

namespace {

// Exact conjugation rules U P U for the self-inverse Clifford gates, acting
// on phase-free string keys; sign flips go into the coefficient.

void conj_hadamard(PauliString& s, int q, Complex& coeff) {
  const bool x = s.x_bit(q), z = s.z_bit(q);
  if (x && z) coeff = -coeff;  // Y -> -Y
  s.set_bits(q, z, x);
}

void conj_cnot(PauliString& s, int c, int t, Complex& coeff) {
  const bool xc = s.x_bit(c), zc = s.z_bit(c);
  const bool xt = s.x_bit(t), zt = s.z_bit(t);
  if (xc && zt && (xt == zc)) coeff = -coeff;
  s.set_bits(t, xt != xc, zt);
  s.set_bits(c, xc, zc != zt);
}

void conj_cz(PauliString& s, int a, int b, Complex& coeff) {
  const bool xa = s.x_bit(a), za = s.z_bit(a);
  const bool xb = s.x_bit(b), zb = s.z_bit(b);
  if (xa && xb && (za != zb)) coeff = -coeff;
  s.set_bits(a, xa, za != xb);
  s.set_bits(b, xb, zb != xa);
}

PauliSum conjugate_gate(const Gate& g, const PauliSum& h) {
  PauliSum out(h.length());
  switch (g.kind) {
    case Gate::Kind::Hadamard:
      for (const auto& [key, c] : h.terms()) {
        PauliString s = key;
        Complex coeff = c;
        conj_hadamard(s, g.a, coeff);
        out.add(s, coeff);
      }
      break;
    case Gate::Kind::Cnot:
      for (const auto& [key, c] : h.terms()) {
        PauliString s = key;
        Complex coeff = c;
        conj_cnot(s, g.a, g.b, coeff);
        out.add(s, coeff);
      }
      break;
    case Gate::Kind::Cz:
      for (const auto& [key, c] : h.terms()) {
        PauliString s = key;
        Complex coeff = c;
        conj_cz(s, g.a, g.b, coeff);
        out.add(s, coeff);
      }
      break;
    case Gate::Kind::Local: {
      // Precompute the expansion of m^{-1} w m for each letter w.
      std::array<std::array<Complex, 4>, 4> table;
      for (int w = 0; w < 4; ++w) {
        const LocalOp transformed =
            g.op_inverse * LocalOp::pauli(static_cast<PauliOp>(w)) * g.op;
        table[static_cast<std::size_t>(w)] = transformed.pauli_coefficients();
      }
      for (const auto& [key, c] : h.terms()) {
        const int w = static_cast<int>(key.op(g.a));
        for (int v = 0; v < 4; ++v) {
          const Complex e =
              table[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)];
          if (std::abs(e) == 0.0) continue;
          PauliString s = key;
          s.set_op(g.a, static_cast<PauliOp>(v));
          out.add(s, c * e);
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

PauliSum conjugate(const Circuit& c, const PauliSum& h) {
  if (c.length() != h.length())
    throw DimensionError("conjugate: circuit/operator length mismatch");
  PauliSum current = h;
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it)
    current = conjugate_gate(*it, current);
  return current;
}

Circuit ising_duality_circuit(int length) {
  if (length < 2)
    throw std::invalid_argument("ising_duality_circuit: need length >= 2");
  Circuit c(length, Boundary::Open);
  for (int k = 0; k + 1 < length; ++k) c.append(Gate::cnot(k, k + 1));
  for (int k = 0; k < length; ++k) c.append(Gate::hadamard(k));
  return c;
}

Circuit cz_layer(int length, Boundary boundary) {
  if (length < 2) throw std::invalid_argument("cz_layer: need length >= 2");
  Circuit c(length, boundary);
  const int pairs = boundary == Boundary::Periodic ? length : length - 1;
  std::vector<std::pair<int, int>> seen;
  for (int k = 0; k < pairs; ++k) {
    const int a = k, b = (k + 1) % length;
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    bool duplicate = false;
    for (const auto& p : seen) duplicate = duplicate || p == key;
    if (duplicate) continue;  // only the two-site ring degenerates
    seen.push_back(key);
    c.append(Gate::cz(a, b));
  }
  return c;
}

Circuit hadamard_layer(int length, Boundary boundary) {
  Circuit c(length, boundary);
  for (int k = 0; k < length; ++k) c.append(Gate::hadamard(k));
  return c;
}

Circuit cluster_selfdual_circuit(int length) {
  if (length < 3)
    throw std::invalid_argument("cluster_selfdual_circuit: need length >= 3");
  Circuit c(length, Boundary::Open);
  c.append(hadamard_layer(length));
  c.append(cz_layer(length, Boundary::Open));
  c.append(hadamard_layer(length));
  return c;
}

Circuit zxz_diagonalizing_transform(int length, double lambda) {
  if (lambda == 0.0)
    throw SingularOperatorError(
        "zxz_diagonalizing_transform: lambda must be nonzero");
  Circuit c(length, Boundary::Periodic);
  c.append(cz_layer(length, Boundary::Periodic));
  const Complex root = std::sqrt(Complex(lambda, 0.0));
  const LocalOp d = LocalOp::diagonal(root, 1.0 / root);
  const LocalOp d_inverse = LocalOp::diagonal(1.0 / root, root);
  for (int k = 0; k < length; ++k) c.append(Gate::local(k, d, d_inverse));
  return c;
}

Circuit zxz_reversed_transform(int length, double coupling_j, double field_b) {
  if (coupling_j == 0.0 && field_b == 0.0)
    throw DegenerateParameterError(
        "zxz_reversed_transform: (J, B) = (0, 0) has no defined transform");
  Eigen::Matrix2d block;
  block << field_b, -coupling_j, -coupling_j, -field_b;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  // Columns ordered so the lower eigenvalue's eigenvector sits at |1>.
  Eigen::Matrix2d u;
  u.col(0) = es.eigenvectors().col(1);
  u.col(1) = es.eigenvectors().col(0);
  const LocalOp local_u{u.cast<Complex>().eval()};
  Circuit c(length, Boundary::Periodic);
  for (int k = 0; k < length; ++k)
    c.append(Gate::local(k, local_u, local_u.adjoint()));
  c.append(cz_layer(length, Boundary::Periodic));
  return c;
}

std::string to_text(const Circuit& c) {
  std::string out;
  char buf[256];
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case Gate::Kind::Cnot:
        std::snprintf(buf, sizeof buf, "CNOT %d %d\n", g.a + 1, g.b + 1);
        break;
      case Gate::Kind::Hadamard:
        std::snprintf(buf, sizeof buf, "H %d\n", g.a + 1);
        break;
      case Gate::Kind::Cz:
        std::snprintf(buf, sizeof buf, "CZ %d %d\n", g.a + 1, g.b + 1);
        break;
      case Gate::Kind::Local: {
        const auto& m = g.op.matrix();
        std::snprintf(buf, sizeof buf,
                      "LOCAL %d %.17g %.17g %.17g %.17g %.17g %.17g %.17g "
                      "%.17g\n",
                      g.a + 1, m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(),
                      m(0, 1).imag(), m(1, 0).real(), m(1, 0).imag(),
                      m(1, 1).real(), m(1, 1).imag());
        break;
      }
    }
    out += buf;
  }
  return out;
}

Circuit parse_circuit(std::string_view text, int length, Boundary boundary) {
  Circuit c(length, boundary);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string kind;
    fields >> kind;
    if (kind == "CNOT") {
      int a = 0, b = 0;
      if (!(fields >> a >> b))
        throw std::invalid_argument("parse_circuit: bad CNOT line: " + line);
      c.append(Gate::cnot(a - 1, b - 1));
    } else if (kind == "H") {
      int a = 0;
      if (!(fields >> a))
        throw std::invalid_argument("parse_circuit: bad H line: " + line);
      c.append(Gate::hadamard(a - 1));
    } else if (kind == "CZ") {
      int a = 0, b = 0;
      if (!(fields >> a >> b))
        throw std::invalid_argument("parse_circuit: bad CZ line: " + line);
      c.append(Gate::cz(a - 1, b - 1));
    } else if (kind == "LOCAL") {
      int a = 0;
      double v[8];
      if (!(fields >> a >> v[0] >> v[1] >> v[2] >> v[3] >> v[4] >> v[5] >>
            v[6] >> v[7]))
        throw std::invalid_argument("parse_circuit: bad LOCAL line: " + line);
      const LocalOp m(Complex{v[0], v[1]}, Complex{v[2], v[3]},
                      Complex{v[4], v[5]}, Complex{v[6], v[7]});
      c.append(Gate::local(a - 1, m));
    } else {
      throw std::invalid_argument("parse_circuit: unknown gate: " + kind);
    }
  }
  return c;
}

}  // namespace duality
