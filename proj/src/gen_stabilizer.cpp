#include "duality/gen_stabilizer.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "duality/limits.hpp"
#include "duality/models.hpp"

namespace duality {

namespace {

constexpr double kNullSpaceTol = 1e-10;

}  // namespace

bool well_formed(const GeneratorSet& g, double tol) {
  if (g.generators.empty()) return false;
  for (const auto& gen : g.generators)
    if (gen.length() != g.length) return false;
  for (std::size_t i = 0; i < g.generators.size(); ++i)
    for (std::size_t j = i + 1; j < g.generators.size(); ++j)
      if (!commutator_is_zero(g.generators[i], g.generators[j], tol))
        return false;
  return independence_check(g.generators, tol);
}

double ZxzParams::lambda() const {
  if (J == 0.0)
    throw DegenerateParameterError(
        "ZxzParams::lambda: J = 0 leaves the deformation undefined");
  const double ratio = B / J;
  const double sign = J > 0.0 ? 1.0 : -1.0;
  const double root = std::sqrt(ratio * ratio + 1.0);
  // -ratio + sign*root cancels when ratio and sign*root share a sign; the
  // rationalized form 1 / (ratio + sign*root) is exact there.
  if (ratio * sign > 0.0) return 1.0 / (ratio + sign * root);
  return -ratio + sign * root;
}

double ZxzParams::lambda_other_root() const {
  return -1.0 / lambda();  // the two roots multiply to -1
}

double ZxzParams::ground_energy() const {
  return -sites * std::hypot(B, J);
}

GeneratorSet zxz_generators(const ZxzParams& p) {
  if (p.sites < 3)
    throw std::invalid_argument("zxz_generators: need at least 3 sites");
  const double lambda = p.lambda();
  const LocalOp deformed_x(0.0, lambda, 1.0 / lambda, 0.0);
  GeneratorSet set{p.sites, {}};
  for (int k = 0; k < p.sites; ++k) {
    OperatorString g(p.sites);
    g.set_site((k - 1 + p.sites) % p.sites, LocalOp::pauli(PauliOp::Z));
    g.set_site(k, deformed_x);
    g.set_site((k + 1) % p.sites, LocalOp::pauli(PauliOp::Z));
    set.generators.push_back(std::move(g));
  }
  return set;
}

DenseState fixed_state(const GeneratorSet& g) {
  if (g.generators.empty())
    throw std::invalid_argument("fixed_state: empty generator set");
  if (g.length > max_dense_qubits())
    throw SizeLimitError("fixed_state: size exceeds dense limit");
  const Eigen::Index dim = Eigen::Index{1} << g.length;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& gen : g.generators) {
    if (gen.length() != g.length)
      throw DimensionError("fixed_state: generator length mismatch");
    const Eigen::MatrixXcd d =
        to_dense(gen) - Eigen::MatrixXcd::Identity(dim, dim);
    a += d.adjoint() * d;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  const auto& evs = es.eigenvalues();
  const double threshold =
      kNullSpaceTol * std::max(1.0, evs(evs.size() - 1));
  int null_dim = 0;
  for (Eigen::Index i = 0; i < evs.size(); ++i)
    if (evs(i) <= threshold) ++null_dim;
  if (null_dim == 0)
    throw FixedPointError("fixed_state: generators have no joint fixed point");
  if (null_dim > 1)
    throw FixedPointError("fixed_state: joint fixed space has dimension " +
                          std::to_string(null_dim));
  DenseState state{g.length, es.eigenvectors().col(0)};
  state.normalize();
  return state;
}

ZxzReport verify_zxz_solution(const ZxzParams& p, double tol) {
  if (p.sites > max_state_qubits())
    throw SizeLimitError("verify_zxz_solution: size exceeds backend limit");
  ZxzReport report;
  report.params = p;
  report.tol = tol;
  report.lambda = p.lambda();
  report.energy_analytic = p.ground_energy();
  const double lambda = report.lambda;

  const PauliSum h = build({.family = ModelFamily::Zxz,
                            .length = p.sites,
                            .J = p.J,
                            .B = p.B,
                            .boundary = Boundary::Periodic});
  const Circuit transform = zxz_diagonalizing_transform(p.sites, lambda);
  const LocalOp block(p.B, -p.J / lambda, -p.J * lambda, -p.B);

  // (a) conjugation decouples the chain into single-site blocks
  PauliSum block_sum(p.sites);
  for (int k = 0; k < p.sites; ++k) {
    OperatorString single(p.sites);
    single.set_site(k, block);
    block_sum += expand(single);
  }
  const double res_a =
      max_coefficient_difference(conjugate(transform, h), block_sum);
  report.checks.push_back({"block_decoupling", res_a, res_a <= tol});

  // (b) |+> is the block eigenstate at -sqrt(B^2 + J^2)
  Eigen::Vector2cd plus;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const double res_b =
      (block.matrix() * plus + std::hypot(p.B, p.J) * plus).norm();
  report.checks.push_back({"block_eigenvector", res_b, res_b <= tol});

  // (c) transformed plus state is an H eigenstate at the analytic energy
  const DenseState psi =
      apply(transform, DenseState::plus_state(p.sites), true);
  const DenseState h_psi = apply(h, psi);
  const double res_c =
      (h_psi.amplitudes - report.energy_analytic * psi.amplitudes).norm();
  report.checks.push_back({"eigen_equation", res_c, res_c <= tol});

  // (d) generator fixed point vs diagonalized ground state
  const auto [spectrum, ground_state] = ground(h);
  report.energy_numeric = spectrum.ground_energy;
  const DenseState fixed = fixed_state(zxz_generators(p));
  const double res_d = std::max(0.0, 1.0 - fidelity(fixed, ground_state));
  report.checks.push_back({"fixed_state_matches_ground", res_d, res_d <= tol});

  // (e) reversed transform applied to |1...1> yields the same state
  const DenseState psi_reversed =
      apply(zxz_reversed_transform(p.sites, p.J, p.B),
            DenseState::all_ones(p.sites), true);
  const double res_e = std::max(0.0, 1.0 - fidelity(psi_reversed, psi));
  report.checks.push_back({"reversed_transform_state", res_e, res_e <= tol});

  report.pass = true;
  for (const auto& check : report.checks) report.pass = report.pass && check.pass;
  return report;
}

GeneratorSet two_qubit_generators(const DenseState& state) {
  if (state.length != 2)
    throw DimensionError("two_qubit_generators: need a two-qubit state");
  if (!state.is_normalized(1e-9))
    throw std::invalid_argument("two_qubit_generators: unnormalized input");

  Eigen::Matrix2cd psi;
  psi << state.amplitudes(0), state.amplitudes(1), state.amplitudes(2),
      state.amplitudes(3);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(
      psi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s0 = svd.singularValues()(0);
  const double s1 = svd.singularValues()(1);

  GeneratorSet set{2, {}};
  if (s1 <= 1e-12) {
    // Product state: local reflections 2|v><v| - 1 fixing each factor.
    auto reflection = [](const Eigen::Vector2cd& v) {
      return LocalOp(
          (2.0 * v * v.adjoint() - Eigen::Matrix2cd::Identity()).eval());
    };
    const Eigen::Vector2cd left = svd.matrixU().col(0);
    const Eigen::Vector2cd right = svd.matrixV().col(0).conjugate();
    OperatorString g1(2), g2(2);
    g1.set_site(0, reflection(left));
    g2.set_site(1, reflection(right));
    set.generators = {g1, g2};
    return set;
  }

  // psi = (A x B) |Phi+> with A carrying the Schmidt weights.
  Eigen::Matrix2cd a = svd.matrixU();
  a.col(0) *= std::sqrt(2.0) * s0;
  a.col(1) *= std::sqrt(2.0) * s1;
  const Eigen::Matrix2cd b = svd.matrixV().conjugate();
  const Eigen::Matrix2cd a_inv = a.inverse();
  const Eigen::Matrix2cd b_inv = b.inverse();

  auto conjugated = [&](PauliOp op) {
    OperatorString g(2);
    g.set_site(0, LocalOp(
                      (a * LocalOp::pauli(op).matrix() * a_inv).eval()));
    g.set_site(1, LocalOp(
                      (b * LocalOp::pauli(op).matrix() * b_inv).eval()));
    return g;
  };
  set.generators = {conjugated(PauliOp::X), conjugated(PauliOp::Z)};
  return set;
}

}  // namespace duality
