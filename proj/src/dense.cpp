#include "duality/dense.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "duality/limits.hpp"
#include "duality/models.hpp"

namespace duality {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t site_mask(int site, int length) {
  return std::uint64_t{1} << (length - 1 - site);
}

struct TermAction {
  std::uint64_t x_mask = 0;  // flips in index space
  std::uint64_t z_mask = 0;  // sign bits in index space
  Complex factor;            // coefficient times i^(#Y)
};

// W |j> = i^{#Y} (-1)^{popcount(j & z_mask)} |j ^ x_mask>, per site letter.
std::vector<TermAction> term_actions(const PauliSum& h) {
  std::vector<TermAction> actions;
  actions.reserve(h.size());
  for (const auto& [key, coeff] : h.terms()) {
    TermAction action;
    int ys = 0;
    for (int k = 0; k < h.length(); ++k) {
      const bool x = key.x_bit(k), z = key.z_bit(k);
      if (x) action.x_mask |= site_mask(k, h.length());
      if (z) action.z_mask |= site_mask(k, h.length());
      if (x && z) ++ys;
    }
    action.factor = coeff * kPhases[ys % 4];
    actions.push_back(action);
  }
  return actions;
}

void check_state_size(int length) {
  if (length > max_state_qubits())
    throw SizeLimitError("state size exceeds the state backend limit");
}

int gap_index(const std::vector<double>& eigenvalues) {
  for (std::size_t i = 1; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > eigenvalues[0] + SpectrumResult::kDegeneracyTol)
      return static_cast<int>(i);
  return -1;
}

// Basic Lanczos with full reorthogonalization; returns the lowest Ritz
// pairs once the extremal values settle.
std::pair<std::vector<double>, Eigen::MatrixXcd> lanczos_lowest(
    const PauliSum& h, int pairs_wanted) {
  const int length = h.length();
  const Eigen::Index dim = Eigen::Index{1} << length;
  const auto actions = term_actions(h);
  auto matvec = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (const auto& a : actions) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double sign =
            (std::popcount(static_cast<std::uint64_t>(j) & a.z_mask) & 1)
                ? -1.0
                : 1.0;
        out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(j) ^
                                      a.x_mask)) += a.factor * sign * v(j);
      }
    }
    return out;
  };

  const int max_steps = static_cast<int>(std::min<Eigen::Index>(dim, 260));
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd q(dim);
  for (Eigen::Index j = 0; j < dim; ++j) q(j) = Complex(gauss(rng), gauss(rng));
  q.normalize();

  Eigen::MatrixXcd basis(dim, max_steps);
  std::vector<double> alphas, betas;
  basis.col(0) = q;
  std::vector<double> previous;
  for (int m = 1; m <= max_steps; ++m) {
    Eigen::VectorXcd w = matvec(basis.col(m - 1));
    const double alpha = std::real(basis.col(m - 1).dot(w));
    alphas.push_back(alpha);
    // full reorthogonalization, twice for stability
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < m; ++i)
        w -= basis.col(i).dot(w) * basis.col(i);
    const double beta = w.norm();

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) tri(i, i) = alphas[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) {
      tri(i, i + 1) = betas[static_cast<std::size_t>(i)];
      tri(i + 1, i) = betas[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);

    const int available = std::min(pairs_wanted, m);
    std::vector<double> current(es.eigenvalues().data(),
                                es.eigenvalues().data() + available);
    const bool exhausted = beta < 1e-12 || m == max_steps;
    bool settled = previous.size() == current.size() && m > 2 * pairs_wanted;
    if (settled)
      for (std::size_t i = 0; i < current.size(); ++i)
        settled = settled && std::abs(current[i] - previous[i]) < 1e-12;
    if ((settled && available == pairs_wanted) || exhausted) {
      Eigen::MatrixXcd vectors(dim, available);
      for (int i = 0; i < available; ++i) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        for (int r = 0; r < m; ++r)
          v += es.eigenvectors()(r, i) * basis.col(r);
        v.normalize();
        vectors.col(i) = v;
      }
      return {current, vectors};
    }
    previous = std::move(current);
    if (m < max_steps) {
      betas.push_back(beta);
      basis.col(m) = w / beta;
    }
  }
  throw ConvergenceError("lanczos_lowest: did not converge");
}

}  // namespace

void DenseState::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero state");
  amplitudes /= n;
}

bool DenseState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

DenseState DenseState::basis_state(int length, std::uint64_t index) {
  check_state_size(length);
  DenseState s{length, Eigen::VectorXcd::Zero(Eigen::Index{1} << length)};
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

DenseState DenseState::plus_state(int length) {
  check_state_size(length);
  const Eigen::Index dim = Eigen::Index{1} << length;
  DenseState s{length, Eigen::VectorXcd::Constant(
                           dim, 1.0 / std::sqrt(static_cast<double>(dim)))};
  return s;
}

DenseState DenseState::all_ones(int length) {
  return basis_state(length, (std::uint64_t{1} << length) - 1);
}

Eigen::MatrixXcd to_dense(const PauliSum& h) {
  if (h.length() > max_dense_qubits())
    throw SizeLimitError("to_dense(PauliSum): size exceeds dense limit");
  const Eigen::Index dim = Eigen::Index{1} << h.length();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& action : term_actions(h)) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double sign =
          (std::popcount(static_cast<std::uint64_t>(j) & action.z_mask) & 1)
              ? -1.0
              : 1.0;
      out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(j) ^
                                    action.x_mask),
          j) += action.factor * sign;
    }
  }
  return out;
}

DenseState apply(const Gate& g, const DenseState& s) {
  DenseState out = s;
  const int length = s.length;
  const Eigen::Index dim = out.amplitudes.size();
  auto& v = out.amplitudes;
  switch (g.kind) {
    case Gate::Kind::Hadamard: {
      const std::uint64_t m = site_mask(g.a, length);
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (static_cast<std::uint64_t>(j) & m) continue;
        const Eigen::Index j1 = static_cast<Eigen::Index>(
            static_cast<std::uint64_t>(j) | m);
        const Complex a = v(j), b = v(j1);
        v(j) = (a + b) * inv_sqrt2;
        v(j1) = (a - b) * inv_sqrt2;
      }
      break;
    }
    case Gate::Kind::Cnot: {
      const std::uint64_t mc = site_mask(g.a, length);
      const std::uint64_t mt = site_mask(g.b, length);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const std::uint64_t uj = static_cast<std::uint64_t>(j);
        if ((uj & mc) && !(uj & mt))
          std::swap(v(j), v(static_cast<Eigen::Index>(uj | mt)));
      }
      break;
    }
    case Gate::Kind::Cz: {
      const std::uint64_t ma = site_mask(g.a, length);
      const std::uint64_t mb = site_mask(g.b, length);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const std::uint64_t uj = static_cast<std::uint64_t>(j);
        if ((uj & ma) && (uj & mb)) v(j) = -v(j);
      }
      break;
    }
    case Gate::Kind::Local: {
      const std::uint64_t m = site_mask(g.a, length);
      const auto& mat = g.op.matrix();
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (static_cast<std::uint64_t>(j) & m) continue;
        const Eigen::Index j1 = static_cast<Eigen::Index>(
            static_cast<std::uint64_t>(j) | m);
        const Complex a = v(j), b = v(j1);
        v(j) = mat(0, 0) * a + mat(0, 1) * b;
        v(j1) = mat(1, 0) * a + mat(1, 1) * b;
      }
      break;
    }
  }
  return out;
}

DenseState apply(const Circuit& c, const DenseState& s, bool renormalize) {
  if (c.length() != s.length)
    throw DimensionError("apply: circuit/state length mismatch");
  DenseState out = s;
  for (const auto& g : c.gates()) out = apply(g, out);
  if (renormalize) out.normalize();
  return out;
}

Eigen::MatrixXcd to_dense(const Circuit& c) {
  if (c.length() > max_dense_qubits())
    throw SizeLimitError("to_dense(Circuit): size exceeds dense limit");
  const Eigen::Index dim = Eigen::Index{1} << c.length();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  DenseState column{c.length(), Eigen::VectorXcd()};
  for (Eigen::Index j = 0; j < dim; ++j) {
    column.amplitudes = out.col(j);
    out.col(j) = apply(c, column).amplitudes;
  }
  return out;
}

DenseState apply(const PauliSum& h, const DenseState& s) {
  if (h.length() != s.length)
    throw DimensionError("apply: operator/state length mismatch");
  DenseState out{s.length, Eigen::VectorXcd::Zero(s.amplitudes.size())};
  const Eigen::Index dim = s.amplitudes.size();
  for (const auto& action : term_actions(h)) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double sign =
          (std::popcount(static_cast<std::uint64_t>(j) & action.z_mask) & 1)
              ? -1.0
              : 1.0;
      out.amplitudes(static_cast<Eigen::Index>(
          static_cast<std::uint64_t>(j) ^ action.x_mask)) +=
          action.factor * sign * s.amplitudes(j);
    }
  }
  return out;
}

Complex expectation(const PauliSum& h, const DenseState& s) {
  return s.amplitudes.dot(apply(h, s).amplitudes);
}

std::pair<SpectrumResult, DenseState> ground(const PauliSum& h) {
  if (!h.is_hermitian())
    throw std::invalid_argument("ground: Hamiltonian must be Hermitian");
  const int length = h.length();
  SpectrumResult result;
  DenseState state{length, Eigen::VectorXcd()};
  if (length <= max_dense_qubits()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(h));
    result.eigenvalues.assign(es.eigenvalues().data(),
                              es.eigenvalues().data() +
                                  es.eigenvalues().size());
    result.full_spectrum = true;
    state.amplitudes = es.eigenvectors().col(0);
  } else if (length <= max_state_qubits()) {
    auto [values, vectors] = lanczos_lowest(h, 6);
    result.eigenvalues = values;
    result.full_spectrum = false;
    state.amplitudes = vectors.col(0);
  } else {
    throw SizeLimitError("ground: size exceeds the state backend limit");
  }
  result.ground_energy = result.eigenvalues.front();
  const int gi = gap_index(result.eigenvalues);
  result.gap = gi < 0 ? 0.0
                      : result.eigenvalues[static_cast<std::size_t>(gi)] -
                            result.ground_energy;
  state.normalize();
  return {result, state};
}

Eigen::MatrixXcd reduced_density(const DenseState& s,
                                 const std::vector<int>& sites) {
  if (!s.is_normalized(1e-9))
    throw std::invalid_argument("reduced_density: state must be normalized");
  std::vector<int> subset = sites;
  std::sort(subset.begin(), subset.end());
  if (subset.empty() ||
      static_cast<int>(subset.size()) >= s.length ||
      std::adjacent_find(subset.begin(), subset.end()) != subset.end() ||
      subset.front() < 0 || subset.back() >= s.length)
    throw std::invalid_argument(
        "reduced_density: sites must form a proper nonempty subset");

  std::vector<int> rest;
  for (int k = 0; k < s.length; ++k)
    if (!std::binary_search(subset.begin(), subset.end(), k))
      rest.push_back(k);

  const Eigen::Index dim_a = Eigen::Index{1} << subset.size();
  const Eigen::Index dim_b = Eigen::Index{1} << rest.size();
  auto scatter = [&](std::uint64_t bits, const std::vector<int>& where) {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < where.size(); ++i)
      if (bits & (std::uint64_t{1} << (where.size() - 1 - i)))
        index |= site_mask(where[i], s.length);
    return index;
  };

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_a, dim_a);
  for (Eigen::Index b = 0; b < dim_b; ++b) {
    const std::uint64_t base = scatter(static_cast<std::uint64_t>(b), rest);
    for (Eigen::Index a1 = 0; a1 < dim_a; ++a1) {
      const Complex amp1 = s.amplitudes(static_cast<Eigen::Index>(
          base | scatter(static_cast<std::uint64_t>(a1), subset)));
      for (Eigen::Index a2 = 0; a2 < dim_a; ++a2) {
        const Complex amp2 = s.amplitudes(static_cast<Eigen::Index>(
            base | scatter(static_cast<std::uint64_t>(a2), subset)));
        rho(a1, a2) += amp1 * std::conj(amp2);
      }
    }
  }
  return rho;
}

double local_entropy(const DenseState& s, const std::vector<int>& sites) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced_density(s, sites));
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p <= 1e-12) continue;
    entropy -= p * std::log2(p);
  }
  return std::max(0.0, entropy);
}

double fidelity(const DenseState& a, const DenseState& b) {
  if (a.length != b.length)
    throw DimensionError("fidelity: length mismatch");
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("fidelity: zero state");
  const Complex overlap = a.amplitudes.dot(b.amplitudes) / (na * nb);
  return std::norm(overlap);
}

std::vector<EnergyScanRow> duality_energy_scan(
    const std::vector<double>& j_values, const std::vector<int>& l_values) {
  for (double j : j_values)
    if (j == 0.0 || !std::isfinite(j) || !std::isfinite(1.0 / j))
      throw std::invalid_argument(
          "duality_energy_scan: J must be nonzero and finite (the coupling "
          "inversion degenerates at J = 0 and J = infinity)");
  std::vector<int> lengths = l_values;
  std::sort(lengths.begin(), lengths.end());
  std::vector<double> couplings = j_values;
  std::sort(couplings.begin(), couplings.end());

  std::vector<EnergyScanRow> rows;
  for (int length : lengths) {
    std::map<double, std::pair<double, double>> cache;  // J and 1/J reuse
    auto energy_and_gap = [length, &cache](double j) {
      auto it = cache.find(j);
      if (it != cache.end()) return it->second;
      const auto [spectrum, state] =
          ground(build({.family = ModelFamily::Ising,
                        .length = length,
                        .J = j,
                        .B = 1.0,
                        .boundary = Boundary::Open}));
      const std::pair<double, double> result(spectrum.ground_energy,
                                             spectrum.gap);
      cache.emplace(j, result);
      return result;
    };
    for (double j : couplings) {
      const auto [e0, gap] = energy_and_gap(j);
      const double e0_dual = j == 1.0 ? e0 : energy_and_gap(1.0 / j).first;
      rows.push_back({length, j, e0 / length,
                      std::abs(e0 - j * e0_dual) / length, gap,
                      2.0 * std::abs(1.0 - 1.0 / j)});
    }
  }
  return rows;
}

}  // namespace duality
