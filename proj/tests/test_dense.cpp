#include <doctest.h>

#include <cstdlib>

#include "duality/dense.hpp"
#include "duality/limits.hpp"
#include "duality/models.hpp"
#include "oracle.hpp"

using duality::Boundary;
using duality::Circuit;
using duality::Complex;
using duality::DenseState;
using duality::Gate;
using duality::ModelFamily;
using duality::PauliOp;
using duality::PauliString;
using duality::PauliSum;
using duality::build;
using duality::duality_energy_scan;
using duality::ground;

TEST_CASE("to_dense basics") {
  PauliSum z1(1);
  z1.add(PauliString::single(1, 0, PauliOp::Z), 1.0);
  const Eigen::MatrixXcd mz = to_dense(z1);
  CHECK(mz(0, 0) == Complex{1.0, 0.0});
  CHECK(mz(1, 1) == Complex{-1.0, 0.0});
  CHECK(std::abs(mz(0, 1)) == 0.0);

  PauliSum xx(2);
  xx.add(PauliString::parse("XX"), 1.0);
  const Eigen::MatrixXcd mxx = to_dense(xx);
  CHECK(mxx(0, 3) == Complex{1.0, 0.0});
  CHECK(mxx(3, 0) == Complex{1.0, 0.0});
  CHECK(mxx(1, 2) == Complex{1.0, 0.0});
  CHECK(std::abs(mxx(0, 0)) == 0.0);

  Circuit cz(2);
  cz.append(Gate::cz(0, 1));
  const Eigen::MatrixXcd mcz = to_dense(cz);
  Eigen::Vector4cd diag;
  diag << 1, 1, 1, -1;
  CHECK((mcz - Eigen::MatrixXcd(diag.asDiagonal())).norm() < 1e-15);
}

TEST_CASE("to_dense agrees with the kron oracle on random sums") {
  for (int trial = 0; trial < 20; ++trial) {
    const int length = 1 + trial % 5;
    const PauliSum h = oracle::random_sum(length, 5);
    CHECK((to_dense(h) - oracle::matrix_of(h)).norm() < 1e-12);
  }
}

TEST_CASE("matrix-free apply matches the dense matrix") {
  for (int trial = 0; trial < 10; ++trial) {
    const int length = 2 + trial % 4;
    const PauliSum h = oracle::random_sum(length, 5);
    DenseState s = DenseState::plus_state(length);
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i)
      s.amplitudes(i) *= Complex(std::cos(0.3 * i), std::sin(0.2 * i));
    s.normalize();
    const DenseState via_terms = apply(h, s);
    const Eigen::VectorXcd via_matrix = to_dense(h) * s.amplitudes;
    CHECK((via_terms.amplitudes - via_matrix).norm() < 1e-12);
  }
}

TEST_CASE("ground state examples") {
  // decoupled Ising chain: field-aligned product state |11>
  const auto [spec2, state2] = ground(build({.family = ModelFamily::Ising,
                                             .length = 2,
                                             .J = 0.0,
                                             .B = 1.0,
                                             .boundary = Boundary::Open}));
  CHECK(spec2.ground_energy == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fidelity(state2, DenseState::all_ones(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // periodic ZXZ at J = B = 1: E0 = -N sqrt(2)
  const auto [spec4, state4] = ground(build({.family = ModelFamily::Zxz,
                                             .length = 4,
                                             .J = 1.0,
                                             .B = 1.0,
                                             .boundary = Boundary::Periodic}));
  CHECK(spec4.ground_energy ==
        doctest::Approx(-4.0 * std::sqrt(2.0)).epsilon(1e-12));

  const auto [spec6, state6] = ground(build({.family = ModelFamily::Zxz,
                                             .length = 6,
                                             .J = 0.0,
                                             .B = 1.0,
                                             .boundary = Boundary::Periodic}));
  CHECK(spec6.ground_energy == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(fidelity(state6, DenseState::all_ones(6)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  PauliSum not_hermitian(2);
  not_hermitian.add(PauliString::parse("XI"), Complex{0.0, 1.0});
  CHECK_THROWS_AS(ground(not_hermitian), std::invalid_argument);
}

TEST_CASE("eigen residuals of returned pairs are tiny") {
  const PauliSum h = build({.family = ModelFamily::ClusterIsing,
                            .length = 6,
                            .J1 = 0.9,
                            .J2 = 0.4,
                            .B = 1.0,
                            .boundary = Boundary::Open});
  const auto [spectrum, state] = ground(h);
  const DenseState image = apply(h, state);
  CHECK((image.amplitudes - spectrum.ground_energy * state.amplitudes)
            .norm() < 1e-9);
}

TEST_CASE("cz layer turns plus states into cluster states") {
  const int n = 4;
  const DenseState cluster =
      apply(duality::cz_layer(n, Boundary::Periodic), DenseState::plus_state(n));
  CHECK(cluster.is_normalized());
  for (int k = 0; k < n; ++k) {
    PauliString zxz(n);
    zxz.set_op((k + n - 1) % n, PauliOp::Z);
    zxz.set_op(k, PauliOp::X);
    zxz.set_op((k + 1) % n, PauliOp::Z);
    PauliSum stabilizer(n);
    stabilizer.add(zxz, 1.0);
    const DenseState image = apply(stabilizer, cluster);
    CHECK((image.amplitudes - cluster.amplitudes).norm() < 1e-12);
  }
}

TEST_CASE("identity circuit and unitary norm preservation") {
  const DenseState s = DenseState::plus_state(3);
  const Circuit empty(3);
  CHECK((apply(empty, s).amplitudes - s.amplitudes).norm() == 0.0);

  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = oracle::random_circuit(3, 6, true);
    CHECK(apply(c, s).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("non-unitary transform needs renormalization and fixes generators") {
  const int n = 4;
  const double lambda = 0.5;
  const DenseState psi =
      apply(duality::zxz_diagonalizing_transform(n, lambda),
            DenseState::plus_state(n), true);
  CHECK(psi.is_normalized());
  for (int k = 0; k < n; ++k) {
    duality::OperatorString g(n);
    g.set_site((k + n - 1) % n, duality::LocalOp::pauli(PauliOp::Z));
    g.set_site(k, duality::LocalOp(0.0, lambda, 1.0 / lambda, 0.0));
    g.set_site((k + 1) % n, duality::LocalOp::pauli(PauliOp::Z));
    CHECK(std::abs(expectation(expand(g), psi) - Complex{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("conjugation engine equals dense conjugation via circuits") {
  for (int trial = 0; trial < 10; ++trial) {
    const int length = 2 + trial % 3;
    const Circuit c = oracle::random_circuit(length, 4);
    const PauliSum h = oracle::random_sum(length, 4);
    const Eigen::MatrixXcd total = to_dense(c);
    const Eigen::MatrixXcd direct =
        total.inverse() * to_dense(h) * total;
    CHECK((to_dense(conjugate(c, h)) - direct).norm() < 1e-10);
  }
}

TEST_CASE("reduced density and entropies") {
  // product state: zero entropy
  const DenseState ones = DenseState::all_ones(4);
  CHECK(local_entropy(ones, {0}) == doctest::Approx(0.0).epsilon(1e-12));

  // cluster state: one bit per site, two bits for a bulk pair at n >= 6
  const DenseState cluster =
      apply(duality::cz_layer(6, Boundary::Periodic), DenseState::plus_state(6));
  CHECK(local_entropy(cluster, {2}) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(local_entropy(cluster, {2, 3}) == doctest::Approx(2.0).epsilon(1e-10));

  // bounds for random states
  std::srand(7);
  for (int trial = 0; trial < 10; ++trial) {
    DenseState s{4, Eigen::VectorXcd::Random(16)};
    s.normalize();
    const double e1 = local_entropy(s, {1});
    CHECK(e1 >= -1e-12);
    CHECK(e1 <= 1.0 + 1e-12);
    const double e2 = local_entropy(s, {0, 3});
    CHECK(e2 <= 2.0 + 1e-12);
  }

  CHECK_THROWS_AS(local_entropy(ones, {}), std::invalid_argument);
  CHECK_THROWS_AS(local_entropy(ones, {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("energy scan: self-dual point is exact, mismatch shrinks with L") {
  const auto rows = duality_energy_scan({1.0, 2.0}, {4, 6, 8});
  double previous_delta = -1.0;
  for (const auto& row : rows) {
    if (row.J == 1.0) {
      CHECK(row.delta == 0.0);
      CHECK(row.gap_reference == 0.0);
    } else {
      if (previous_delta >= 0.0) CHECK(row.delta <= previous_delta);
      previous_delta = row.delta;
    }
  }
  CHECK_THROWS_AS(duality_energy_scan({0.0}, {4}), std::invalid_argument);
}

TEST_CASE("lanczos path reproduces the analytic energy above the dense limit") {
  // 2^13 state vector; the dense path stops at 12 qubits
  const int n = 13;
  const PauliSum h = build({.family = ModelFamily::Zxz,
                            .length = n,
                            .J = 0.8,
                            .B = 0.6,
                            .boundary = Boundary::Periodic});
  const auto [spectrum, state] = ground(h);
  CHECK_FALSE(spectrum.full_spectrum);
  CHECK(spectrum.ground_energy ==
        doctest::Approx(-n * std::hypot(0.8, 0.6)).epsilon(1e-9));
  const DenseState image = apply(h, state);
  CHECK((image.amplitudes - spectrum.ground_energy * state.amplitudes)
            .norm() < 1e-8);
}

TEST_CASE("size limits are enforced") {
  CHECK_THROWS_AS(DenseState::plus_state(duality::max_state_qubits() + 1),
                  duality::SizeLimitError);
}
