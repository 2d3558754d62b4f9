#include <doctest.h>

#include "duality/local_ops.hpp"
#include "oracle.hpp"

using duality::Complex;
using duality::LocalOp;
using duality::OperatorString;
using duality::PauliOp;
using duality::PauliString;

TEST_CASE("pauli coefficients reconstruct the matrix exactly") {
  for (int trial = 0; trial < 30; ++trial) {
    const LocalOp m = oracle::random_invertible_local();
    const auto c = m.pauli_coefficients();
    Eigen::Matrix2cd rebuilt = Eigen::Matrix2cd::Zero();
    for (int w = 0; w < 4; ++w)
      rebuilt += c[static_cast<std::size_t>(w)] *
                 oracle::letter_matrix(static_cast<PauliOp>(w));
    CHECK((rebuilt - m.matrix()).norm() < 1e-15);
  }
}

TEST_CASE("expansion of the lambda-deformed X operator") {
  // Independent oracle: solve the 4x4 linear system over the letter basis.
  const double lambda = 0.7;
  const LocalOp m(0.0, lambda, 1.0 / lambda, 0.0);
  Eigen::Matrix4cd basis;
  Eigen::Vector4cd target;
  for (int w = 0; w < 4; ++w) {
    const Eigen::Matrix2cd letter =
        oracle::letter_matrix(static_cast<PauliOp>(w));
    basis.col(w) << letter(0, 0), letter(0, 1), letter(1, 0), letter(1, 1);
  }
  target << 0.0, lambda, 1.0 / lambda, 0.0;
  const Eigen::Vector4cd solved = basis.colPivHouseholderQr().solve(target);

  const auto coeffs = m.pauli_coefficients();
  for (int w = 0; w < 4; ++w)
    CHECK(std::abs(coeffs[static_cast<std::size_t>(w)] - solved(w)) < 1e-14);
  // c_X = (lambda + 1/lambda) / 2 real; c_Y purely imaginary
  CHECK(coeffs[1].real() ==
        doctest::Approx((lambda + 1.0 / lambda) / 2).epsilon(1e-14));
  CHECK(std::abs(coeffs[2].real()) < 1e-15);
}

TEST_CASE("expand turns the lambda = 1 generator into a plain ZXZ string") {
  OperatorString g(3);
  g.set_site(0, LocalOp::pauli(PauliOp::Z));
  g.set_site(1, LocalOp(0.0, 1.0, 1.0, 0.0));  // lambda = 1 makes it X
  g.set_site(2, LocalOp::pauli(PauliOp::Z));
  const duality::PauliSum sum = expand(g);
  CHECK(sum.size() == 1);
  CHECK(sum.coefficient(PauliString::parse("ZXZ")) == Complex{1.0, 0.0});
}

TEST_CASE("expand of the identity string is the identity sum") {
  const duality::PauliSum sum = expand(OperatorString(3));
  CHECK(sum.size() == 1);
  CHECK(sum.coefficient(PauliString(3)) == Complex{1.0, 0.0});
}

TEST_CASE("expand agrees with the dense matrix") {
  for (int trial = 0; trial < 20; ++trial) {
    const int length = 2 + trial % 3;
    OperatorString op(length, Complex{0.3, -0.1});
    op.set_site(0, oracle::random_invertible_local());
    op.set_site(length - 1, oracle::random_invertible_local());
    CHECK((oracle::matrix_of(expand(op)) - to_dense(op)).norm() < 1e-12);
  }
}

TEST_CASE("expand is a ring homomorphism") {
  for (int trial = 0; trial < 20; ++trial) {
    const int length = 2 + trial % 4;
    OperatorString a(length), b(length);
    a.set_site(trial % length, oracle::random_invertible_local());
    a.set_site((trial + 1) % length, oracle::random_invertible_local());
    b.set_site((trial + 1) % length, oracle::random_invertible_local());
    CHECK(max_coefficient_difference(expand(a * b), expand(a) * expand(b)) <
          1e-12);
  }
}

TEST_CASE("hermiticity of the expansion tracks the dense matrix") {
  for (int trial = 0; trial < 20; ++trial) {
    OperatorString op(2);
    LocalOp m = oracle::random_invertible_local();
    if (trial % 2 == 0)
      m = LocalOp((m.matrix() + m.matrix().adjoint()).eval());
    op.set_site(0, m);
    const Eigen::MatrixXcd dense = to_dense(op);
    const bool dense_hermitian = (dense - dense.adjoint()).norm() < 1e-12;
    CHECK(expand(op).is_hermitian() == dense_hermitian);
  }
}

TEST_CASE("commutator check against the dense oracle") {
  // neighbouring deformed generators on a 6-ring commute
  const double lambda = 0.5;
  const LocalOp m(0.0, lambda, 1.0 / lambda, 0.0);
  auto generator = [&](int k) {
    OperatorString g(6);
    g.set_site((k + 5) % 6, LocalOp::pauli(PauliOp::Z));
    g.set_site(k, m);
    g.set_site((k + 1) % 6, LocalOp::pauli(PauliOp::Z));
    return g;
  };
  const OperatorString g0 = generator(0), g1 = generator(1);
  CHECK(commutator_is_zero(g0, g1, 1e-10));
  const Eigen::MatrixXcd d0 = to_dense(g0), d1 = to_dense(g1);
  CHECK((d0 * d1 - d1 * d0).norm() < 1e-12);

  OperatorString x1(2), z1(2);
  x1.set_site(0, LocalOp::pauli(PauliOp::X));
  z1.set_site(0, LocalOp::pauli(PauliOp::Z));
  CHECK_FALSE(commutator_is_zero(x1, z1, 1e-10));
  CHECK(commutator_is_zero(x1, OperatorString(2), 1e-10));
}

TEST_CASE("independence via fixed-space dimensions") {
  OperatorString z1(2), z2(2);
  z1.set_site(0, LocalOp::pauli(PauliOp::Z));
  z2.set_site(1, LocalOp::pauli(PauliOp::Z));

  const std::vector<OperatorString> good{z1, z2};
  CHECK(duality::fixed_space_dimension({&good[0], 1}) == 2);
  CHECK(duality::fixed_space_dimension(good) == 1);
  CHECK(independence_check(good));

  const std::vector<OperatorString> duplicated{z1, z1};
  CHECK_FALSE(independence_check(duplicated));

  const std::vector<OperatorString> too_many{z1, z2, z1};
  CHECK_THROWS_AS(independence_check(too_many), std::invalid_argument);
}

TEST_CASE("independence of the deformed generator ring, stacked-SVD oracle") {
  const double lambda = 0.5;
  const LocalOp m(0.0, lambda, 1.0 / lambda, 0.0);
  std::vector<OperatorString> gens;
  const int n = 6;
  for (int k = 0; k < n; ++k) {
    OperatorString g(n);
    g.set_site((k + n - 1) % n, LocalOp::pauli(PauliOp::Z));
    g.set_site(k, m);
    g.set_site((k + 1) % n, LocalOp::pauli(PauliOp::Z));
    gens.push_back(std::move(g));
  }
  CHECK(independence_check(gens));

  // independent route: null space of the stacked (g_k - 1) matrices
  auto stacked_null_dim = [&](const std::vector<OperatorString>& set) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd stacked(dim * static_cast<Eigen::Index>(set.size()), dim);
    for (std::size_t k = 0; k < set.size(); ++k)
      stacked.middleRows(dim * static_cast<Eigen::Index>(k), dim) =
          to_dense(set[k]) - Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
    int nulls = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) < 1e-8) ++nulls;
    return nulls;
  };
  CHECK(stacked_null_dim(gens) == 1);
  std::vector<OperatorString> leave_one(gens.begin() + 1, gens.end());
  CHECK(stacked_null_dim(leave_one) == 2);
}

TEST_CASE("singular local operator is rejected") {
  const LocalOp rank1(1.0, 0.0, 0.0, 0.0);
  CHECK_FALSE(rank1.is_invertible());
  CHECK_THROWS_AS(rank1.inverse(), duality::SingularOperatorError);
}
