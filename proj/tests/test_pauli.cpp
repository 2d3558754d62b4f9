#include <doctest.h>

#include "duality/pauli.hpp"
#include "oracle.hpp"

using duality::Complex;
using duality::PauliOp;
using duality::PauliString;
using duality::PauliSum;

TEST_CASE("single-site products follow the Pauli group law") {
  const PauliString x = PauliString::single(1, 0, PauliOp::X);
  const PauliString z = PauliString::single(1, 0, PauliOp::Z);
  const PauliString xz = x * z;
  CHECK(xz.op(0) == PauliOp::Y);
  CHECK(xz.phase() == Complex{0, -1});  // XZ = -iY

  const PauliString zz = PauliString::parse("ZZ");
  const PauliString sq = zz * zz;
  CHECK(sq.is_identity());
  CHECK(sq.phase() == Complex{1, 0});
}

TEST_CASE("products match the dense Kronecker oracle") {
  // fixed case (X (x) Y) * (Z (x) Z), then random strings up to L = 5
  const PauliString a = PauliString::parse("XY");
  const PauliString b = PauliString::parse("ZZ");
  CHECK((oracle::matrix_of(a * b) -
         oracle::matrix_of(a) * oracle::matrix_of(b))
            .norm() == doctest::Approx(0.0).epsilon(1e-14));

  for (int trial = 0; trial < 60; ++trial) {
    const int length = 1 + trial % 5;
    const PauliString u = oracle::random_string(length);
    const PauliString v = oracle::random_string(length);
    CHECK((oracle::matrix_of(u * v) -
           oracle::matrix_of(u) * oracle::matrix_of(v))
              .norm() < 1e-12);
  }
}

TEST_CASE("group laws: associativity, identity, order at most four") {
  for (int trial = 0; trial < 40; ++trial) {
    const int length = 1 + trial % 10;
    const PauliString a = oracle::random_string(length);
    const PauliString b = oracle::random_string(length);
    const PauliString c = oracle::random_string(length);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * PauliString(length) == a);

    PauliString power = a;
    int order = 1;
    while (!(power.is_identity() && power.phase() == Complex{1, 0})) {
      power = power * a;
      ++order;
      REQUIRE(order <= 4);
    }
  }
}

TEST_CASE("phases stay in the discrete fourth roots of unity") {
  PauliString s = oracle::random_string(6);
  for (int step = 0; step < 50; ++step) {
    s = s * oracle::random_string(6);
    const int t = s.phase_exponent();
    CHECK(t >= 0);
    CHECK(t < 4);
  }
  CHECK(PauliString::parse("XY").is_hermitian());
  CHECK_FALSE((PauliString::single(1, 0, PauliOp::X) *
               PauliString::single(1, 0, PauliOp::Z))
                  .is_hermitian());
}

TEST_CASE("commutation equals the symplectic criterion and ab = +-ba") {
  for (int trial = 0; trial < 60; ++trial) {
    const int length = 1 + trial % 6;
    const PauliString a = oracle::random_string(length);
    const PauliString b = oracle::random_string(length);
    const PauliString ab = a * b;
    const PauliString ba = b * a;
    CHECK(ab.same_letters(ba));
    const int diff = (ab.phase_exponent() - ba.phase_exponent() + 4) % 4;
    CHECK((diff == 0 || diff == 2));
    CHECK(a.commutes_with(b) == (diff == 0));
  }
}

TEST_CASE("length mismatch raises a dimension error") {
  const PauliString a(2), b(3);
  CHECK_THROWS_AS(a * b, duality::DimensionError);
  PauliSum h(2);
  CHECK_THROWS_AS(h.add(b, 1.0), duality::DimensionError);
}

TEST_CASE("sum arithmetic cancels and prunes to canonical form") {
  PauliSum h(1);
  h.add(PauliString::single(1, 0, PauliOp::X), 1.0);
  h.add(PauliString::single(1, 0, PauliOp::Z), 1.0);
  PauliSum minus_z(1);
  minus_z.add(PauliString::single(1, 0, PauliOp::Z), -1.0);
  h += minus_z;
  CHECK(h.size() == 1);
  CHECK(h.coefficient(PauliString::single(1, 0, PauliOp::X)) ==
        Complex{1.0, 0.0});
}

TEST_CASE("squaring a coupling term gives the scaled identity") {
  const double j = 1.7;
  PauliSum xx(2);
  xx.add(PauliString::parse("XX"), j);
  const PauliSum sq = xx * xx;
  CHECK(sq.size() == 1);
  CHECK(sq.coefficient(PauliString(2)).real() == doctest::Approx(j * j));
}

TEST_CASE("sum product matches the dense oracle") {
  // H(J=1, L=3) squared against the dense 8x8 square
  PauliSum h(3);
  h.add(PauliString::parse("XXI"), 1.0);
  h.add(PauliString::parse("IXX"), 1.0);
  h.add(PauliString::parse("ZII"), 1.0);
  h.add(PauliString::parse("IZI"), 1.0);
  h.add(PauliString::parse("IIZ"), 1.0);
  const Eigen::MatrixXcd dense = oracle::matrix_of(h);
  CHECK((oracle::matrix_of(h * h) - dense * dense).norm() < 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    const int length = 1 + trial % 4;
    const PauliSum a = oracle::random_sum(length, 4);
    const PauliSum b = oracle::random_sum(length, 4);
    CHECK((oracle::matrix_of(a * b) -
           oracle::matrix_of(a) * oracle::matrix_of(b))
              .norm() < 1e-10);
    CHECK((oracle::matrix_of(a + b) -
           (oracle::matrix_of(a) + oracle::matrix_of(b)))
              .norm() < 1e-12);
  }
}

TEST_CASE("approx_equal distinguishes perturbed sums") {
  PauliSum h(2);
  h.add(PauliString::parse("XX"), 2.0);
  h.add(PauliString::parse("ZI"), 1.0);
  CHECK(approx_equal(h, h, 0.0));

  PauliSum perturbed = h;
  perturbed.add(PauliString::parse("XI"), 1e-6);
  CHECK_FALSE(approx_equal(h, perturbed, 1e-9));
  CHECK(max_coefficient_difference(h, perturbed) == doctest::Approx(1e-6));
}

TEST_CASE("hermiticity means real coefficients") {
  PauliSum h(2);
  h.add(PauliString::parse("XY"), 0.5);
  CHECK(h.is_hermitian());
  h.add(PauliString::parse("ZI"), Complex{0.0, 0.25});
  CHECK_FALSE(h.is_hermitian());
  CHECK(approx_equal(h.adjoint().adjoint(), h, 0.0));
}

TEST_CASE("text serialization round-trips exactly") {
  for (int trial = 0; trial < 10; ++trial) {
    duality::PauliSum h = oracle::random_sum(4, 6);
    const duality::PauliSum back = duality::PauliSum::from_text(h.to_text());
    CHECK(max_coefficient_difference(h, back) == 0.0);
  }
  CHECK_THROWS(duality::PauliSum::from_text("1 0 XX\n1 0 XXX\n"));
}
