#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nchad/algebra.hpp"

using namespace nchad;

namespace {

AlgElem elem2(Complex a, Complex b, Complex c, Complex d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return AlgElem(AlgebraShape({2}), {m});
}

AlgElem randomSelfAdjoint(const AlgebraShape& shape, std::uint64_t seed) {
  const AlgElem g = randomGaussian(shape, seed);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("shape invariants") {
  CHECK_THROWS_AS(AlgebraShape({}), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraShape({2, 0}), std::invalid_argument);
  CHECK(AlgebraShape({1, 2}).totalDim() == 3);
  CHECK(AlgebraShape({1, 1, 1}).allScalar());
  CHECK_FALSE(AlgebraShape({1, 2}).allScalar());
  CHECK(AlgebraShape({1, 2}).str() == "[1,2]");
}

TEST_CASE("multiplication") {
  const AlgebraShape shape({2});
  const AlgElem id = AlgElem::identity(shape);
  const AlgElem x = elem2(0, 1, 1, 0);
  const AlgElem z = elem2(1, 0, 0, -1);

  SUBCASE("identity is neutral") {
    CHECK(opDistance(id * x, x) == 0.0);
    CHECK(opDistance(x * id, x) == 0.0);
  }

  SUBCASE("2x2 product by hand") {
    // [[0,1],[1,0]] * diag(1,-1) = [[0,-1],[1,0]]
    const AlgElem expected = elem2(0, -1, 1, 0);
    CHECK(opDistance(x * z, expected) == 0.0);
  }

  SUBCASE("fibers multiply independently") {
    const AlgebraShape mixed({1, 2});
    Eigen::MatrixXcd s1(1, 1), s2(1, 1);
    s1 << Complex(2, 0);
    s2 << Complex(0, 3);
    Eigen::MatrixXcd b1(2, 2), b2(2, 2);
    b1 << 1, 2, 3, 4;
    b2 << 0, 1, 1, 0;
    const AlgElem a(mixed, {s1, b1});
    const AlgElem b(mixed, {s2, b2});
    const AlgElem p = a * b;
    CHECK(p.block(0)(0, 0) == Complex(0, 6));
    CHECK(p.block(1)(0, 0) == Complex(2, 0));
    CHECK(p.block(1)(1, 0) == Complex(4, 0));
  }

  SUBCASE("shape mismatch is rejected with both shapes reported") {
    const AlgElem scalarOne = AlgElem::identity(AlgebraShape::scalar());
    try {
      (void)(scalarOne * x);
      FAIL("expected ShapeMismatchError");
    } catch (const ShapeMismatchError& e) {
      CHECK(std::string(e.what()).find("[1]") != std::string::npos);
      CHECK(std::string(e.what()).find("[2]") != std::string::npos);
    }
  }
}

TEST_CASE("adjoint") {
  const AlgebraShape shape({2});

  SUBCASE("diag(i,-i) -> diag(-i,i)") {
    const AlgElem d = elem2(Complex(0, 1), 0, 0, Complex(0, -1));
    const AlgElem expected = elem2(Complex(0, -1), 0, 0, Complex(0, 1));
    CHECK(opDistance(d.adjoint(), expected) == 0.0);
  }

  SUBCASE("self-adjoint fixed point") {
    const AlgElem a = randomSelfAdjoint(shape, 7);
    CHECK(opDistance(a.adjoint(), a) == 0.0);
  }

  SUBCASE("involution is exact") {
    const AlgElem a = randomGaussian(AlgebraShape({1, 3}), 11);
    CHECK(opDistance(a.adjoint().adjoint(), a) == 0.0);
  }

  SUBCASE("anti-homomorphism on random inputs") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const AlgElem a = randomGaussian(AlgebraShape({2, 3}), 100 + s);
      const AlgElem b = randomGaussian(AlgebraShape({2, 3}), 200 + s);
      CHECK(opDistance((a * b).adjoint(), b.adjoint() * a.adjoint()) <= 1e-12);
    }
  }
}

TEST_CASE("unitarity check") {
  SUBCASE("diagonal phases") {
    const AlgElem d = elem2(std::polar(1.0, 0.7), 0, 0, Complex(0, 1));
    CHECK(d.unitarityResidual() <= 1e-14);
    CHECK(d.isUnitary(1e-14));
  }

  SUBCASE("upper triangular is not unitary") {
    const AlgElem t = elem2(1, 1, 0, 1);
    CHECK_FALSE(t.isUnitary(1e-9));
  }

  SUBCASE("real rotation") {
    const double s = 1.0 / std::sqrt(2.0);
    const AlgElem r = elem2(s, s, s, -s);
    CHECK(r.isUnitary(1e-14));
  }
}

TEST_CASE("commutator residual") {
  const AlgebraShape shape({2});
  const AlgElem x = elem2(0, 1, 1, 0);
  const AlgElem z = elem2(1, 0, 0, -1);

  CHECK(commutatorResidual(x, AlgElem::identity(shape)) == 0.0);
  // xz - zx = [[0,-2],[2,0]], operator norm 2
  CHECK(commutatorResidual(x, z) == doctest::Approx(2.0).epsilon(1e-12));
  const AlgElem d1 = elem2(2, 0, 0, 3);
  const AlgElem d2 = elem2(Complex(0, 1), 0, 0, 5);
  CHECK(commutatorResidual(d1, d2) <= 1e-15);
}

TEST_CASE("normalized trace") {
  SUBCASE("identity") {
    CHECK(AlgElem::identity(AlgebraShape({2, 3})).normalizedTrace() == Complex(1, 0));
  }

  SUBCASE("traceless") {
    const AlgElem z = elem2(1, 0, 0, -1);
    CHECK(std::abs(z.normalizedTrace()) == 0.0);
  }

  SUBCASE("mixed shape average") {
    const AlgebraShape mixed({1, 2});
    Eigen::MatrixXcd s(1, 1);
    s << Complex(4, 0);
    const AlgElem e(mixed, {s, Eigen::MatrixXcd::Identity(2, 2)});
    CHECK(e.normalizedTrace() == Complex(2.5, 0));
  }
}

TEST_CASE("centrality") {
  SUBCASE("scalar multiples of the identity") {
    const AlgElem c = AlgElem::scalar(AlgebraShape({2, 3}), Complex(0.3, -0.8));
    CHECK(c.isCentral(1e-14));
  }

  SUBCASE("diag(1,-1) is not central over [2]") {
    CHECK_FALSE(elem2(1, 0, 0, -1).isCentral(1e-6));
  }

  SUBCASE("everything is central over all-scalar shapes") {
    const AlgElem a = randomGaussian(AlgebraShape({1, 1}), 3);
    CHECK(a.isCentral(1e-14));
  }
}

TEST_CASE("random unitaries") {
  SUBCASE("unitary by construction") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      CHECK(randomUnitary(AlgebraShape({1, 2, 3}), s).unitarityResidual() <= 1e-12);
    }
  }

  SUBCASE("deterministic for a fixed seed") {
    const AlgElem a = randomUnitary(AlgebraShape({2, 3}), 42);
    const AlgElem b = randomUnitary(AlgebraShape({2, 3}), 42);
    CHECK(opDistance(a, b) == 0.0);
    const AlgElem c = randomUnitary(AlgebraShape({2, 3}), 43);
    CHECK(opDistance(a, c) > 1e-3);
  }

  SUBCASE("Haar second moment") {
    for (const int k : {2, 3}) {
      const AlgebraShape shape({k});
      double mean = 0.0;
      const int draws = 100000;
      for (int s = 0; s < draws; ++s) {
        const AlgElem u = randomUnitary(shape, static_cast<std::uint64_t>(s));
        mean += std::norm(u.block(0)(0, 0));
      }
      mean /= draws;
      CHECK(std::abs(mean - 1.0 / k) <= 0.01);
    }
  }
}

TEST_CASE("algebra properties on random elements") {
  const AlgebraShape shape({2, 3});

  SUBCASE("associativity at numeric tolerance") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const AlgElem a = randomGaussian(shape, 3 * s);
      const AlgElem b = randomGaussian(shape, 3 * s + 1);
      const AlgElem c = randomGaussian(shape, 3 * s + 2);
      const double bound = 1e-12 * a.opNorm() * b.opNorm() * c.opNorm();
      CHECK(opDistance((a * b) * c, a * (b * c)) <= bound);
    }
  }

  SUBCASE("unitaries are closed under product") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const AlgElem u = randomUnitary(shape, 1000 + s);
      const AlgElem v = randomUnitary(shape, 2000 + s);
      CHECK((u * v).isUnitary(1e-10));
    }
  }

  SUBCASE("trace is tracial") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const AlgElem a = randomGaussian(shape, 31 * s);
      const AlgElem b = randomGaussian(shape, 31 * s + 7);
      CHECK(std::abs((a * b).normalizedTrace() - (b * a).normalizedTrace()) <= 1e-12);
    }
  }

  SUBCASE("trace is faithful") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const AlgElem a = randomGaussian(shape, 77 * s + 5);
      const Complex t = (a * a.adjoint()).normalizedTrace();
      CHECK(std::abs(t.imag()) <= 1e-12);
      CHECK(t.real() >= 0.0);
      if (a.opNorm() > 1e-6) {
        CHECK(t.real() > 0.0);
      }
    }
    const AlgElem zero = AlgElem::zero(shape);
    CHECK(std::abs((zero * zero.adjoint()).normalizedTrace()) == 0.0);
  }
}
