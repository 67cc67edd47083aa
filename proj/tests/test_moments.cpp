#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "corpus.hpp"
#include "nchad/moments.hpp"

using namespace nchad;

namespace {

// Independent oracle: assemble the degree-k matrix by explicit products over
// full multi-index tuples, no prefix reuse.
Eigen::MatrixXcd bruteForceMomentMatrix(const MagicUnitary& p, int k) {
  const int n = p.size();
  long long dim = 1;
  for (int r = 0; r < k; ++r) dim *= n;
  Eigen::MatrixXcd out(dim, dim);
  for (long long row = 0; row < dim; ++row) {
    for (long long col = 0; col < dim; ++col) {
      long long r = row, c = col;
      std::vector<int> is(static_cast<std::size_t>(k)), js(static_cast<std::size_t>(k));
      for (int d = k - 1; d >= 0; --d) {
        is[static_cast<std::size_t>(d)] = static_cast<int>(r % n);
        js[static_cast<std::size_t>(d)] = static_cast<int>(c % n);
        r /= n;
        c /= n;
      }
      NCMatrix prod = p.at(is[0], js[0]);
      for (int d = 1; d < k; ++d) {
        prod = prod.gridMul(p.at(is[static_cast<std::size_t>(d)], js[static_cast<std::size_t>(d)]));
      }
      out(row, col) = prod.normalizedTrace();
    }
  }
  return out;
}

// Independent oracle for the Cesaro mean: explicit matrix powers.
double bruteForceCesaro(const Eigen::MatrixXcd& m, int n) {
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  Complex acc = 0.0;
  for (int step = 1; step <= n; ++step) {
    power = power * m;
    acc += power.trace();
  }
  return (acc / static_cast<double>(n)).real();
}

}  // namespace

TEST_CASE("degree-1 moment matrix of F2") {
  const MagicUnitary p = buildMagic(fourier(2, AlgebraShape::scalar()), 1e-10);
  const MomentMatrix m = buildMomentMatrix(p, 1);
  REQUIRE(m.mat.rows() == 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(m.mat(i, j) - Complex(0.5, 0)) <= 1e-14);
    }
  }
}

TEST_CASE("degree-1 rows always sum to one") {
  for (std::uint64_t s : {std::uint64_t{2}, std::uint64_t{13}}) {
    const MagicUnitary p = buildMagic(corpus::deformedF2F2(s), 1e-9);
    const MomentMatrix m = buildMomentMatrix(p, 1);
    for (Eigen::Index i = 0; i < m.mat.rows(); ++i) {
      CHECK(std::abs(m.mat.row(i).sum() - Complex(1, 0)) <= 1e-12);
    }
  }
}

TEST_CASE("degree-2 matrix of F2 has eigenvalue-1 multiplicity 2") {
  const MagicUnitary p = buildMagic(fourier(2, AlgebraShape::scalar()), 1e-10);
  const Eigen::MatrixXcd oracle = bruteForceMomentMatrix(p, 2);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(oracle, false);
  int mult = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()(i) - Complex(1, 0)) <= 1e-8) ++mult;
  }
  CHECK(mult == 2);

  const MomentMatrix fast = buildMomentMatrix(p, 2);
  CHECK((fast.mat - oracle).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("prefix-reusing assembly agrees with the brute-force oracle") {
  const MagicUnitary p = buildMagic(corpus::deformedF2F2(6), 1e-9);
  for (int k = 1; k <= 2; ++k) {
    const MomentMatrix fast = buildMomentMatrix(p, k);
    const Eigen::MatrixXcd oracle = bruteForceMomentMatrix(p, k);
    CHECK((fast.mat - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("Fourier moments follow the cyclic-group count") {
  struct Case {
    int n;
    int kmax;
  };
  for (const Case c : {Case{2, 8}, Case{3, 4}, Case{4, 4}, Case{5, 3}}) {
    const MagicUnitary p = buildMagic(fourier(c.n, AlgebraShape::scalar()), 1e-10);
    const MomentReport rep = estimateMoments(p, c.kmax);
    REQUIRE(static_cast<int>(rep.entries.size()) == c.kmax);
    long long expected = 1;
    for (const auto& entry : rep.entries) {
      CHECK(entry.moment == expected);
      CHECK(entry.gap >= 0.05);
      CHECK(entry.flags.empty());
      CHECK(std::abs(entry.cesaro200 - static_cast<double>(entry.moment)) <= 0.05);
      expected *= c.n;
    }
  }
}

TEST_CASE("moment bounds and integrality on deformed instances") {
  for (std::uint64_t s : {std::uint64_t{1}, std::uint64_t{4}, std::uint64_t{9}}) {
    const MagicUnitary p = buildMagic(corpus::deformedF2F2(s), 1e-9);
    const MomentReport rep = estimateMoments(p, 2);
    long long cap = 1;
    for (const auto& entry : rep.entries) {
      cap *= 4;
      CHECK(entry.moment >= 1);
      CHECK(entry.moment <= cap);
      CHECK(entry.flags.empty());
      CHECK(std::abs(entry.cesaro200 - static_cast<double>(entry.moment)) <= 0.05);
    }
  }
}

TEST_CASE("row and column permutations preserve every moment") {
  const NCMatrix base = corpus::deformedF2F2(14);
  const MomentReport ref = estimateMoments(buildMagic(base, 1e-9), 2);
  for (std::uint64_t s = 0; s < 3; ++s) {
    std::mt19937_64 gen(900 + s);
    std::vector<int> perm{0, 1, 2, 3};
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[gen() % i]);
    }
    NCMatrix variant = applyEquivalence(base, PermuteRows{perm});
    std::vector<int> perm2{0, 1, 2, 3};
    for (std::size_t i = perm2.size(); i > 1; --i) {
      std::swap(perm2[i - 1], perm2[gen() % i]);
    }
    variant = applyEquivalence(variant, PermuteCols{perm2});
    const MomentReport rep = estimateMoments(buildMagic(variant, 1e-9), 2);
    for (std::size_t k = 0; k < rep.entries.size(); ++k) {
      CHECK(rep.entries[k].moment == ref.entries[k].moment);
    }
  }
}

TEST_CASE("cesaro trace") {
  SUBCASE("identity matrix gives its dimension") {
    MomentMatrix m;
    m.degree = 1;
    m.baseSize = 3;
    m.mat = Eigen::MatrixXcd::Identity(3, 3);
    CHECK(cesaroTrace(m, 1) == doctest::Approx(3.0));
    CHECK(cesaroTrace(m, 200) == doctest::Approx(3.0));
  }

  SUBCASE("F2 degree 1 converges to the first moment") {
    const MagicUnitary p = buildMagic(fourier(2, AlgebraShape::scalar()), 1e-10);
    const MomentMatrix m = buildMomentMatrix(p, 1);
    const double value = cesaroTrace(m, 200);
    CHECK(std::abs(value - 1.0) <= 0.02);
    CHECK(std::abs(value - bruteForceCesaro(m.mat, 200)) <= 1e-9);
  }

  SUBCASE("bounded by the dimension for contractive spectra") {
    const MagicUnitary p = buildMagic(corpus::deformedF2F2(3), 1e-9);
    const MomentMatrix m = buildMomentMatrix(p, 2);
    const double value = cesaroTrace(m, 50);
    CHECK(std::abs(value) <= static_cast<double>(m.mat.rows()));
    CHECK(std::abs(value - bruteForceCesaro(m.mat, 50)) <= 1e-8);
  }
}

TEST_CASE("cap guard") {
  const MagicUnitary p = buildMagic(fourier(4, AlgebraShape::scalar()), 1e-10);
  try {
    (void)buildMomentMatrix(p, 7, 4096);
    FAIL("expected CapExceededError");
  } catch (const CapExceededError& e) {
    CHECK(e.cap() == 4096);
    CHECK(std::string(e.what()).find("4096") != std::string::npos);
  }
}
