#pragma once

// Shared constructions for the test suites: deformed products with
// noncommuting parameters, scrambled Fourier matrices, and hand-built
// small Hadamard matrices.

#include <cstdint>
#include <vector>

#include "nchad/hadamard.hpp"

namespace corpus {

using namespace nchad;

inline AlgElem pauliX() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return AlgElem(AlgebraShape({2}), {m});
}

inline AlgElem pauliZ() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, -1;
  return AlgElem(AlgebraShape({2}), {m});
}

// Q = [[x, 1], [1, t]]; entries commute along rows and columns of Q for
// any unitaries x, t, while x and t themselves need not commute.
inline NCMatrix cornerQ(const AlgElem& x, const AlgElem& t) {
  NCMatrix q(x.shape(), 2, 2);
  q.set(0, 0, x);
  q.set(0, 1, AlgElem::identity(x.shape()));
  q.set(1, 0, AlgElem::identity(x.shape()));
  q.set(1, 1, t);
  return q;
}

// Deformed F2 (x)_Q F2 with Haar-random noncommuting corners; generically
// non-classical.
inline NCMatrix deformedF2F2(std::uint64_t seed) {
  const AlgebraShape shape({2});
  const AlgElem x = randomUnitary(shape, seed * 2 + 1);
  const AlgElem t = randomUnitary(shape, seed * 2 + 2);
  return ditaDeform(fourier(2, shape), fourier(2, shape), cornerQ(x, t), 1e-9);
}

// All-identity rectangular grid.
inline NCMatrix identityQ(const AlgebraShape& shape, int rows, int cols) {
  NCMatrix q(shape, rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      q.set(i, j, AlgElem::identity(shape));
    }
  }
  return q;
}

// Rectangular grid of seeded unimodular scalars.
inline NCMatrix scalarPhaseQ(const AlgebraShape& shape, int rows, int cols, std::uint64_t seed) {
  NCMatrix q(shape, rows, cols);
  std::mt19937_64 gen(seed);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double theta =
          2.0 * M_PI * static_cast<double>(gen() >> 11) * (1.0 / 9007199254740992.0);
      q.set(i, j, AlgElem::scalar(shape, std::polar(1.0, theta)));
    }
  }
  return q;
}

// 2x2 Hadamard matrix [[u1, u2], [u1, -u2]] from commuting diagonal
// unitaries over shape [2].
inline NCMatrix diagonal2x2(std::uint64_t seed) {
  const AlgebraShape shape({2});
  std::mt19937_64 gen(seed);
  auto phase = [&] {
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(gen() >> 11) *
                               (1.0 / 9007199254740992.0));
  };
  auto diagUnitary = [&] {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = phase();
    m(1, 1) = phase();
    return AlgElem(shape, {m});
  };
  const AlgElem u1 = diagUnitary();
  const AlgElem u2 = diagUnitary();
  NCMatrix h(shape, 2, 2);
  h.set(0, 0, u1);
  h.set(0, 1, u2);
  h.set(1, 0, u1);
  h.set(1, 1, -u2);
  return h;
}

// Random sequence of legal equivalence operations applied to h.
inline NCMatrix scramble(const NCMatrix& h, std::uint64_t seed, int ops = 6) {
  std::mt19937_64 gen(seed);
  auto uniform = [&] {
    return static_cast<double>(gen() >> 11) * (1.0 / 9007199254740992.0);
  };
  NCMatrix out = h;
  for (int step = 0; step < ops; ++step) {
    const int kind = static_cast<int>(gen() % 4);
    if (kind < 2) {
      std::vector<int> perm(static_cast<std::size_t>(kind == 0 ? h.rows() : h.cols()));
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
      for (std::size_t i = perm.size(); i > 1; --i) {
        std::swap(perm[i - 1], perm[gen() % i]);
      }
      out = kind == 0 ? applyEquivalence(out, PermuteRows{perm})
                      : applyEquivalence(out, PermuteCols{perm});
    } else {
      const AlgElem u = AlgElem::scalar(h.shape(), std::polar(1.0, 2.0 * M_PI * uniform()));
      const int idx = static_cast<int>(gen() % static_cast<std::uint64_t>(h.rows()));
      out = kind == 2 ? applyEquivalence(out, ScaleRow{idx, u})
                      : applyEquivalence(out, ScaleCol{idx, u});
    }
  }
  return out;
}

}  // namespace corpus
