#pragma once

#include "nchad/hadamard.hpp"

namespace nchad {

// From a vanishing sum of unitaries a + b + c = 0, the ratio w = b a^*
// must satisfy 1 + w + w^2 = 0; returns w and that residual.
struct VanishingSumResult {
  AlgElem w;
  double residual;  // ||1 + w + w^2||
};

VanishingSumResult extractVanishingSumUnit(const AlgElem& a, const AlgElem& b, const AlgElem& c,
                                           double tol = kDefaultTol);

// Canonical data of a 3x3 Hadamard matrix: first row (a,b,c), the derived
// unitaries (u,v,w), pattern residuals for the three determined positions,
// commutation residuals of the two triples, and the classicality verdict.
struct CanonicalForm3x3 {
  AlgElem a, b, c, u, v, w;
  double pattern22 = 0.0;
  double pattern23 = 0.0;
  double pattern33 = 0.0;
  double rowTripleCommutation = 0.0;       // (a,b,c)
  double derivedTripleCommutation = 0.0;   // (u,v,w)
  double vanishingResidual = 0.0;          // ||1 + w + w^2||
  bool classical = false;
  double classicalResidual = 0.0;
  double tol = kDefaultTol;
  bool passed = false;

  double maxPatternResidual() const;
};

CanonicalForm3x3 canonicalForm3x3(const NCMatrix& h, double tol = kDefaultTol);

struct TwoByTwoReport {
  bool classical = false;
  double classicalResidual = 0.0;
  double relationA = 0.0;  // ||A + C D^* B||
  double relationC = 0.0;  // ||C + A B^* D||
  double tol = kDefaultTol;
  bool passed = false;
};

TwoByTwoReport check2x2(const NCMatrix& h, double tol = kDefaultTol);

struct SearchConfig {
  int n = 2;
  AlgebraShape shape = AlgebraShape::scalar();
  bool selfAdjointEntries = false;
  int restarts = 1;
  int maxIters = 2000;
  std::uint64_t seed = 0;
  double targetResidual = 1e-8;
  int threads = 0;  // 0 = hardware concurrency
};

struct SearchResult {
  double bestResidual = 0.0;  // verifyHadamard residual of bestMatrix, recomputed
  NCMatrix bestMatrix;
  std::vector<double> residualTrace;  // per-restart final residuals, restart order
  int bestRestart = -1;
  bool classical = false;
  double classicalResidual = 0.0;
};

// Multi-restart minimization of the squared axiom residuals. Unitarity is
// enforced by the parametrization: entries are exponentials of
// skew-Hermitian blocks, or reflections 2*proj - 1 in self-adjoint mode.
// Deterministic for a fixed config, independent of thread count.
SearchResult searchHadamard(const SearchConfig& cfg);

// Reporting mode for 4x4 candidates: a matrix equivalent to a deformed
// F2 (x)_Q F2 product admits a perfect matching of its columns (and of its
// rows) into pairs whose entrywise ratios H(r,c) H(r,c')^* are central on
// every row (resp. column). The test is invariant under permutations and
// central scalings; a match is evidence, not proof, of membership.
struct DeformationPatternReport {
  double columnResidual = 0.0;  // best matching: max centrality defect of paired ratios
  double rowResidual = 0.0;
  std::array<int, 4> columnPairing{0, 1, 2, 3};  // (p[0],p[1]) and (p[2],p[3])
  std::array<int, 4> rowPairing{0, 1, 2, 3};
  double tol = kDefaultTol;
  bool matched = false;
};

DeformationPatternReport matchDeformedProductPattern(const NCMatrix& h, double tol = kDefaultTol);

}  // namespace nchad
