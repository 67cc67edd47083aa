#pragma once

#include "nchad/hadamard.hpp"

namespace nchad {

// N x N array of projections in M_N(A) whose rows and columns sum to the
// identity. Each entry is stored as a dense N x N grid over the base algebra.
class MagicUnitary {
public:
  MagicUnitary(AlgebraShape shape, int n);

  int size() const noexcept { return n_; }
  const AlgebraShape& shape() const noexcept { return shape_; }

  const NCMatrix& at(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, NCMatrix value);

private:
  AlgebraShape shape_;
  int n_;
  std::vector<NCMatrix> entries_;

  std::size_t index(int i, int j) const;
};

struct MagicReport {
  double tol = kDefaultTol;
  double selfAdjointness = 0.0;
  double idempotence = 0.0;
  double rowSums = 0.0;
  double colSums = 0.0;
  bool passed = false;

  std::array<int, 2> worstSelfAdjoint{-1, -1};
  std::array<int, 2> worstIdempotent{-1, -1};
  int worstRow = -1;
  int worstCol = -1;

  double maxResidual() const;
};

// Entry formula (P_ij)_ab = (1/N) H_ia H_ja^* H_jb H_ib^*, no verification
// of H. buildMagic is the checked front door.
MagicUnitary magicFromFormula(const NCMatrix& h);

// Verifies H first and throws HadamardVerificationError (carrying the
// report) when it fails.
MagicUnitary buildMagic(const NCMatrix& h, double tol = kDefaultTol);

MagicReport verifyMagic(const MagicUnitary& p, double tol = kDefaultTol);

}  // namespace nchad
