#pragma once

#include "nchad/magic.hpp"

namespace nchad {

// Kronecker product of grids under the product index convention
// (row (k,c) -> k*M + c): out_{kc,ld} = a_{kl} b_{cd}.
NCMatrix kronGrid(const NCMatrix& a, const NCMatrix& b);

// Partial sums of a product magic unitary: V collapses the inner index,
// U the outer one. Computed from P = buildMagic(H (x)_Q K) with the
// product index convention, base size N and block size M.
struct WreathComponents {
  int baseSize = 0;   // N
  int blockSize = 0;  // M
  // v[i*N+j]: sum_a P_{ia,jb} evaluated at b = 0
  std::vector<NCMatrix> v;
  // u[i][a*M+b]: sum_j P_{ia,jb}
  std::vector<std::vector<NCMatrix>> u;
  double bIndependenceResidual = 0.0;  // max over b of deviation from b = 0
  double baseMatchResidual = 0.0;      // max over (i,j) of ||V_ij - R_ij (x) 1||
};

// Max deviation between the magic unitary of the deformed product and the
// factored expression R_ij (x) (Q- and K-cocycle block), R = buildMagic(H).
double verifyProductFormula(const NCMatrix& h, const NCMatrix& k, const NCMatrix& q,
                            double tol = kDefaultTol);

// baseMagic is the magic unitary of the left factor; P must have size
// divisible by baseMagic's (index-convention guard).
WreathComponents computeComponents(const MagicUnitary& p, const MagicUnitary& baseMagic);

struct FactorizationReport {
  double tol = kDefaultTol;
  double uSelfAdjointness = 0.0;
  double uIdempotence = 0.0;
  double uRowSums = 0.0;
  double uColSums = 0.0;
  double uvProduct = 0.0;  // max ||U^(i)_ab V_ij - P_{ia,jb}||
  double vuProduct = 0.0;
  bool passed = false;

  double maxResidual() const;
};

FactorizationReport verifyFactorization(const WreathComponents& c, const MagicUnitary& p,
                                        double tol = kDefaultTol);

}  // namespace nchad
