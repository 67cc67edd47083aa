#pragma once

#include "nchad/magic.hpp"

namespace nchad {

// Transfer matrix of degree k: entries are normalized traces over M_N(A) of
// k-fold products of magic-unitary entries, indexed by row/column
// multi-indices flattened first-index-major. Its n-th power's trace equals
// the n-th convolution power of the trace state on the degree-k character.
struct MomentMatrix {
  int degree = 1;
  int baseSize = 1;  // N
  Eigen::MatrixXcd mat;
};

// Requested moment-matrix dimension N^k exceeds the configured cap.
class CapExceededError : public std::runtime_error {
public:
  CapExceededError(long long dim, int cap)
      : std::runtime_error("moment matrix dimension " + std::to_string(dim) +
                           " exceeds cap " + std::to_string(cap)),
        dim_(dim),
        cap_(cap) {}

  long long dim() const noexcept { return dim_; }
  int cap() const noexcept { return cap_; }

private:
  long long dim_;
  int cap_;
};

inline constexpr int kDefaultMomentCap = 4096;
inline constexpr double kDefaultEigTol = 1e-6;

MomentMatrix buildMomentMatrix(const MagicUnitary& p, int degree, int cap = kDefaultMomentCap);

// Real part of (1/n) * sum_{m<=n} Tr(M^m); throws if the accumulated
// imaginary part exceeds 1e-8 (the traces are states on a self-adjoint
// element and must be real).
double cesaroTrace(const MomentMatrix& m, int n);

struct MomentEntry {
  int k = 0;
  long long moment = 0;     // multiplicity of eigenvalue 1
  double gap = 0.0;         // distance from 1 to the nearest rejected eigenvalue
  double cesaro200 = 0.0;   // partial Cesaro cross-check at n = 200
  std::vector<std::string> flags;
};

// The reported integers are idempotent-state moments: the Cesaro limit of
// convolution powers of the trace state. They provably agree with the Haar
// moments of the minimal factorization in the validated Fourier cases.
struct MomentReport {
  double eigTol = kDefaultEigTol;
  int cap = kDefaultMomentCap;
  std::vector<MomentEntry> entries;
};

MomentReport estimateMoments(const MagicUnitary& p, int kmax, double eigTol = kDefaultEigTol,
                             int cap = kDefaultMomentCap);

}  // namespace nchad
