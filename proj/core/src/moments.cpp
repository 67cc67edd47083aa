#include "nchad/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace nchad {

namespace {

// Depth-first walk over index pairs, reusing the partial product of the
// first r factors for all N^2 continuations.
void fillRecursive(const MagicUnitary& p, int depth, int maxDepth, long long rowIdx,
                   long long colIdx, const NCMatrix& partial, Eigen::MatrixXcd& out) {
  const int n = p.size();
  if (depth == maxDepth) {
    out(rowIdx, colIdx) = partial.normalizedTrace();
    return;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const NCMatrix next = partial.gridMul(p.at(i, j));
      fillRecursive(p, depth + 1, maxDepth, rowIdx * n + i, colIdx * n + j, next, out);
    }
  }
}

}  // namespace

MomentMatrix buildMomentMatrix(const MagicUnitary& p, int degree, int cap) {
  if (degree < 1) {
    throw std::invalid_argument("buildMomentMatrix: degree must be >= 1");
  }
  const int n = p.size();
  // Saturating power so the rejection can state N^k even for absurd degrees.
  long long dim = 1;
  bool overflow = false;
  for (int r = 0; r < degree; ++r) {
    if (dim > (std::numeric_limits<long long>::max() / 2) / n) {
      overflow = true;
      break;
    }
    dim *= n;
  }
  if (overflow || dim > cap) {
    throw CapExceededError(overflow ? std::numeric_limits<long long>::max() : dim, cap);
  }

  MomentMatrix m;
  m.degree = degree;
  m.baseSize = n;
  m.mat.resize(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      fillRecursive(p, 1, degree, i, j, p.at(i, j), m.mat);
    }
  }
  return m;
}

double cesaroTrace(const MomentMatrix& m, int n) {
  if (n < 1) {
    throw std::invalid_argument("cesaroTrace: n must be >= 1");
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.mat, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("cesaroTrace: eigenvalue computation failed");
  }
  const auto& eig = solver.eigenvalues();
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    Complex power = 1.0;
    for (int mth = 1; mth <= n; ++mth) {
      power *= eig(i);
      acc += power;
    }
  }
  acc /= static_cast<double>(n);
  if (std::abs(acc.imag()) > 1e-8) {
    throw std::runtime_error("cesaroTrace: imaginary part " + std::to_string(acc.imag()) +
                             " exceeds 1e-8");
  }
  return acc.real();
}

MomentReport estimateMoments(const MagicUnitary& p, int kmax, double eigTol, int cap) {
  if (kmax < 1) {
    throw std::invalid_argument("estimateMoments: kmax must be >= 1");
  }
  if (eigTol <= 0.0) {
    throw std::invalid_argument("estimateMoments: eigTol must be positive");
  }

  MomentReport report;
  report.eigTol = eigTol;
  report.cap = cap;
  report.entries.reserve(static_cast<std::size_t>(kmax));

  for (int k = 1; k <= kmax; ++k) {
    const MomentMatrix m = buildMomentMatrix(p, k, cap);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.mat, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("estimateMoments: eigenvalue computation failed at k=" +
                               std::to_string(k));
    }
    const auto& eig = solver.eigenvalues();

    MomentEntry entry;
    entry.k = k;
    double spectralRadius = 0.0;
    double gap = std::numeric_limits<double>::max();
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
      const double dist = std::abs(eig(i) - Complex(1.0, 0.0));
      spectralRadius = std::max(spectralRadius, std::abs(eig(i)));
      if (dist <= eigTol) {
        ++entry.moment;
      } else {
        gap = std::min(gap, dist);
      }
    }
    entry.gap = gap;
    entry.cesaro200 = cesaroTrace(m, 200);

    if (spectralRadius > 1.0 + 1e-8) {
      entry.flags.push_back("spectral_radius_exceeded");
    }
    if (entry.gap < 10.0 * eigTol) {
      entry.flags.push_back("ill_separated_spectrum");
    }
    if (std::abs(entry.cesaro200 - static_cast<double>(entry.moment)) > 0.05) {
      entry.flags.push_back("cesaro_deviation");
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace nchad
