#pragma once

#include <array>
#include <variant>
#include <vector>

#include "nchad/algebra.hpp"

namespace nchad {

// An R x C grid of algebra elements over a common shape. Doubles as an
// element of the rectangular matrix algebra over A: grid product, grid
// adjoint and the flattened C*-norm are provided for that reading.
class NCMatrix {
public:
  NCMatrix(AlgebraShape shape, int rows, int cols);  // zero-filled

  static NCMatrix identityGrid(const AlgebraShape& shape, int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const AlgebraShape& shape() const noexcept { return shape_; }

  const AlgElem& at(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, AlgElem value);

  NCMatrix gridMul(const NCMatrix& rhs) const;
  NCMatrix gridAdjoint() const;    // conjugate transpose
  NCMatrix gridTranspose() const;  // entries moved, not conjugated
  NCMatrix gridConj() const;       // entrywise adjoint, positions kept
  NCMatrix scaled(Complex lambda) const;

  NCMatrix operator+(const NCMatrix& rhs) const;
  NCMatrix operator-(const NCMatrix& rhs) const;

  // C*-norm of the grid as an element of M_{RxC}(A): the largest singular
  // value of the per-fiber flattening, maximized over fibers.
  double opNorm() const;
  Eigen::MatrixXcd flattenFiber(int x) const;

  // Normalized trace on M_N(A) (square grids): mean over the diagonal of
  // the entries' normalized traces.
  Complex normalizedTrace() const;

private:
  AlgebraShape shape_;
  int rows_;
  int cols_;
  std::vector<AlgElem> entries_;

  std::size_t index(int i, int j) const;
  void requireCompatible(const NCMatrix& rhs) const;
};

double opDistance(const NCMatrix& a, const NCMatrix& b);

// Residuals of the three Hadamard axioms, all as operator norms; orthogonality
// defects are normalized by N. Worst-offender indices accompany each residual.
struct VerificationReport {
  double tol = kDefaultTol;
  double unitarity = 0.0;
  double rowCommutation = 0.0;
  double colCommutation = 0.0;
  double rowOrthogonality = 0.0;
  double colOrthogonality = 0.0;
  bool passed = false;

  std::array<int, 2> worstUnitary{-1, -1};       // entry (i,j)
  std::array<int, 3> worstRowCommutation{-1, -1, -1};  // (row, col, col)
  std::array<int, 3> worstColCommutation{-1, -1, -1};  // (col, row, row)
  std::array<int, 2> worstRowPair{-1, -1};
  std::array<int, 2> worstColPair{-1, -1};

  double maxResidual() const;
};

// A Hadamard candidate failed verification where the operation requires one.
class HadamardVerificationError : public std::runtime_error {
public:
  explicit HadamardVerificationError(VerificationReport report)
      : std::runtime_error("matrix fails the Hadamard axioms (max residual " +
                           std::to_string(report.maxResidual()) + ")"),
        report_(report) {}

  const VerificationReport& report() const noexcept { return report_; }

private:
  VerificationReport report_;
};

VerificationReport verifyHadamard(const NCMatrix& h, double tol = kDefaultTol);

// max(||HH* - N|| , ||H^t conj(H) - N||) / N over M_N(A)
double biunitarityResidual(const NCMatrix& h);
bool isBiunitary(const NCMatrix& h, double tol = kDefaultTol);

struct ClassicalReport {
  bool classical = false;
  double maxCommutator = 0.0;
  std::array<int, 4> worstPair{-1, -1, -1, -1};  // (i,j) vs (k,l)
  bool adjointInvolved = false;
};

// Largest commutator among all entry pairs and entry/adjoint pairs; the
// matrix is classical when the generated algebra is commutative.
ClassicalReport isClassical(const NCMatrix& h, double tol = kDefaultTol);

struct PermuteRows {
  std::vector<int> perm;  // out(i,j) = in(perm[i], j)
};
struct PermuteCols {
  std::vector<int> perm;  // out(i,j) = in(i, perm[j])
};
struct ScaleRow {
  int index;
  AlgElem factor;  // central unitary, applied on the left
};
struct ScaleCol {
  int index;
  AlgElem factor;
};
using EquivalenceOp = std::variant<PermuteRows, PermuteCols, ScaleRow, ScaleCol>;

NCMatrix applyEquivalence(const NCMatrix& h, const EquivalenceOp& op, double tol = kDefaultTol);

// Normalize first row and column to the identity. Only licensed over
// all-scalar shapes, where every unitary is central.
NCMatrix dephase(const NCMatrix& h);

// Entry (i,j) = w^{ij} * 1 with w = exp(2*pi*i/n), indices 0-based.
NCMatrix fourier(int n, const AlgebraShape& shape);

// (H (x) K)_{ia,jb} = H_ij K_ab, row (i,a) -> i*M + a. Requires every H
// entry to commute with every K entry within tol.
NCMatrix tensorProduct(const NCMatrix& h, const NCMatrix& k, double tol = kDefaultTol);

// (H (x)_Q K)_{ia,jb} = Q_ib H_ij K_ab for a rectangular unitary grid Q
// whose entries commute along its rows and columns and whose family
// commutes with the H and K families.
NCMatrix ditaDeform(const NCMatrix& h, const NCMatrix& k, const NCMatrix& q,
                    double tol = kDefaultTol);

struct Relatives {
  NCMatrix conjugate;  // entrywise adjoint
  NCMatrix transpose;
  NCMatrix adjoint;  // conjugate transpose
};

Relatives relatives(const NCMatrix& h);

}  // namespace nchad
