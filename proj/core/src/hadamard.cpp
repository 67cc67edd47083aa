#include "nchad/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nchad {

NCMatrix::NCMatrix(AlgebraShape shape, int rows, int cols)
    : shape_(std::move(shape)), rows_(rows), cols_(cols) {
  if (rows_ < 1 || cols_ < 1) {
    throw std::invalid_argument("NCMatrix: dimensions must be positive");
  }
  entries_.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_));
  for (int i = 0; i < rows_ * cols_; ++i) {
    entries_.push_back(AlgElem::zero(shape_));
  }
}

NCMatrix NCMatrix::identityGrid(const AlgebraShape& shape, int n) {
  NCMatrix out(shape, n, n);
  for (int i = 0; i < n; ++i) {
    out.set(i, i, AlgElem::identity(shape));
  }
  return out;
}

std::size_t NCMatrix::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw std::out_of_range("NCMatrix: index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
         static_cast<std::size_t>(j);
}

void NCMatrix::set(int i, int j, AlgElem value) {
  if (!(value.shape() == shape_)) {
    throw ShapeMismatchError(shape_.str(), value.shape().str());
  }
  entries_[index(i, j)] = std::move(value);
}

void NCMatrix::requireCompatible(const NCMatrix& rhs) const {
  if (!(shape_ == rhs.shape_)) {
    throw ShapeMismatchError(shape_.str(), rhs.shape_.str());
  }
}

NCMatrix NCMatrix::gridMul(const NCMatrix& rhs) const {
  requireCompatible(rhs);
  if (cols_ != rhs.rows_) {
    throw std::invalid_argument("NCMatrix: grid product dimension mismatch");
  }
  NCMatrix out(shape_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < rhs.cols_; ++j) {
      AlgElem acc = AlgElem::zero(shape_);
      for (int c = 0; c < cols_; ++c) {
        acc += at(i, c) * rhs.at(c, j);
      }
      out.set(i, j, std::move(acc));
    }
  }
  return out;
}

NCMatrix NCMatrix::gridAdjoint() const {
  NCMatrix out(shape_, cols_, rows_);
  for (int i = 0; i < cols_; ++i) {
    for (int j = 0; j < rows_; ++j) {
      out.set(i, j, at(j, i).adjoint());
    }
  }
  return out;
}

NCMatrix NCMatrix::gridTranspose() const {
  NCMatrix out(shape_, cols_, rows_);
  for (int i = 0; i < cols_; ++i) {
    for (int j = 0; j < rows_; ++j) {
      out.set(i, j, at(j, i));
    }
  }
  return out;
}

NCMatrix NCMatrix::gridConj() const {
  NCMatrix out(shape_, rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      out.set(i, j, at(i, j).adjoint());
    }
  }
  return out;
}

NCMatrix NCMatrix::scaled(Complex lambda) const {
  NCMatrix out(shape_, rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      out.set(i, j, lambda * at(i, j));
    }
  }
  return out;
}

NCMatrix NCMatrix::operator+(const NCMatrix& rhs) const {
  requireCompatible(rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("NCMatrix: addition dimension mismatch");
  }
  NCMatrix out(shape_, rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      out.set(i, j, at(i, j) + rhs.at(i, j));
    }
  }
  return out;
}

NCMatrix NCMatrix::operator-(const NCMatrix& rhs) const {
  requireCompatible(rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("NCMatrix: subtraction dimension mismatch");
  }
  NCMatrix out(shape_, rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      out.set(i, j, at(i, j) - rhs.at(i, j));
    }
  }
  return out;
}

Eigen::MatrixXcd NCMatrix::flattenFiber(int x) const {
  const int k = shape_.fiberDim(x);
  Eigen::MatrixXcd flat(static_cast<Eigen::Index>(rows_) * k, static_cast<Eigen::Index>(cols_) * k);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      flat.block(static_cast<Eigen::Index>(i) * k, static_cast<Eigen::Index>(j) * k, k, k) =
          at(i, j).block(x);
    }
  }
  return flat;
}

double NCMatrix::opNorm() const {
  double norm = 0.0;
  for (int x = 0; x < shape_.fiberCount(); ++x) {
    const Eigen::MatrixXcd flat = flattenFiber(x);
    if (flat.rows() == 1 && flat.cols() == 1) {
      norm = std::max(norm, std::abs(flat(0, 0)));
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(flat);
      norm = std::max(norm, svd.singularValues()(0));
    }
  }
  return norm;
}

Complex NCMatrix::normalizedTrace() const {
  if (!square()) {
    throw std::invalid_argument("NCMatrix: normalized trace requires a square grid");
  }
  Complex acc = 0.0;
  for (int a = 0; a < rows_; ++a) {
    acc += at(a, a).normalizedTrace();
  }
  return acc / static_cast<double>(rows_);
}

double opDistance(const NCMatrix& a, const NCMatrix& b) { return (a - b).opNorm(); }

double VerificationReport::maxResidual() const {
  return std::max({unitarity, rowCommutation, colCommutation, rowOrthogonality, colOrthogonality});
}

VerificationReport verifyHadamard(const NCMatrix& h, double tol) {
  if (!h.square()) {
    throw std::invalid_argument("verifyHadamard: matrix must be square");
  }
  const int n = h.rows();
  const double dn = static_cast<double>(n);
  VerificationReport rep;
  rep.tol = tol;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = h.at(i, j).unitarityResidual();
      if (r > rep.unitarity) {
        rep.unitarity = r;
        rep.worstUnitary = {i, j};
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        const double r = commutatorResidual(h.at(i, j), h.at(i, l));
        if (r > rep.rowCommutation) {
          rep.rowCommutation = r;
          rep.worstRowCommutation = {i, j, l};
        }
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        const double r = commutatorResidual(h.at(i, j), h.at(k, j));
        if (r > rep.colCommutation) {
          rep.colCommutation = r;
          rep.worstColCommutation = {j, i, k};
        }
      }
    }
  }

  // Row pairs: (1/N) || sum_j H_ij H_kj^* - N delta_ik || in both variants.
  const AlgElem one = AlgElem::identity(h.shape());
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      AlgElem s1 = AlgElem::zero(h.shape());
      AlgElem s2 = AlgElem::zero(h.shape());
      for (int j = 0; j < n; ++j) {
        s1 += h.at(i, j) * h.at(k, j).adjoint();
        s2 += h.at(i, j).adjoint() * h.at(k, j);
      }
      if (i == k) {
        s1 -= dn * one;
        s2 -= dn * one;
      }
      const double r = std::max(s1.opNorm(), s2.opNorm()) / dn;
      if (r > rep.rowOrthogonality) {
        rep.rowOrthogonality = r;
        rep.worstRowPair = {i, k};
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int l = j; l < n; ++l) {
      AlgElem s1 = AlgElem::zero(h.shape());
      AlgElem s2 = AlgElem::zero(h.shape());
      for (int i = 0; i < n; ++i) {
        s1 += h.at(i, j) * h.at(i, l).adjoint();
        s2 += h.at(i, j).adjoint() * h.at(i, l);
      }
      if (j == l) {
        s1 -= dn * one;
        s2 -= dn * one;
      }
      const double r = std::max(s1.opNorm(), s2.opNorm()) / dn;
      if (r > rep.colOrthogonality) {
        rep.colOrthogonality = r;
        rep.worstColPair = {j, l};
      }
    }
  }

  rep.passed = rep.maxResidual() <= tol;
  return rep;
}

double biunitarityResidual(const NCMatrix& h) {
  if (!h.square()) {
    throw std::invalid_argument("biunitarityResidual: matrix must be square");
  }
  const int n = h.rows();
  const NCMatrix target = NCMatrix::identityGrid(h.shape(), n).scaled(static_cast<double>(n));
  const double r1 = (h.gridMul(h.gridAdjoint()) - target).opNorm();
  const double r2 = (h.gridTranspose().gridMul(h.gridConj()) - target).opNorm();
  return std::max(r1, r2) / static_cast<double>(n);
}

bool isBiunitary(const NCMatrix& h, double tol) { return biunitarityResidual(h) <= tol; }

ClassicalReport isClassical(const NCMatrix& h, double tol) {
  ClassicalReport rep;
  const int rows = h.rows();
  const int cols = h.cols();
  const int total = rows * cols;
  for (int p = 0; p < total; ++p) {
    const AlgElem& a = h.at(p / cols, p % cols);
    const AlgElem aStar = a.adjoint();
    for (int q = p; q < total; ++q) {
      const AlgElem& b = h.at(q / cols, q % cols);
      const double plain = (p == q) ? 0.0 : commutatorResidual(a, b);
      const double star = commutatorResidual(aStar, b);
      const double r = std::max(plain, star);
      if (r > rep.maxCommutator) {
        rep.maxCommutator = r;
        rep.worstPair = {p / cols, p % cols, q / cols, q % cols};
        rep.adjointInvolved = star > plain;
      }
    }
  }
  rep.classical = rep.maxCommutator <= tol;
  return rep;
}

namespace {

void requirePermutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("applyEquivalence: permutation length mismatch");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("applyEquivalence: not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

void requireCentralUnitary(const AlgElem& u, double tol) {
  const double ur = u.unitarityResidual();
  if (ur > tol) {
    throw PreconditionError("scaling_unitary", ur, "scaling element is not unitary");
  }
  const double cr = u.centralityResidual();
  if (cr > tol) {
    throw PreconditionError("scaling_central", cr, "scaling element is not central");
  }
}

}  // namespace

NCMatrix applyEquivalence(const NCMatrix& h, const EquivalenceOp& op, double tol) {
  return std::visit(
      [&](const auto& o) -> NCMatrix {
        using T = std::decay_t<decltype(o)>;
        NCMatrix out(h.shape(), h.rows(), h.cols());
        if constexpr (std::is_same_v<T, PermuteRows>) {
          requirePermutation(o.perm, h.rows());
          for (int i = 0; i < h.rows(); ++i) {
            for (int j = 0; j < h.cols(); ++j) {
              out.set(i, j, h.at(o.perm[static_cast<std::size_t>(i)], j));
            }
          }
        } else if constexpr (std::is_same_v<T, PermuteCols>) {
          requirePermutation(o.perm, h.cols());
          for (int i = 0; i < h.rows(); ++i) {
            for (int j = 0; j < h.cols(); ++j) {
              out.set(i, j, h.at(i, o.perm[static_cast<std::size_t>(j)]));
            }
          }
        } else if constexpr (std::is_same_v<T, ScaleRow>) {
          requireCentralUnitary(o.factor, tol);
          if (o.index < 0 || o.index >= h.rows()) {
            throw std::out_of_range("applyEquivalence: row index");
          }
          for (int i = 0; i < h.rows(); ++i) {
            for (int j = 0; j < h.cols(); ++j) {
              out.set(i, j, i == o.index ? o.factor * h.at(i, j) : h.at(i, j));
            }
          }
        } else {
          static_assert(std::is_same_v<T, ScaleCol>);
          requireCentralUnitary(o.factor, tol);
          if (o.index < 0 || o.index >= h.cols()) {
            throw std::out_of_range("applyEquivalence: column index");
          }
          for (int i = 0; i < h.rows(); ++i) {
            for (int j = 0; j < h.cols(); ++j) {
              out.set(i, j, j == o.index ? o.factor * h.at(i, j) : h.at(i, j));
            }
          }
        }
        return out;
      },
      op);
}

NCMatrix dephase(const NCMatrix& h) {
  if (!h.square()) {
    throw std::invalid_argument("dephase: matrix must be square");
  }
  if (!h.shape().allScalar()) {
    throw PreconditionError("dephase_scalar_shape", 0.0,
                            "dephasing requires an all-scalar shape; unitaries over " +
                                h.shape().str() + " are not all central");
  }
  NCMatrix out = h;
  for (int j = 0; j < h.cols(); ++j) {
    const AlgElem u = h.at(0, j).adjoint();
    for (int i = 0; i < h.rows(); ++i) {
      out.set(i, j, u * out.at(i, j));
    }
  }
  for (int i = 0; i < h.rows(); ++i) {
    const AlgElem u = out.at(i, 0).adjoint();
    for (int j = 0; j < h.cols(); ++j) {
      out.set(i, j, u * out.at(i, j));
    }
  }
  return out;
}

NCMatrix fourier(int n, const AlgebraShape& shape) {
  if (n < 1) {
    throw std::invalid_argument("fourier: size must be >= 1");
  }
  NCMatrix out(shape, n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int e = static_cast<int>((static_cast<long long>(i) * j) % n);
      Complex w;
      // Quarter turns are exact; everything else via polar.
      if (e == 0) {
        w = Complex(1, 0);
      } else if (4 * e == n) {
        w = Complex(0, 1);
      } else if (2 * e == n) {
        w = Complex(-1, 0);
      } else if (4 * e == 3 * n) {
        w = Complex(0, -1);
      } else {
        w = std::polar(1.0, 2.0 * M_PI * e / n);
      }
      out.set(i, j, AlgElem::scalar(shape, w));
    }
  }
  return out;
}

namespace {

struct CrossWorst {
  double residual = 0.0;
  std::array<int, 4> pair{-1, -1, -1, -1};
};

CrossWorst maxCrossCommutator(const NCMatrix& a, const NCMatrix& b) {
  CrossWorst worst;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      for (int p = 0; p < b.rows(); ++p) {
        for (int q = 0; q < b.cols(); ++q) {
          const double r = commutatorResidual(a.at(i, j), b.at(p, q));
          if (r > worst.residual) {
            worst.residual = r;
            worst.pair = {i, j, p, q};
          }
        }
      }
    }
  }
  return worst;
}

}  // namespace

NCMatrix tensorProduct(const NCMatrix& h, const NCMatrix& k, double tol) {
  if (!h.square() || !k.square()) {
    throw std::invalid_argument("tensorProduct: both factors must be square");
  }
  if (!(h.shape() == k.shape())) {
    throw ShapeMismatchError(h.shape().str(), k.shape().str());
  }
  const CrossWorst cross = maxCrossCommutator(h, k);
  if (cross.residual > tol) {
    throw PreconditionError(
        "factor_commutation", cross.residual,
        "entries H(" + std::to_string(cross.pair[0]) + "," + std::to_string(cross.pair[1]) +
            ") and K(" + std::to_string(cross.pair[2]) + "," + std::to_string(cross.pair[3]) +
            ") do not commute");
  }
  const int n = h.rows();
  const int m = k.rows();
  NCMatrix out(h.shape(), n * m, n * m);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) {
      for (int j = 0; j < n; ++j) {
        for (int b = 0; b < m; ++b) {
          out.set(i * m + a, j * m + b, h.at(i, j) * k.at(a, b));
        }
      }
    }
  }
  return out;
}

NCMatrix ditaDeform(const NCMatrix& h, const NCMatrix& k, const NCMatrix& q, double tol) {
  if (!h.square() || !k.square()) {
    throw std::invalid_argument("ditaDeform: H and K must be square");
  }
  const int n = h.rows();
  const int m = k.rows();
  if (q.rows() != n || q.cols() != m) {
    throw std::invalid_argument("ditaDeform: Q must be " + std::to_string(n) + "x" +
                                std::to_string(m));
  }
  if (!(h.shape() == k.shape())) {
    throw ShapeMismatchError(h.shape().str(), k.shape().str());
  }
  if (!(h.shape() == q.shape())) {
    throw ShapeMismatchError(h.shape().str(), q.shape().str());
  }

  for (int i = 0; i < n; ++i) {
    for (int b = 0; b < m; ++b) {
      const double r = q.at(i, b).unitarityResidual();
      if (r > tol) {
        throw PreconditionError("q_unitary", r,
                                "Q(" + std::to_string(i) + "," + std::to_string(b) +
                                    ") is not unitary");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int b = 0; b < m; ++b) {
      for (int c = b + 1; c < m; ++c) {
        const double r = commutatorResidual(q.at(i, b), q.at(i, c));
        if (r > tol) {
          throw PreconditionError("q_row_commutation", r,
                                  "row " + std::to_string(i) + " entries " + std::to_string(b) +
                                      "," + std::to_string(c) + " of Q do not commute");
        }
      }
    }
  }
  for (int b = 0; b < m; ++b) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double r = commutatorResidual(q.at(i, b), q.at(j, b));
        if (r > tol) {
          throw PreconditionError("q_col_commutation", r,
                                  "column " + std::to_string(b) + " entries " + std::to_string(i) +
                                      "," + std::to_string(j) + " of Q do not commute");
        }
      }
    }
  }

  const CrossWorst hk = maxCrossCommutator(h, k);
  if (hk.residual > tol) {
    throw PreconditionError("hk_commutation", hk.residual,
                            "the H and K families do not commute");
  }
  const CrossWorst hq = maxCrossCommutator(h, q);
  if (hq.residual > tol) {
    throw PreconditionError("hq_commutation", hq.residual,
                            "the H and Q families do not commute");
  }
  const CrossWorst kq = maxCrossCommutator(k, q);
  if (kq.residual > tol) {
    throw PreconditionError("kq_commutation", kq.residual,
                            "the K and Q families do not commute");
  }

  NCMatrix out(h.shape(), n * m, n * m);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) {
      for (int j = 0; j < n; ++j) {
        for (int b = 0; b < m; ++b) {
          out.set(i * m + a, j * m + b, q.at(i, b) * h.at(i, j) * k.at(a, b));
        }
      }
    }
  }
  return out;
}

Relatives relatives(const NCMatrix& h) {
  return Relatives{h.gridConj(), h.gridTranspose(), h.gridAdjoint()};
}

}  // namespace nchad
