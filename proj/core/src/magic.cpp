#include "nchad/magic.hpp"

#include <stdexcept>

namespace nchad {

MagicUnitary::MagicUnitary(AlgebraShape shape, int n) : shape_(std::move(shape)), n_(n) {
  if (n_ < 1) {
    throw std::invalid_argument("MagicUnitary: size must be positive");
  }
  entries_.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
  for (int i = 0; i < n_ * n_; ++i) {
    entries_.emplace_back(shape_, n_, n_);
  }
}

std::size_t MagicUnitary::index(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::out_of_range("MagicUnitary: index outside " + std::to_string(n_) + "x" +
                            std::to_string(n_));
  }
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
}

void MagicUnitary::set(int i, int j, NCMatrix value) {
  if (!(value.shape() == shape_) || value.rows() != n_ || value.cols() != n_) {
    throw std::invalid_argument("MagicUnitary: entry must be an " + std::to_string(n_) + "x" +
                                std::to_string(n_) + " grid over " + shape_.str());
  }
  entries_[index(i, j)] = std::move(value);
}

double MagicReport::maxResidual() const {
  return std::max({selfAdjointness, idempotence, rowSums, colSums});
}

MagicUnitary magicFromFormula(const NCMatrix& h) {
  if (!h.square()) {
    throw std::invalid_argument("magicFromFormula: matrix must be square");
  }
  const int n = h.rows();
  const double inv = 1.0 / static_cast<double>(n);
  MagicUnitary p(h.shape(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      NCMatrix entry(h.shape(), n, n);
      for (int a = 0; a < n; ++a) {
        const AlgElem left = h.at(i, a) * h.at(j, a).adjoint();
        for (int b = 0; b < n; ++b) {
          entry.set(a, b, inv * (left * (h.at(j, b) * h.at(i, b).adjoint())));
        }
      }
      p.set(i, j, std::move(entry));
    }
  }
  return p;
}

MagicUnitary buildMagic(const NCMatrix& h, double tol) {
  const VerificationReport rep = verifyHadamard(h, tol);
  if (!rep.passed) {
    throw HadamardVerificationError(rep);
  }
  return magicFromFormula(h);
}

MagicReport verifyMagic(const MagicUnitary& p, double tol) {
  const int n = p.size();
  MagicReport rep;
  rep.tol = tol;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const NCMatrix& e = p.at(i, j);
      const double sa = (e - e.gridAdjoint()).opNorm();
      if (sa > rep.selfAdjointness) {
        rep.selfAdjointness = sa;
        rep.worstSelfAdjoint = {i, j};
      }
      const double idem = (e.gridMul(e) - e).opNorm();
      if (idem > rep.idempotence) {
        rep.idempotence = idem;
        rep.worstIdempotent = {i, j};
      }
    }
  }

  const NCMatrix one = NCMatrix::identityGrid(p.shape(), n);
  for (int i = 0; i < n; ++i) {
    NCMatrix sum(p.shape(), n, n);
    for (int j = 0; j < n; ++j) {
      sum = sum + p.at(i, j);
    }
    const double r = (sum - one).opNorm();
    if (r > rep.rowSums) {
      rep.rowSums = r;
      rep.worstRow = i;
    }
  }
  for (int j = 0; j < n; ++j) {
    NCMatrix sum(p.shape(), n, n);
    for (int i = 0; i < n; ++i) {
      sum = sum + p.at(i, j);
    }
    const double r = (sum - one).opNorm();
    if (r > rep.colSums) {
      rep.colSums = r;
      rep.worstCol = j;
    }
  }

  rep.passed = rep.maxResidual() <= tol;
  return rep;
}

}  // namespace nchad
