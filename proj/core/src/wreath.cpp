#include "nchad/wreath.hpp"

#include <stdexcept>

namespace nchad {

NCMatrix kronGrid(const NCMatrix& a, const NCMatrix& b) {
  if (!(a.shape() == b.shape())) {
    throw ShapeMismatchError(a.shape().str(), b.shape().str());
  }
  const int m = b.rows();
  NCMatrix out(a.shape(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int k = 0; k < a.rows(); ++k) {
    for (int l = 0; l < a.cols(); ++l) {
      for (int c = 0; c < b.rows(); ++c) {
        for (int d = 0; d < b.cols(); ++d) {
          out.set(k * m + c, l * m + d, a.at(k, l) * b.at(c, d));
        }
      }
    }
  }
  return out;
}

double verifyProductFormula(const NCMatrix& h, const NCMatrix& k, const NCMatrix& q, double tol) {
  const NCMatrix product = ditaDeform(h, k, q, tol);
  const MagicUnitary p = buildMagic(product, tol);
  const MagicUnitary r = buildMagic(h, tol);

  const int n = h.rows();
  const int m = k.rows();
  const double invM = 1.0 / static_cast<double>(m);

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          // Block factor carries the 1/M weight; the 1/N lives in R_ij.
          NCMatrix block(h.shape(), m, m);
          for (int c = 0; c < m; ++c) {
            const AlgElem qc = q.at(i, c) * q.at(j, c).adjoint();
            const AlgElem kc = k.at(a, c) * k.at(b, c).adjoint();
            for (int d = 0; d < m; ++d) {
              const AlgElem qPart = qc * (q.at(j, d) * q.at(i, d).adjoint());
              const AlgElem kPart = kc * (k.at(b, d) * k.at(a, d).adjoint());
              block.set(c, d, invM * (qPart * kPart));
            }
          }
          const NCMatrix expected = kronGrid(r.at(i, j), block);
          worst = std::max(worst, opDistance(p.at(i * m + a, j * m + b), expected));
        }
      }
    }
  }
  return worst;
}

WreathComponents computeComponents(const MagicUnitary& p, const MagicUnitary& baseMagic) {
  const int n = baseMagic.size();
  const int nm = p.size();
  if (n < 1 || nm % n != 0) {
    throw std::invalid_argument("computeComponents: magic unitary of size " + std::to_string(nm) +
                                " does not carry the product index convention over base size " +
                                std::to_string(n));
  }
  if (!(p.shape() == baseMagic.shape())) {
    throw ShapeMismatchError(p.shape().str(), baseMagic.shape().str());
  }
  const int m = nm / n;

  WreathComponents comp;
  comp.baseSize = n;
  comp.blockSize = m;

  const NCMatrix identityBlock = NCMatrix::identityGrid(p.shape(), m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // V_ij at every b; the proof obligation is exactly b-independence.
      std::vector<NCMatrix> perB;
      perB.reserve(static_cast<std::size_t>(m));
      for (int b = 0; b < m; ++b) {
        NCMatrix sum(p.shape(), nm, nm);
        for (int a = 0; a < m; ++a) {
          sum = sum + p.at(i * m + a, j * m + b);
        }
        perB.push_back(std::move(sum));
      }
      for (int b = 1; b < m; ++b) {
        comp.bIndependenceResidual =
            std::max(comp.bIndependenceResidual, opDistance(perB[0], perB[static_cast<std::size_t>(b)]));
      }
      const NCMatrix expected = kronGrid(baseMagic.at(i, j), identityBlock);
      comp.baseMatchResidual = std::max(comp.baseMatchResidual, opDistance(perB[0], expected));
      comp.v.push_back(std::move(perB[0]));
    }
  }

  comp.u.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& ui = comp.u[static_cast<std::size_t>(i)];
    ui.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        NCMatrix sum(p.shape(), nm, nm);
        for (int j = 0; j < n; ++j) {
          sum = sum + p.at(i * m + a, j * m + b);
        }
        ui.push_back(std::move(sum));
      }
    }
  }
  return comp;
}

double FactorizationReport::maxResidual() const {
  return std::max({uSelfAdjointness, uIdempotence, uRowSums, uColSums, uvProduct, vuProduct});
}

FactorizationReport verifyFactorization(const WreathComponents& c, const MagicUnitary& p,
                                        double tol) {
  const int n = c.baseSize;
  const int m = c.blockSize;
  if (p.size() != n * m) {
    throw std::invalid_argument("verifyFactorization: components do not match the magic unitary");
  }

  FactorizationReport rep;
  rep.tol = tol;

  const NCMatrix one = NCMatrix::identityGrid(p.shape(), n * m);
  for (int i = 0; i < n; ++i) {
    const auto& ui = c.u[static_cast<std::size_t>(i)];
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const NCMatrix& e = ui[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) +
                               static_cast<std::size_t>(b)];
        rep.uSelfAdjointness = std::max(rep.uSelfAdjointness, (e - e.gridAdjoint()).opNorm());
        rep.uIdempotence = std::max(rep.uIdempotence, (e.gridMul(e) - e).opNorm());
      }
    }
    for (int a = 0; a < m; ++a) {
      NCMatrix sum(p.shape(), n * m, n * m);
      for (int b = 0; b < m; ++b) {
        sum = sum + ui[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) +
                       static_cast<std::size_t>(b)];
      }
      rep.uRowSums = std::max(rep.uRowSums, (sum - one).opNorm());
    }
    for (int b = 0; b < m; ++b) {
      NCMatrix sum(p.shape(), n * m, n * m);
      for (int a = 0; a < m; ++a) {
        sum = sum + ui[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) +
                       static_cast<std::size_t>(b)];
      }
      rep.uColSums = std::max(rep.uColSums, (sum - one).opNorm());
    }
  }

  for (int i = 0; i < n; ++i) {
    const auto& ui = c.u[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const NCMatrix& vij = c.v[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                static_cast<std::size_t>(j)];
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          const NCMatrix& uab = ui[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) +
                                   static_cast<std::size_t>(b)];
          const NCMatrix& target = p.at(i * m + a, j * m + b);
          rep.uvProduct = std::max(rep.uvProduct, opDistance(uab.gridMul(vij), target));
          rep.vuProduct = std::max(rep.vuProduct, opDistance(vij.gridMul(uab), target));
        }
      }
    }
  }

  rep.passed = rep.maxResidual() <= tol;
  return rep;
}

}  // namespace nchad
