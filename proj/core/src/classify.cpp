#include "nchad/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace nchad {

VanishingSumResult extractVanishingSumUnit(const AlgElem& a, const AlgElem& b, const AlgElem& c,
                                           double tol) {
  const double worstUnitarity =
      std::max({a.unitarityResidual(), b.unitarityResidual(), c.unitarityResidual()});
  if (worstUnitarity > tol) {
    throw PreconditionError("unit_inputs", worstUnitarity, "inputs must be unitaries");
  }
  const double sumNorm = (a + b + c).opNorm();
  if (sumNorm > tol) {
    throw PreconditionError("vanishing_sum", sumNorm,
                            "sum of the three unitaries has norm " + std::to_string(sumNorm));
  }
  const AlgElem w = b * a.adjoint();
  const AlgElem one = AlgElem::identity(a.shape());
  const double residual = (one + w + w * w).opNorm();
  return VanishingSumResult{w, residual};
}

double CanonicalForm3x3::maxPatternResidual() const {
  return std::max({pattern22, pattern23, pattern33});
}

CanonicalForm3x3 canonicalForm3x3(const NCMatrix& h, double tol) {
  if (h.rows() != 3 || h.cols() != 3) {
    throw std::invalid_argument("canonicalForm3x3: matrix must be 3x3");
  }
  const VerificationReport rep = verifyHadamard(h, tol);
  if (!rep.passed) {
    throw HadamardVerificationError(rep);
  }

  const AlgElem a = h.at(0, 0);
  const AlgElem b = h.at(0, 1);
  const AlgElem c = h.at(0, 2);
  const AlgElem u = h.at(1, 0) * a.adjoint();
  const AlgElem v = h.at(2, 0) * a.adjoint();
  const AlgElem w = h.at(2, 1) * b.adjoint() * v.adjoint();

  CanonicalForm3x3 out{a, b, c, u, v, w};
  out.tol = tol;

  const AlgElem w2 = w * w;
  out.pattern22 = opDistance(h.at(1, 1), w2 * u * b);
  out.pattern23 = opDistance(h.at(1, 2), w * u * c);
  out.pattern33 = opDistance(h.at(2, 2), w2 * v * c);

  out.rowTripleCommutation =
      std::max({commutatorResidual(a, b), commutatorResidual(a, c), commutatorResidual(b, c)});
  out.derivedTripleCommutation =
      std::max({commutatorResidual(u, v), commutatorResidual(u, w), commutatorResidual(v, w)});

  const AlgElem one = AlgElem::identity(h.shape());
  out.vanishingResidual = (one + w + w2).opNorm();

  const ClassicalReport cls = isClassical(h, tol);
  out.classical = cls.classical;
  out.classicalResidual = cls.maxCommutator;

  out.passed = out.maxPatternResidual() <= tol && out.rowTripleCommutation <= tol &&
               out.derivedTripleCommutation <= tol && out.vanishingResidual <= tol;
  return out;
}

TwoByTwoReport check2x2(const NCMatrix& h, double tol) {
  if (h.rows() != 2 || h.cols() != 2) {
    throw std::invalid_argument("check2x2: matrix must be 2x2");
  }
  const VerificationReport rep = verifyHadamard(h, tol);
  if (!rep.passed) {
    throw HadamardVerificationError(rep);
  }

  const AlgElem& a = h.at(0, 0);
  const AlgElem& b = h.at(0, 1);
  const AlgElem& c = h.at(1, 0);
  const AlgElem& d = h.at(1, 1);

  TwoByTwoReport out;
  out.tol = tol;
  out.relationA = (a + c * d.adjoint() * b).opNorm();
  out.relationC = (c + a * b.adjoint() * d).opNorm();

  const ClassicalReport cls = isClassical(h, tol);
  out.classical = cls.classical;
  out.classicalResidual = cls.maxCommutator;

  out.passed = out.classical && out.relationA <= tol && out.relationC <= tol;
  return out;
}

namespace {

constexpr std::array<std::array<int, 4>, 3> kPairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};

// Max over lines of the centrality defect of the paired-entry ratios;
// `byColumns` pairs columns and scans rows, otherwise the transpose reading.
double pairingResidual(const NCMatrix& h, const std::array<int, 4>& pairing, bool byColumns) {
  double worst = 0.0;
  for (int line = 0; line < 4; ++line) {
    for (int p = 0; p < 2; ++p) {
      const int a = pairing[static_cast<std::size_t>(2 * p)];
      const int b = pairing[static_cast<std::size_t>(2 * p + 1)];
      const AlgElem ratio = byColumns ? h.at(line, a) * h.at(line, b).adjoint()
                                      : h.at(a, line) * h.at(b, line).adjoint();
      worst = std::max(worst, ratio.centralityResidual());
    }
  }
  return worst;
}

}  // namespace

DeformationPatternReport matchDeformedProductPattern(const NCMatrix& h, double tol) {
  if (h.rows() != 4 || h.cols() != 4) {
    throw std::invalid_argument("matchDeformedProductPattern: matrix must be 4x4");
  }
  DeformationPatternReport rep;
  rep.tol = tol;
  rep.columnResidual = std::numeric_limits<double>::max();
  rep.rowResidual = std::numeric_limits<double>::max();
  for (const auto& pairing : kPairings) {
    const double byCols = pairingResidual(h, pairing, true);
    if (byCols < rep.columnResidual) {
      rep.columnResidual = byCols;
      rep.columnPairing = pairing;
    }
    const double byRows = pairingResidual(h, pairing, false);
    if (byRows < rep.rowResidual) {
      rep.rowResidual = byRows;
      rep.rowPairing = pairing;
    }
  }
  rep.matched = rep.columnResidual <= tol && rep.rowResidual <= tol;
  return rep;
}

namespace {

// --- search machinery -------------------------------------------------

// Uniform double in [0,1) from explicit mt19937_64 bits.
double nextUniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * (1.0 / 9007199254740992.0);
}

struct EntryParam {
  int fiberOffset;  // offset of this entry's first parameter
  std::vector<int> ranks;  // per fiber, self-adjoint mode only
};

// Parameter layout: for each entry (row-major), for each fiber of dim K,
// K^2 reals encoding a Hermitian block T (diagonal first, then re/im per
// upper off-diagonal). The entry is exp(i T), or W diag(+-1) W^* with
// W = exp(i T) in self-adjoint mode.
class EntryBuilder {
public:
  EntryBuilder(const AlgebraShape& shape, bool selfAdjoint)
      : shape_(shape), selfAdjoint_(selfAdjoint) {
    perEntry_ = 0;
    for (int x = 0; x < shape.fiberCount(); ++x) {
      perEntry_ += shape.fiberDim(x) * shape.fiberDim(x);
    }
  }

  int paramsPerEntry() const { return perEntry_; }

  AlgElem build(const double* params, const std::vector<int>& ranks) const {
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.reserve(static_cast<std::size_t>(shape_.fiberCount()));
    const double* cursor = params;
    for (int x = 0; x < shape_.fiberCount(); ++x) {
      const int k = shape_.fiberDim(x);
      Eigen::MatrixXcd herm(k, k);
      for (int p = 0; p < k; ++p) {
        herm(p, p) = cursor[p];
      }
      int off = k;
      for (int p = 0; p < k; ++p) {
        for (int q = p + 1; q < k; ++q) {
          herm(p, q) = Complex(cursor[off], cursor[off + 1]);
          herm(q, p) = std::conj(herm(p, q));
          off += 2;
        }
      }
      cursor += k * k;

      Eigen::MatrixXcd w;
      if (k == 1) {
        w.resize(1, 1);
        w(0, 0) = std::polar(1.0, herm(0, 0).real());
      } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
        Eigen::VectorXcd phases(k);
        for (int p = 0; p < k; ++p) {
          phases(p) = std::polar(1.0, es.eigenvalues()(p));
        }
        w = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
      }

      if (!selfAdjoint_) {
        blocks.push_back(std::move(w));
      } else {
        const int rank = ranks[static_cast<std::size_t>(x)];
        Eigen::VectorXd signs(k);
        for (int p = 0; p < k; ++p) {
          signs(p) = p < rank ? 1.0 : -1.0;
        }
        if (k == 1) {
          Eigen::MatrixXcd b(1, 1);
          b(0, 0) = signs(0);
          blocks.push_back(std::move(b));
        } else {
          blocks.push_back(w * signs.asDiagonal() * w.adjoint());
        }
      }
    }
    return AlgElem(shape_, std::move(blocks));
  }

private:
  AlgebraShape shape_;
  bool selfAdjoint_;
  int perEntry_;
};

// Smooth squared-residual objective over the orthogonality and commutation
// axioms (Frobenius norms; unitarity holds by construction).
class AxiomObjective {
public:
  AxiomObjective(int n, const AlgebraShape& shape) : n_(n), shape_(shape) {}

  double eval(const std::vector<AlgElem>& e) const {
    const double dn = static_cast<double>(n_);
    double f = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int k = i + 1; k < n_; ++k) {
        AlgElem s1 = AlgElem::zero(shape_);
        AlgElem s2 = AlgElem::zero(shape_);
        for (int j = 0; j < n_; ++j) {
          s1 += e[idx(i, j)] * e[idx(k, j)].adjoint();
          s2 += e[idx(i, j)].adjoint() * e[idx(k, j)];
        }
        f += (s1.frobNormSq() + s2.frobNormSq()) / (dn * dn);
      }
    }
    for (int j = 0; j < n_; ++j) {
      for (int l = j + 1; l < n_; ++l) {
        AlgElem s1 = AlgElem::zero(shape_);
        AlgElem s2 = AlgElem::zero(shape_);
        for (int i = 0; i < n_; ++i) {
          s1 += e[idx(i, j)] * e[idx(i, l)].adjoint();
          s2 += e[idx(i, j)].adjoint() * e[idx(i, l)];
        }
        f += (s1.frobNormSq() + s2.frobNormSq()) / (dn * dn);
      }
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        for (int l = j + 1; l < n_; ++l) {
          f += (e[idx(i, j)] * e[idx(i, l)] - e[idx(i, l)] * e[idx(i, j)]).frobNormSq();
        }
      }
    }
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) {
        for (int k = i + 1; k < n_; ++k) {
          f += (e[idx(i, j)] * e[idx(k, j)] - e[idx(k, j)] * e[idx(i, j)]).frobNormSq();
        }
      }
    }
    return f;
  }

private:
  int n_;
  AlgebraShape shape_;

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }
};

struct RestartOutcome {
  double residual = std::numeric_limits<double>::max();
  NCMatrix matrix;
};

RestartOutcome runRestart(const SearchConfig& cfg, std::uint64_t restartSeed) {
  const int n = cfg.n;
  const int numEntries = n * n;
  const EntryBuilder builder(cfg.shape, cfg.selfAdjointEntries);
  const AxiomObjective objective(n, cfg.shape);
  const int perEntry = builder.paramsPerEntry();
  const int numParams = numEntries * perEntry;

  std::mt19937_64 gen(restartSeed);
  std::vector<std::vector<int>> ranks(static_cast<std::size_t>(numEntries));
  for (auto& r : ranks) {
    r.resize(static_cast<std::size_t>(cfg.shape.fiberCount()));
    for (int x = 0; x < cfg.shape.fiberCount(); ++x) {
      const int k = cfg.shape.fiberDim(x);
      r[static_cast<std::size_t>(x)] =
          cfg.selfAdjointEntries ? static_cast<int>(gen() % static_cast<std::uint64_t>(k + 1)) : 0;
    }
  }

  std::vector<double> params(static_cast<std::size_t>(numParams));
  for (auto& v : params) {
    v = (2.0 * nextUniform(gen) - 1.0) * M_PI;
  }

  std::vector<AlgElem> entries;
  entries.reserve(static_cast<std::size_t>(numEntries));
  auto rebuildEntry = [&](int e) {
    return builder.build(params.data() + static_cast<std::size_t>(e) * perEntry,
                         ranks[static_cast<std::size_t>(e)]);
  };
  for (int e = 0; e < numEntries; ++e) {
    entries.push_back(rebuildEntry(e));
  }

  double f = objective.eval(entries);
  const double fStop = 0.09 * cfg.targetResidual * cfg.targetResidual;
  const double h = 1e-6;
  double step = 0.05;

  std::vector<double> grad(static_cast<std::size_t>(numParams));
  std::vector<AlgElem> trial = entries;

  auto evalShifted = [&](int coord, double delta) {
    const int e = coord / perEntry;
    params[static_cast<std::size_t>(coord)] += delta;
    const AlgElem saved = entries[static_cast<std::size_t>(e)];
    entries[static_cast<std::size_t>(e)] = rebuildEntry(e);
    const double val = objective.eval(entries);
    params[static_cast<std::size_t>(coord)] -= delta;
    entries[static_cast<std::size_t>(e)] = saved;
    return val;
  };

  for (int iter = 0; iter < cfg.maxIters && f > fStop; ++iter) {
    double gradNormSq = 0.0;
    for (int c = 0; c < numParams; ++c) {
      const double fPlus = evalShifted(c, h);
      const double fMinus = evalShifted(c, -h);
      grad[static_cast<std::size_t>(c)] = (fPlus - fMinus) / (2.0 * h);
      gradNormSq += grad[static_cast<std::size_t>(c)] * grad[static_cast<std::size_t>(c)];
    }
    if (gradNormSq == 0.0) {
      break;
    }

    // Backtracking line search with step memory.
    bool accepted = false;
    double eta = step;
    for (int bt = 0; bt < 50; ++bt) {
      std::vector<double> trialParams = params;
      for (int c = 0; c < numParams; ++c) {
        trialParams[static_cast<std::size_t>(c)] -= eta * grad[static_cast<std::size_t>(c)];
      }
      params.swap(trialParams);
      for (int e = 0; e < numEntries; ++e) {
        trial[static_cast<std::size_t>(e)] = rebuildEntry(e);
      }
      const double fTrial = objective.eval(trial);
      if (fTrial <= f - 1e-4 * eta * gradNormSq) {
        entries.swap(trial);
        f = fTrial;
        step = std::min(eta * 1.6, 1.0);
        accepted = true;
        break;
      }
      params.swap(trialParams);
      eta *= 0.5;
    }

    if (!accepted) {
      // Derivative-free fallback: greedy compass sweeps with a shrinking
      // step; resume gradient descent after any improvement.
      double delta = std::max(1e-4, eta);
      bool improved = false;
      while (delta >= 1e-12 && !improved) {
        for (int c = 0; c < numParams && !improved; ++c) {
          for (const double sign : {1.0, -1.0}) {
            const double fTrial = evalShifted(c, sign * delta);
            if (fTrial < f) {
              params[static_cast<std::size_t>(c)] += sign * delta;
              const int e = c / perEntry;
              entries[static_cast<std::size_t>(e)] = rebuildEntry(e);
              f = fTrial;
              improved = true;
              break;
            }
          }
        }
        if (!improved) {
          delta *= 0.1;
        }
      }
      if (!improved) {
        break;  // converged to a (possibly nonzero) local minimum
      }
      step = std::max(step, 1e-6);
    }
  }

  RestartOutcome out{0.0, NCMatrix(cfg.shape, n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.matrix.set(i, j, entries[static_cast<std::size_t>(i * n + j)]);
    }
  }
  out.residual = verifyHadamard(out.matrix, kDefaultTol).maxResidual();
  return out;
}

}  // namespace

SearchResult searchHadamard(const SearchConfig& cfg) {
  if (cfg.n < 1) {
    throw std::invalid_argument("searchHadamard: n must be >= 1");
  }
  if (cfg.restarts < 1) {
    throw std::invalid_argument("searchHadamard: restarts must be >= 1");
  }
  if (cfg.targetResidual <= 0.0) {
    throw std::invalid_argument("searchHadamard: targetResidual must be positive");
  }

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts),
                                       RestartOutcome{0.0, NCMatrix(cfg.shape, cfg.n, cfg.n)});

  // Restarts are independent: each derives its own seed from its index, so
  // the outcome vector does not depend on thread scheduling.
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const int threads = std::min<int>(cfg.threads > 0 ? cfg.threads : static_cast<int>(hw),
                                    cfg.restarts);

  std::atomic<int> nextIdx{0};
  auto worker = [&]() {
    while (true) {
      const int r = nextIdx.fetch_add(1);
      if (r >= cfg.restarts) break;
      const std::uint64_t restartSeed =
          detail::mixSeed(cfg.seed ^ detail::mixSeed(static_cast<std::uint64_t>(r) + 1));
      outcomes[static_cast<std::size_t>(r)] = runRestart(cfg, restartSeed);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  SearchResult result{0.0, NCMatrix(cfg.shape, cfg.n, cfg.n), {}, -1, false, 0.0};
  result.residualTrace.reserve(static_cast<std::size_t>(cfg.restarts));
  result.bestResidual = std::numeric_limits<double>::max();
  for (int r = 0; r < cfg.restarts; ++r) {
    const double res = outcomes[static_cast<std::size_t>(r)].residual;
    result.residualTrace.push_back(res);
    if (res < result.bestResidual) {
      result.bestResidual = res;
      result.bestRestart = r;
    }
  }
  result.bestMatrix = outcomes[static_cast<std::size_t>(result.bestRestart)].matrix;

  const ClassicalReport cls = isClassical(result.bestMatrix, 1e-6);
  result.classical = cls.classical;
  result.classicalResidual = cls.maxCommutator;
  return result;
}

}  // namespace nchad
