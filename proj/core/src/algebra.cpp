#include "nchad/algebra.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nchad {

AlgebraShape::AlgebraShape(std::vector<int> fibers) : fibers_(std::move(fibers)) {
  if (fibers_.empty()) {
    throw std::invalid_argument("AlgebraShape: at least one fiber required");
  }
  for (int k : fibers_) {
    if (k < 1) {
      throw std::invalid_argument("AlgebraShape: fiber dimensions must be >= 1");
    }
  }
}

int AlgebraShape::totalDim() const noexcept {
  return std::accumulate(fibers_.begin(), fibers_.end(), 0);
}

bool AlgebraShape::allScalar() const noexcept {
  for (int k : fibers_) {
    if (k != 1) return false;
  }
  return true;
}

std::string AlgebraShape::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < fibers_.size(); ++i) {
    if (i > 0) out << ',';
    out << fibers_[i];
  }
  out << ']';
  return out.str();
}

AlgElem::AlgElem(AlgebraShape shape, std::vector<Eigen::MatrixXcd> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != shape_.fiberCount()) {
    throw std::invalid_argument("AlgElem: block count does not match shape " + shape_.str());
  }
  for (int x = 0; x < shape_.fiberCount(); ++x) {
    const auto& b = blocks_[static_cast<std::size_t>(x)];
    if (b.rows() != shape_.fiberDim(x) || b.cols() != shape_.fiberDim(x)) {
      throw std::invalid_argument("AlgElem: fiber " + std::to_string(x) +
                                  " block does not conform to shape " + shape_.str());
    }
  }
}

AlgElem AlgElem::zero(const AlgebraShape& shape) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.fiberCount()));
  for (int x = 0; x < shape.fiberCount(); ++x) {
    blocks.push_back(Eigen::MatrixXcd::Zero(shape.fiberDim(x), shape.fiberDim(x)));
  }
  return AlgElem(shape, std::move(blocks));
}

AlgElem AlgElem::identity(const AlgebraShape& shape) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.fiberCount()));
  for (int x = 0; x < shape.fiberCount(); ++x) {
    blocks.push_back(Eigen::MatrixXcd::Identity(shape.fiberDim(x), shape.fiberDim(x)));
  }
  return AlgElem(shape, std::move(blocks));
}

AlgElem AlgElem::scalar(const AlgebraShape& shape, Complex lambda) {
  AlgElem e = identity(shape);
  for (int x = 0; x < shape.fiberCount(); ++x) {
    e.block(x) *= lambda;
  }
  return e;
}

void AlgElem::requireSameShape(const AlgElem& other) const {
  if (!(shape_ == other.shape_)) {
    throw ShapeMismatchError(shape_.str(), other.shape_.str());
  }
}

AlgElem AlgElem::adjoint() const {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    blocks.push_back(b.adjoint());
  }
  return AlgElem(shape_, std::move(blocks));
}

double AlgElem::opNorm() const {
  double norm = 0.0;
  for (const auto& b : blocks_) {
    if (b.rows() == 1) {
      norm = std::max(norm, std::abs(b(0, 0)));
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
      norm = std::max(norm, svd.singularValues()(0));
    }
  }
  return norm;
}

double AlgElem::frobNormSq() const {
  double s = 0.0;
  for (const auto& b : blocks_) {
    s += b.squaredNorm();
  }
  return s;
}

Complex AlgElem::normalizedTrace() const {
  Complex acc = 0.0;
  for (int x = 0; x < shape_.fiberCount(); ++x) {
    acc += blocks_[static_cast<std::size_t>(x)].trace() / static_cast<double>(shape_.fiberDim(x));
  }
  return acc / static_cast<double>(shape_.fiberCount());
}

double AlgElem::unitarityResidual() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(b.rows(), b.cols());
    const Eigen::MatrixXcd left = b * b.adjoint() - id;
    const Eigen::MatrixXcd right = b.adjoint() * b - id;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svdL(left);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svdR(right);
    worst = std::max({worst, svdL.singularValues()(0), svdR.singularValues()(0)});
  }
  return worst;
}

double AlgElem::centralityResidual() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    const auto k = b.rows();
    if (k == 1) continue;
    const Complex mean = b.trace() / static_cast<double>(k);
    const Eigen::MatrixXcd dev = b - mean * Eigen::MatrixXcd::Identity(k, k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dev);
    worst = std::max(worst, svd.singularValues()(0));
  }
  return worst;
}

AlgElem& AlgElem::operator+=(const AlgElem& rhs) {
  requireSameShape(rhs);
  for (std::size_t x = 0; x < blocks_.size(); ++x) {
    blocks_[x] += rhs.blocks_[x];
  }
  return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& rhs) {
  requireSameShape(rhs);
  for (std::size_t x = 0; x < blocks_.size(); ++x) {
    blocks_[x] -= rhs.blocks_[x];
  }
  return *this;
}

AlgElem AlgElem::operator-() const {
  AlgElem out = *this;
  for (auto& b : out.blocks_) {
    b = -b;
  }
  return out;
}

AlgElem operator*(const AlgElem& lhs, const AlgElem& rhs) {
  lhs.requireSameShape(rhs);
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(lhs.blocks_.size());
  for (std::size_t x = 0; x < lhs.blocks_.size(); ++x) {
    blocks.push_back(lhs.blocks_[x] * rhs.blocks_[x]);
  }
  return AlgElem(lhs.shape_, std::move(blocks));
}

AlgElem operator*(Complex lambda, const AlgElem& rhs) {
  AlgElem out = rhs;
  for (auto& b : out.blocks_) {
    b *= lambda;
  }
  return out;
}

double commutatorResidual(const AlgElem& a, const AlgElem& b) {
  return (a * b - b * a).opNorm();
}

double opDistance(const AlgElem& a, const AlgElem& b) { return (a - b).opNorm(); }

namespace detail {

std::uint64_t mixSeed(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double NormalSource::next() {
  if (haveSpare_) {
    haveSpare_ = false;
    return spare_;
  }
  // Box-Muller on explicit uniform bits, identical across standard libraries.
  const double scale = 1.0 / 9007199254740992.0;  // 2^-53
  double u1 = 0.0;
  do {
    u1 = static_cast<double>(gen_() >> 11) * scale;
  } while (u1 <= 0.0);
  const double u2 = static_cast<double>(gen_() >> 11) * scale;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  haveSpare_ = true;
  return r * std::cos(theta);
}

}  // namespace detail

AlgElem randomGaussian(const AlgebraShape& shape, std::uint64_t seed) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.fiberCount()));
  for (int x = 0; x < shape.fiberCount(); ++x) {
    detail::NormalSource normal(detail::mixSeed(seed ^ detail::mixSeed(static_cast<std::uint64_t>(x))));
    const int k = shape.fiberDim(x);
    Eigen::MatrixXcd b(k, k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        const double re = normal.next();
        const double im = normal.next();
        b(r, c) = Complex(re, im) / std::sqrt(2.0);
      }
    }
    blocks.push_back(std::move(b));
  }
  return AlgElem(shape, std::move(blocks));
}

AlgElem randomUnitary(const AlgebraShape& shape, std::uint64_t seed) {
  AlgElem g = randomGaussian(shape, seed);
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.fiberCount()));
  for (int x = 0; x < shape.fiberCount(); ++x) {
    const Eigen::MatrixXcd& a = g.block(x);
    const int k = shape.fiberDim(x);
    if (k == 1) {
      const Complex z = a(0, 0);
      const double r = std::abs(z);
      Eigen::MatrixXcd b(1, 1);
      b(0, 0) = (r > 0.0) ? z / r : Complex(1.0, 0.0);
      blocks.push_back(std::move(b));
      continue;
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase fix: fold the phases of diag(R) into Q so R has a positive
    // diagonal; this makes the draw Haar and the factor unique.
    for (int c = 0; c < k; ++c) {
      const Complex d = r(c, c);
      const double ad = std::abs(d);
      q.col(c) *= (ad > 0.0) ? d / ad : Complex(1.0, 0.0);
    }
    blocks.push_back(std::move(q));
  }
  return AlgElem(shape, std::move(blocks));
}

}  // namespace nchad
