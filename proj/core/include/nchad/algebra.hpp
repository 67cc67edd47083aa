#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nchad/errors.hpp"

namespace nchad {

using Complex = std::complex<double>;

// Default absolute tolerance on operator-norm residuals. Inputs are
// O(1)-normalized unitaries, so double precision leaves ample headroom.
inline constexpr double kDefaultTol = 1e-9;

// Shape of a finite-dimensional C*-algebra: a direct sum of full matrix
// blocks ("fibers"), one per point of the finite index set. The scalar
// algebra is the single fiber of dimension 1.
class AlgebraShape {
public:
  explicit AlgebraShape(std::vector<int> fibers);

  static AlgebraShape scalar() { return AlgebraShape({1}); }

  int fiberCount() const noexcept { return static_cast<int>(fibers_.size()); }
  int fiberDim(int x) const { return fibers_.at(static_cast<std::size_t>(x)); }
  const std::vector<int>& fibers() const noexcept { return fibers_; }
  int totalDim() const noexcept;
  bool allScalar() const noexcept;

  bool operator==(const AlgebraShape&) const = default;

  std::string str() const;  // "[1,2]"

private:
  std::vector<int> fibers_;
};

// One element of the algebra, stored fiber-by-fiber as dense complex blocks.
// Values are immutable in spirit: every operation returns a fresh element.
class AlgElem {
public:
  AlgElem(AlgebraShape shape, std::vector<Eigen::MatrixXcd> blocks);

  static AlgElem zero(const AlgebraShape& shape);
  static AlgElem identity(const AlgebraShape& shape);
  static AlgElem scalar(const AlgebraShape& shape, Complex lambda);

  const AlgebraShape& shape() const noexcept { return shape_; }
  const Eigen::MatrixXcd& block(int x) const { return blocks_.at(static_cast<std::size_t>(x)); }
  Eigen::MatrixXcd& block(int x) { return blocks_.at(static_cast<std::size_t>(x)); }

  AlgElem adjoint() const;

  // Exact C*-norm: the largest singular value over all fibers.
  double opNorm() const;
  // Squared Frobenius norm summed over fibers (smooth, used by optimizers).
  double frobNormSq() const;

  // Uniform average of normalized fiber traces; 1 on the identity.
  Complex normalizedTrace() const;

  // max over fibers of max(||bb*-1||, ||b*b-1||)
  double unitarityResidual() const;
  bool isUnitary(double tol) const { return unitarityResidual() <= tol; }

  // operator-norm distance to the nearest scalar-per-fiber element
  double centralityResidual() const;
  bool isCentral(double tol) const { return centralityResidual() <= tol; }

  AlgElem& operator+=(const AlgElem& rhs);
  AlgElem& operator-=(const AlgElem& rhs);
  AlgElem operator-() const;

  friend AlgElem operator+(AlgElem lhs, const AlgElem& rhs) { return lhs += rhs; }
  friend AlgElem operator-(AlgElem lhs, const AlgElem& rhs) { return lhs -= rhs; }
  friend AlgElem operator*(const AlgElem& lhs, const AlgElem& rhs);
  friend AlgElem operator*(Complex lambda, const AlgElem& rhs);

private:
  AlgebraShape shape_;
  std::vector<Eigen::MatrixXcd> blocks_;

  void requireSameShape(const AlgElem& other) const;
};

// ||ab - ba||, 0 iff the two elements commute
double commutatorResidual(const AlgElem& a, const AlgElem& b);

// ||a - b||
double opDistance(const AlgElem& a, const AlgElem& b);

// Haar-distributed unitary, one independent draw per fiber. Deterministic
// for a fixed seed: the generator state is private to the call and the
// QR phase fix (positive diagonal of R) makes the factor unique.
AlgElem randomUnitary(const AlgebraShape& shape, std::uint64_t seed);

// Gaussian element (independent standard complex entries per fiber);
// test and search scaffolding.
AlgElem randomGaussian(const AlgebraShape& shape, std::uint64_t seed);

namespace detail {

// SplitMix64; used to derive independent per-fiber and per-restart seeds.
std::uint64_t mixSeed(std::uint64_t state);

// Deterministic standard-normal source on top of std::mt19937_64
// (Box-Muller over uniform bits, so the stream is identical across
// standard libraries).
class NormalSource {
public:
  explicit NormalSource(std::uint64_t seed) : gen_(seed) {}
  double next();

private:
  std::mt19937_64 gen_;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace detail

}  // namespace nchad
