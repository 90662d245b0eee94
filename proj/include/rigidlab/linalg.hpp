#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rigidlab {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real symmetric matrix.
///
/// The constructor replaces the input by (A + A^T) / 2, so A(i, j) and
/// A(j, i) are bit-identical afterwards. Throws InvalidInput for non-square
/// or empty input.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& a);

  static SymMatrix zeros(Index order);

  Index order() const noexcept { return a_.rows(); }
  const Matrix& dense() const noexcept { return a_; }
  double operator()(Index i, Index j) const { return a_(i, j); }

 private:
  struct Trusted {};
  SymMatrix(Matrix a, Trusted) : a_(std::move(a)) {}

  Matrix a_;
};

/// Ascending eigenvalues with orthonormal eigenvectors; column k of `vectors`
/// belongs to `values[k]`.
struct Spectrum {
  Vector values;
  Matrix vectors;

  Index size() const noexcept { return values.size(); }
  /// 1-based positional access, matching the usual lambda_k notation.
  double lambda(Index k) const { return values(k - 1); }
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;  // stop when off(A) <= tol * ||A||_F
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition. Eigenvectors are sign-normalized so the
/// largest-magnitude entry is positive; the ascending sort is stable.
/// Throws InvalidInput on non-finite entries.
Spectrum eigh(const SymMatrix& a, const JacobiOptions& options = {});

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

inline constexpr double kDefaultDropTolerance = 1e-9;

struct Orthonormalized {
  std::vector<Vector> basis;
  std::vector<std::size_t> kept;  // input index each basis vector came from
};

/// Modified Gram-Schmidt with one re-orthogonalization pass. A vector is
/// dropped when its residual norm is <= tol * (1 + its original norm).
Orthonormalized orthonormalize_tracked(std::span<const Vector> vectors,
                                       double tol = kDefaultDropTolerance);

std::vector<Vector> orthonormalize(std::span<const Vector> vectors,
                                   double tol = kDefaultDropTolerance);

/// v minus its projection onto span(basis); basis must be orthonormal.
Vector project_out(const Vector& v, std::span<const Vector> basis);

/// Orthonormal basis of the orthogonal complement of span(basis) in R^dim,
/// obtained by continuing Gram-Schmidt over the standard basis vectors.
std::vector<Vector> complement_basis(std::span<const Vector> basis, Index dim,
                                     double tol = kDefaultDropTolerance);

/// Stacks basis vectors as matrix columns.
Matrix as_columns(std::span<const Vector> vectors, Index rows);

struct RayleighMinimum {
  double value = 0.0;
  Vector argmin;  // unit vector attaining the minimum
};

/// Minimum of u^T A u / u^T u over nonzero u orthogonal to every constraint
/// vector, by eigendecomposition of the compression B^T A B onto an
/// orthonormal basis B of the complement. Throws InvalidInput when the
/// constraints span the whole space.
RayleighMinimum min_rayleigh_pair(const SymMatrix& a, std::span<const Vector> constraint_basis);

double min_rayleigh(const SymMatrix& a, std::span<const Vector> constraint_basis);

double max_abs(const Matrix& a);

}  // namespace rigidlab
