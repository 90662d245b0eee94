#include "rigidlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rigidlab/errors.hpp"

namespace rigidlab {

SymMatrix::SymMatrix(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("SymMatrix: matrix is not square");
  if (a.rows() == 0) throw InvalidInput("SymMatrix: order must be positive");
  a_ = (a + a.transpose()) * 0.5;
}

SymMatrix SymMatrix::zeros(Index order) {
  if (order <= 0) throw InvalidInput("SymMatrix: order must be positive");
  return SymMatrix(Matrix::Zero(order, order), Trusted{});
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Applies the rotation J(p, q) from both sides: A <- J^T A J, V <- V J.
void rotate(Matrix& a, Matrix& v, Index p, Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Off-diagonal entries of rows/columns p and q; the diagonal pair uses the
  // closed-form update, which is exact when the rotation diagonalizes a 2x2.
  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

void fix_sign(Eigen::Ref<Vector> column) {
  Index best = 0;
  for (Index i = 1; i < column.size(); ++i)
    if (std::abs(column(i)) > std::abs(column(best))) best = i;
  if (column(best) < 0.0) column = -column;
}

}  // namespace

Spectrum eigh(const SymMatrix& a, const JacobiOptions& options) {
  if (!a.dense().allFinite()) throw InvalidInput("eigh: matrix has non-finite entries");

  const Index n = a.order();
  Matrix work = a.dense();
  Matrix v = Matrix::Identity(n, n);
  const double threshold = options.relative_tolerance * work.norm();

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(work) <= threshold) break;
    for (Index p = 0; p + 1 < n; ++p)
      for (Index q = p + 1; q < n; ++q) rotate(work, v, p, q);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return work(x, x) < work(y, y); });

  Spectrum out{Vector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = work(src, src);
    out.vectors.col(k) = v.col(src);
    fix_sign(out.vectors.col(k));
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Orthonormalized orthonormalize_tracked(std::span<const Vector> vectors, double tol) {
  Orthonormalized out;
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    const Vector& original = vectors[idx];
    Vector w = original;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& b : out.basis) w -= b.dot(w) * b;
    const double residual = w.norm();
    if (residual <= tol * (1.0 + original.norm())) continue;
    out.basis.push_back(w / residual);
    out.kept.push_back(idx);
  }
  return out;
}

std::vector<Vector> orthonormalize(std::span<const Vector> vectors, double tol) {
  return orthonormalize_tracked(vectors, tol).basis;
}

Vector project_out(const Vector& v, std::span<const Vector> basis) {
  Vector w = v;
  for (const Vector& b : basis) w -= b.dot(w) * b;
  return w;
}

std::vector<Vector> complement_basis(std::span<const Vector> basis, Index dim, double tol) {
  std::vector<Vector> candidates(basis.begin(), basis.end());
  for (const Vector& b : candidates)
    if (b.size() != dim) throw InvalidInput("complement_basis: vector length mismatch");
  const std::size_t leading = candidates.size();
  for (Index k = 0; k < dim; ++k) candidates.push_back(Vector::Unit(dim, k));

  const Orthonormalized ortho = orthonormalize_tracked(candidates, tol);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < ortho.basis.size(); ++i)
    if (ortho.kept[i] >= leading) out.push_back(ortho.basis[i]);
  return out;
}

Matrix as_columns(std::span<const Vector> vectors, Index rows) {
  Matrix out(rows, static_cast<Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) out.col(static_cast<Index>(k)) = vectors[k];
  return out;
}

RayleighMinimum min_rayleigh_pair(const SymMatrix& a, std::span<const Vector> constraint_basis) {
  const Index n = a.order();
  const std::vector<Vector> free = complement_basis(constraint_basis, n);
  if (free.empty()) throw InvalidInput("min_rayleigh: constraints span the whole space");

  const Matrix b = as_columns(free, n);
  const Spectrum s = eigh(SymMatrix(b.transpose() * a.dense() * b));
  Vector u = b * s.vectors.col(0);
  u.normalize();
  return {s.values(0), std::move(u)};
}

double min_rayleigh(const SymMatrix& a, std::span<const Vector> constraint_basis) {
  return min_rayleigh_pair(a, constraint_basis).value;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace rigidlab
