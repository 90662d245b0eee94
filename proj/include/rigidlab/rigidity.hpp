#pragma once

#include <optional>
#include <vector>

#include "rigidlab/graph.hpp"
#include "rigidlab/linalg.hpp"

namespace rigidlab {

/// Positions of n points in R^d. Row i of positions() is p_i; stacked() is
/// the vector p in R^{dn} with p_i in entries [i*d, i*d + d).
class Configuration {
 public:
  /// Throws InvalidInput for d < 1 or non-finite coordinates.
  explicit Configuration(Matrix positions);
  static Configuration from_stacked(const Vector& p, Index d);

  Index dim() const noexcept { return m_.cols(); }
  Index size() const noexcept { return m_.rows(); }
  const Matrix& positions() const noexcept { return m_; }
  Vector point(Index i) const { return m_.row(i).transpose(); }
  Vector stacked() const;

 private:
  Matrix m_;
};

struct AffineHull {
  Index m = 0;
  /// Unit direction of the spanning line, only when m == 1. Sign fixed so the
  /// first nonzero coordinate is positive.
  std::optional<Vector> line_direction;
};

inline constexpr double kAffineTolerance = 1e-9;
inline constexpr double kCoincidenceTolerance = 1e-12;

/// Affine-hull dimension: the number of singular values of the centered
/// position matrix above tol * (1 + largest singular value).
AffineHull affine_dim(const Configuration& config, double tol = kAffineTolerance);

/// Dimension of the rigid-motion manifold, (m + 1)(2d - m) / 2.
Index trivial_dimension(Index d, Index m);

struct FrameworkOptions {
  double affine_tolerance = kAffineTolerance;
  double coincidence_tolerance = kCoincidenceTolerance;
};

/// A graph realized in R^d, with its affine dimension and the derived D.
class Framework {
 public:
  /// Throws InvalidInput if the configuration has a different number of
  /// points than the graph has vertices.
  Framework(Graph graph, Configuration config, FrameworkOptions options = {});

  const Graph& graph() const noexcept { return graph_; }
  const Configuration& config() const noexcept { return config_; }
  const FrameworkOptions& options() const noexcept { return options_; }
  Index dim() const noexcept { return config_.dim(); }
  Index vertex_count() const noexcept { return config_.size(); }
  Index affine_dimension() const noexcept { return hull_.m; }
  Index trivial_dim() const noexcept { return trivial_dim_; }
  const std::optional<Vector>& line_direction() const noexcept { return hull_.line_direction; }

  /// ||p_i - p_j|| <= tol * (1 + max_k ||p_k||).
  bool coincident(Index i, Index j) const;

  /// The edge-direction vector for the ordered pair (i, j):
  /// (p_i - p_j)/||p_i - p_j|| for distinct points, the line direction for
  /// coincident points on a line (m == 1), zero otherwise.
  Vector edge_direction(Index i, Index j) const;

  /// Framework with every point replaced by q * p_i.
  Framework rotated(const Matrix& q) const;

 private:
  Graph graph_;
  Configuration config_;
  FrameworkOptions options_;
  AffineHull hull_;
  Index trivial_dim_ = 0;
  double coincidence_scale_ = 0.0;
};

/// |E| x dn normalized rigidity matrix; row e carries +delta in block i and
/// -delta in block j for edge e = {i, j}, i < j.
Matrix rigidity_matrix(const Framework& fw);

/// R^T R, assembled from the d x d blocks B_ij = -delta delta^T and
/// B_ii = -sum_{j != i} B_ij.
SymMatrix stiffness_matrix(const Framework& fw);

struct TrivialGenerator {
  enum class Kind { translation, rotation };
  Kind kind = Kind::translation;
  Index k = 0;   // translation axis, or first axis of the rotation plane
  Index l = -1;  // second axis of the rotation plane
};

/// Orthonormal basis of the trivial-motion subspace T(p).
struct TrivialBasis {
  std::vector<Vector> vectors;
  std::vector<TrivialGenerator> provenance;  // generator behind each vector
};

/// Orthonormalizes the d translations 1 (x) e_k and the d(d-1)/2 rotations
/// (I (x) A_kl) p. Throws InternalError if the result does not have D vectors.
TrivialBasis trivial_basis(const Framework& fw);

/// lambda_{D+1} of the stiffness matrix. Throws InvalidInput when dn <= D.
double rigidity_eigenvalue(const Framework& fw);
double rigidity_eigenvalue(const Framework& fw, const Spectrum& stiffness_spectrum);

inline constexpr double kRigidityTolerance = 1e-8;

bool is_infinitesimally_rigid(const Framework& fw, double tol = kRigidityTolerance);

}  // namespace rigidlab
