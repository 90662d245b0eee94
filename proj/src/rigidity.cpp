#include "rigidlab/rigidity.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/SVD>

#include "rigidlab/errors.hpp"

namespace rigidlab {

Configuration::Configuration(Matrix positions) : m_(std::move(positions)) {
  if (m_.cols() < 1) throw InvalidInput("configuration: dimension must be at least 1");
  if (!m_.allFinite()) throw InvalidInput("configuration: non-finite coordinate");
}

Configuration Configuration::from_stacked(const Vector& p, Index d) {
  if (d < 1) throw InvalidInput("configuration: dimension must be at least 1");
  if (p.size() % d != 0) throw InvalidInput("configuration: length is not a multiple of d");
  const Index n = p.size() / d;
  Matrix m(n, d);
  for (Index i = 0; i < n; ++i) m.row(i) = p.segment(i * d, d).transpose();
  return Configuration(std::move(m));
}

Vector Configuration::stacked() const {
  const Index n = size();
  const Index d = dim();
  Vector p(n * d);
  for (Index i = 0; i < n; ++i) p.segment(i * d, d) = m_.row(i).transpose();
  return p;
}

AffineHull affine_dim(const Configuration& config, double tol) {
  AffineHull hull;
  if (config.size() == 0) return hull;

  const Matrix& m = config.positions();
  const Matrix centered = m.rowwise() - m.colwise().mean();
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  const double cutoff = tol * (1.0 + (sigma.size() > 0 ? sigma(0) : 0.0));
  for (Index k = 0; k < sigma.size(); ++k)
    if (sigma(k) > cutoff) ++hull.m;

  if (hull.m == 1) {
    Vector x = svd.matrixV().col(0);
    for (Index k = 0; k < x.size(); ++k) {
      if (std::abs(x(k)) > 1e-12) {
        if (x(k) < 0.0) x = -x;
        break;
      }
    }
    hull.line_direction = x / x.norm();
  }
  return hull;
}

Index trivial_dimension(Index d, Index m) { return (m + 1) * (2 * d - m) / 2; }

Framework::Framework(Graph graph, Configuration config, FrameworkOptions options)
    : graph_(std::move(graph)), config_(std::move(config)), options_(options) {
  if (config_.size() != graph_.vertex_count())
    throw InvalidInput("framework: configuration has " + std::to_string(config_.size()) +
                       " points but the graph has " + std::to_string(graph_.vertex_count()) +
                       " vertices");
  hull_ = affine_dim(config_, options_.affine_tolerance);
  trivial_dim_ = trivial_dimension(config_.dim(), hull_.m);
  const double max_norm =
      config_.size() > 0 ? config_.positions().rowwise().norm().maxCoeff() : 0.0;
  coincidence_scale_ = options_.coincidence_tolerance * (1.0 + max_norm);
}

bool Framework::coincident(Index i, Index j) const {
  return (config_.positions().row(i) - config_.positions().row(j)).norm() <= coincidence_scale_;
}

Vector Framework::edge_direction(Index i, Index j) const {
  const Vector diff = config_.point(i) - config_.point(j);
  if (!coincident(i, j)) return diff / diff.norm();
  if (hull_.m == 1) return *hull_.line_direction;
  return Vector::Zero(dim());
}

Framework Framework::rotated(const Matrix& q) const {
  if (q.rows() != dim() || q.cols() != dim())
    throw InvalidInput("framework: rotation has the wrong shape");
  return Framework(graph_, Configuration(config_.positions() * q.transpose()), options_);
}

Matrix rigidity_matrix(const Framework& fw) {
  const Index d = fw.dim();
  const auto& edges = fw.graph().edges();
  Matrix r = Matrix::Zero(static_cast<Index>(edges.size()), d * fw.vertex_count());
  for (std::size_t row = 0; row < edges.size(); ++row) {
    const Edge& e = edges[row];
    const Vector delta = fw.edge_direction(e.i, e.j);
    r.block(static_cast<Index>(row), e.i * d, 1, d) = delta.transpose();
    r.block(static_cast<Index>(row), e.j * d, 1, d) = -delta.transpose();
  }
  return r;
}

SymMatrix stiffness_matrix(const Framework& fw) {
  const Index d = fw.dim();
  Matrix l = Matrix::Zero(d * fw.vertex_count(), d * fw.vertex_count());
  for (const Edge& e : fw.graph().edges()) {
    const Vector delta = fw.edge_direction(e.i, e.j);
    const Matrix outer = delta * delta.transpose();
    l.block(e.i * d, e.j * d, d, d) -= outer;
    l.block(e.j * d, e.i * d, d, d) -= outer;
    l.block(e.i * d, e.i * d, d, d) += outer;
    l.block(e.j * d, e.j * d, d, d) += outer;
  }
  return SymMatrix(l);
}

TrivialBasis trivial_basis(const Framework& fw) {
  const Index d = fw.dim();
  const Index n = fw.vertex_count();
  const Matrix& m = fw.config().positions();
  // Rotations about the centroid differ from rotations about the origin by a
  // translation, so the span is unchanged. All rotation generators share one
  // scale so a generator that vanishes up to rounding stays small enough to be
  // dropped.
  const Matrix centered = m.rowwise() - m.colwise().mean();
  const double scale = centered.norm();

  std::vector<Vector> generators;
  std::vector<TrivialGenerator> labels;
  for (Index k = 0; k < d; ++k) {
    Vector t = Vector::Zero(d * n);
    for (Index i = 0; i < n; ++i) t(i * d + k) = 1.0;
    generators.push_back(t / std::sqrt(static_cast<double>(n)));
    labels.push_back({TrivialGenerator::Kind::translation, k, -1});
  }
  for (Index k = 0; k < d; ++k) {
    for (Index l = k + 1; l < d; ++l) {
      // (A_kl p_i) has +p_i[l] in coordinate k and -p_i[k] in coordinate l.
      Vector r = Vector::Zero(d * n);
      for (Index i = 0; i < n; ++i) {
        r(i * d + k) = centered(i, l);
        r(i * d + l) = -centered(i, k);
      }
      if (scale > 0.0) r /= scale;
      generators.push_back(std::move(r));
      labels.push_back({TrivialGenerator::Kind::rotation, k, l});
    }
  }

  Orthonormalized ortho = orthonormalize_tracked(generators);
  if (static_cast<Index>(ortho.basis.size()) != fw.trivial_dim())
    throw InternalError("trivial_basis: orthonormalization kept " +
                        std::to_string(ortho.basis.size()) + " vectors, expected D = " +
                        std::to_string(fw.trivial_dim()));
  TrivialBasis out;
  out.vectors = std::move(ortho.basis);
  for (std::size_t idx : ortho.kept) out.provenance.push_back(labels[idx]);
  return out;
}

double rigidity_eigenvalue(const Framework& fw, const Spectrum& stiffness_spectrum) {
  const Index dim = fw.dim() * fw.vertex_count();
  const Index big_d = fw.trivial_dim();
  if (dim <= big_d)
    throw InvalidInput("rigidity_eigenvalue: dn = " + std::to_string(dim) +
                       " leaves no eigenvalue above D = " + std::to_string(big_d));
  return stiffness_spectrum.lambda(big_d + 1);
}

double rigidity_eigenvalue(const Framework& fw) {
  const Index dim = fw.dim() * fw.vertex_count();
  if (dim <= fw.trivial_dim())
    throw InvalidInput("rigidity_eigenvalue: dn = " + std::to_string(dim) +
                       " leaves no eigenvalue above D = " + std::to_string(fw.trivial_dim()));
  return rigidity_eigenvalue(fw, eigh(stiffness_matrix(fw)));
}

bool is_infinitesimally_rigid(const Framework& fw, double tol) {
  return rigidity_eigenvalue(fw) > tol;
}

}  // namespace rigidlab
