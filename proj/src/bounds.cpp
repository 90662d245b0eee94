#include "rigidlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rigidlab/errors.hpp"

namespace rigidlab {

BoundReport BoundReport::inequality(std::string name, double lhs, double rhs, double tol) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tol = tol;
  r.holds = r.margin >= -tol;
  return r;
}

BoundReport BoundReport::residual(std::string name, double residual, double allowed) {
  return inequality(std::move(name), residual, allowed, 0.0);
}

BoundReport BoundReport::skip(std::string name, std::string reason) {
  BoundReport r;
  r.name = std::move(name);
  r.skipped = true;
  r.holds = true;
  r.context["skip_reason"] = std::move(reason);
  return r;
}

namespace {

void add_framework_context(BoundReport& r, const Framework& fw) {
  r.context["d"] = static_cast<long long>(fw.dim());
  r.context["n"] = static_cast<long long>(fw.vertex_count());
  r.context["m"] = static_cast<long long>(fw.affine_dimension());
  r.context["D"] = static_cast<long long>(fw.trivial_dim());
}

// Largest distance from a lifted eigenvector to the matching eigenspace of L,
// over every nonzero eigenvalue cluster of the Laplacian.
double lifted_eigenvector_residual(const Spectrum& stiff, const Spectrum& lap, const Vector& x,
                                   Index zeros, long long& clusters) {
  const Index n = lap.size();
  const double gap = 1e-6;
  double worst = 0.0;
  clusters = 0;
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && lap.values(stop) - lap.values(stop - 1) <= gap * (1.0 + std::abs(lap.values(stop))))
      ++stop;
    if (lap.values(start) > gap) {
      ++clusters;
      const Matrix u = stiff.vectors.middleCols(zeros + start, stop - start);
      for (Index i = start; i < stop; ++i) {
        const Vector w = kron(lap.vectors.col(i), x);
        worst = std::max(worst, (w - u * (u.transpose() * w)).norm());
      }
    }
    start = stop;
  }
  return worst;
}

}  // namespace

std::vector<BoundReport> lemma1_check(const Framework& fw, const CheckTolerances& tol) {
  const Index m = fw.affine_dimension();
  if (m > 1)
    throw InvalidInput("lemma1_check: affine dimension " + std::to_string(m) +
                       " exceeds 1; the points do not lie on a line");
  if (m == 0) {
    const std::string reason =
        "affine dimension 0: no spanning direction, every edge direction is zero";
    std::vector<BoundReport> out{BoundReport::skip("lemma1.identity", reason),
                                 BoundReport::skip("lemma1.spectrum", reason),
                                 BoundReport::skip("lemma1.eigenvectors", reason)};
    for (auto& r : out) add_framework_context(r, fw);
    return out;
  }

  const Vector& x = *fw.line_direction();
  const Index n = fw.vertex_count();
  const Index d = fw.dim();
  const SymMatrix stiff = stiffness_matrix(fw);
  const SymMatrix lap = laplacian(fw.graph());

  const Matrix expected = kron(lap.dense(), x * x.transpose());
  BoundReport identity =
      BoundReport::residual("lemma1.identity", max_abs(stiff.dense() - expected), tol.identity);

  const Spectrum s_stiff = eigh(stiff);
  const Spectrum s_lap = eigh(lap);
  const Index zeros = (d - 1) * n;
  double zero_dev = 0.0;
  for (Index k = 0; k < zeros; ++k) zero_dev = std::max(zero_dev, std::abs(s_stiff.values(k)));
  double shift_dev = 0.0;
  for (Index i = 0; i < n; ++i)
    shift_dev = std::max(shift_dev, std::abs(s_stiff.values(zeros + i) - s_lap.values(i)));
  BoundReport spectrum =
      BoundReport::residual("lemma1.spectrum", std::max(zero_dev, shift_dev), tol.spectrum);
  spectrum.context["z"] = static_cast<long long>(zeros);
  spectrum.context["zero_deviation"] = zero_dev;
  spectrum.context["shift_deviation"] = shift_dev;

  long long clusters = 0;
  const double vec_dev = lifted_eigenvector_residual(s_stiff, s_lap, x, zeros, clusters);
  BoundReport vectors = BoundReport::residual("lemma1.eigenvectors", vec_dev, tol.eigenvector);
  vectors.context["clusters"] = clusters;

  std::vector<BoundReport> out{std::move(identity), std::move(spectrum), std::move(vectors)};
  for (auto& r : out) add_framework_context(r, fw);
  return out;
}

BoundReport lemma2_check(const Framework& fw, const Vector& x, const Vector& v,
                         const CheckTolerances& tol) {
  if (x.size() != fw.dim()) throw InvalidInput("lemma2_check: x has the wrong dimension");
  if (v.size() != fw.vertex_count()) throw InvalidInput("lemma2_check: v has the wrong length");
  if (std::abs(x.norm() - 1.0) > 1e-9) throw InvalidInput("lemma2_check: x must be a unit vector");

  const Vector u = kron(v, x);
  const double lhs = u.dot(stiffness_matrix(fw).dense() * u);
  const double rhs = v.dot(laplacian(fw.graph()).dense() * v);

  bool aligned = true;
  for (const Edge& e : fw.graph().edges()) {
    const Vector delta = fw.edge_direction(e.i, e.j);
    const double c = x.dot(delta);
    if (std::abs(delta.norm() - 1.0) > 1e-9 || 1.0 - c * c > 1e-9) {
      aligned = false;
      break;
    }
  }

  BoundReport r = BoundReport::inequality("lemma2", lhs, rhs, tol.inequality);
  const bool equality = std::abs(rhs - lhs) <= tol.equality;
  r.context["equality"] = equality;
  r.context["aligned_edges"] = aligned;
  r.context["equality_matches_alignment"] = equality == aligned;
  add_framework_context(r, fw);
  return r;
}

std::vector<BoundReport> jordan_bound_check(const Framework& fw, const CheckTolerances& tol) {
  const Index d = fw.dim();
  const Spectrum s_stiff = eigh(stiffness_matrix(fw));
  const Spectrum s_lap = eigh(laplacian(fw.graph()));
  std::vector<BoundReport> out;
  out.reserve(static_cast<std::size_t>(s_stiff.size()));
  for (Index k = 1; k <= s_stiff.size(); ++k) {
    const Index index = (k + d - 1) / d;
    BoundReport r = BoundReport::inequality("jordan", s_stiff.lambda(k), s_lap.lambda(index),
                                            tol.inequality);
    r.context["k"] = static_cast<long long>(k);
    r.context["laplacian_index"] = static_cast<long long>(index);
    add_framework_context(r, fw);
    out.push_back(std::move(r));
  }
  return out;
}

Index ceiling_index(Index d, Index m) {
  if (d < 1) throw InvalidInput("ceiling_index: d must be at least 1");
  if (m < 1 || m > d) throw InvalidInput("ceiling_index: requires 1 <= m <= d");
  const Index big_d = trivial_dimension(d, m);
  const Index direct = (big_d + 1 + d - 1) / d;
  // ceil(m + 1 - (C(m+1, 2) - 1)/d) = m + 1 - floor((C(m+1, 2) - 1)/d)
  const Index binomial = m * (m + 1) / 2;
  const Index rewritten = m + 1 - (binomial - 1) / d;
  if (direct != rewritten)
    throw InternalError("ceiling_index: closed forms disagree for d = " + std::to_string(d) +
                        ", m = " + std::to_string(m));
  return direct;
}

LewBounds lew_bounds(Index n, Index d) {
  if (d < 2) throw OutOfDomain("lew_bounds: requires d >= 2");
  if (n < 2 * d) throw OutOfDomain("lew_bounds: requires n >= 2d");
  const Index lower = (n + 2 * d - 1) / (2 * d) - 2 * d + 1;
  const double upper =
      static_cast<double>(2 * n + (d - 1)) / static_cast<double>(3 * (d - 1));
  return {static_cast<double>(lower), upper};
}

BoundReport theorem_check(const Framework& fw, const CheckTolerances& tol) {
  const double lhs = rigidity_eigenvalue(fw);
  const double rhs = algebraic_connectivity(fw.graph()).value;
  BoundReport r = BoundReport::inequality("theorem", lhs, rhs, tol.inequality);
  add_framework_context(r, fw);
  return r;
}

WitnessRotation witness_rotation(const Framework& fw) {
  const Index d = fw.dim();
  if (d < 1) throw InvalidInput("witness_rotation: d must be at least 1");

  WitnessRotation w;
  w.fiedler = algebraic_connectivity(fw.graph()).fiedler;
  w.lifted = kron(w.fiedler, Vector::Unit(d, 0));

  const Matrix& m = fw.config().positions();
  const Vector y = m.transpose() * w.fiedler;
  if (y.norm() <= 1e-12 * (1.0 + m.norm())) {
    w.rotation = Matrix::Identity(d, d);
    w.degenerate = true;
    return w;
  }

  std::vector<Vector> candidates{y / y.norm()};
  for (Index k = 0; k < d; ++k) candidates.push_back(Vector::Unit(d, k));
  const std::vector<Vector> rows = orthonormalize(candidates);
  if (static_cast<Index>(rows.size()) != d)
    throw InternalError("witness_rotation: orthonormal completion failed");

  w.rotation.resize(d, d);
  for (Index l = 0; l < d; ++l) w.rotation.row(l) = rows[static_cast<std::size_t>(l)].transpose();
  if (w.rotation.determinant() < 0.0) w.rotation.row(d - 1) *= -1.0;
  return w;
}

std::vector<BoundReport> witness_verify(const Framework& fw, const CheckTolerances& tol) {
  const WitnessRotation w = witness_rotation(fw);
  const Framework rotated = fw.rotated(w.rotation);
  const double lambda2 = algebraic_connectivity(fw.graph()).value;

  const TrivialBasis basis = trivial_basis(rotated);
  double worst_inner = 0.0;
  for (const Vector& b : basis.vectors) worst_inner = std::max(worst_inner, std::abs(w.lifted.dot(b)));
  BoundReport orth = BoundReport::residual("witness.orthogonality", worst_inner, tol.orthogonality);

  const SymMatrix stiff_rot = stiffness_matrix(rotated);
  const double rayleigh = w.lifted.dot(stiff_rot.dense() * w.lifted) / w.lifted.squaredNorm();
  BoundReport quotient =
      BoundReport::inequality("witness.rayleigh", rayleigh, lambda2, tol.inequality);
  quotient.context["equality"] = std::abs(lambda2 - rayleigh) <= tol.equality;

  const Spectrum s_rot = eigh(stiff_rot);
  BoundReport eigen = BoundReport::inequality(
      "witness.rigidity_eigenvalue", rigidity_eigenvalue(rotated, s_rot), lambda2, tol.inequality);

  const Spectrum s_orig = eigh(stiffness_matrix(fw));
  const double drift = (s_rot.values - s_orig.values).cwiseAbs().maxCoeff();
  BoundReport invariance = BoundReport::residual("witness.rotation_invariance", drift, tol.spectrum);

  const double det_error = std::abs(w.rotation.determinant() - 1.0);
  const double orth_error =
      max_abs(w.rotation.transpose() * w.rotation - Matrix::Identity(fw.dim(), fw.dim()));

  std::vector<BoundReport> out{std::move(orth), std::move(quotient), std::move(eigen),
                               std::move(invariance)};
  for (auto& r : out) {
    add_framework_context(r, fw);
    r.context["degenerate"] = w.degenerate;
    r.context["det_error"] = det_error;
    r.context["orthogonality_error"] = orth_error;
  }
  return out;
}

bool all_hold(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.holds; });
}

}  // namespace rigidlab
