#include "rigidlab/optimizer.hpp"

#include <cmath>
#include <random>
#include <string>

#include "rigidlab/errors.hpp"

namespace rigidlab {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw InvalidInput("optimizer: restarts must be at least 1");
  if (max_iters < 1) throw InvalidInput("optimizer: max_iters must be at least 1");
  if (stall_iters < 1) throw InvalidInput("optimizer: stall_iters must be at least 1");
  if (!(fd_step > 0.0) || !(initial_step > 0.0) || !(min_step > 0.0) ||
      !(stall_tolerance > 0.0) || !(simple_gap > 0.0))
    throw InvalidInput("optimizer: step sizes and tolerances must be positive");
  if (min_step > initial_step) throw InvalidInput("optimizer: min_step exceeds initial_step");
}

namespace {

struct Evaluation {
  double value = 0.0;
  Index trivial_dim = 0;
  Spectrum spectrum;
};

Evaluation evaluate(const Graph& g, const Vector& p, Index d) {
  const Framework fw(g, Configuration::from_stacked(p, d));
  Evaluation e;
  e.spectrum = eigh(stiffness_matrix(fw));
  e.trivial_dim = fw.trivial_dim();
  e.value = rigidity_eigenvalue(fw, e.spectrum);
  return e;
}

bool is_simple(const Evaluation& e, double gap) {
  const Index k = e.trivial_dim;  // 0-based position of lambda_{D+1}
  const Vector& v = e.spectrum.values;
  if (k > 0 && v(k) - v(k - 1) <= gap) return false;
  if (k + 1 < v.size() && v(k + 1) - v(k) <= gap) return false;
  return true;
}

bool has_coincident_edge(const Graph& g, const Vector& p, Index d) {
  const Framework fw(g, Configuration::from_stacked(p, d));
  for (const Edge& e : g.edges())
    if (fw.coincident(e.i, e.j)) return true;
  return false;
}

// First-order perturbation: d lambda = u^T dL u with u the unit eigenvector.
// For one edge, u^T L_e u = c^2 with c = delta . (u_i - u_j), and
// d delta / d e = (I - delta delta^T) / |e|.
Vector analytic_gradient(const Graph& g, const Vector& p, Index d, const Evaluation& e) {
  const Vector u = e.spectrum.vectors.col(e.trivial_dim);
  Vector grad = Vector::Zero(p.size());
  for (const Edge& edge : g.edges()) {
    const Vector diff = p.segment(edge.i * d, d) - p.segment(edge.j * d, d);
    const double len = diff.norm();
    const Vector delta = diff / len;
    const Vector w = u.segment(edge.i * d, d) - u.segment(edge.j * d, d);
    const double c = delta.dot(w);
    const Vector contrib = (2.0 * c / len) * (w - c * delta);
    grad.segment(edge.i * d, d) += contrib;
    grad.segment(edge.j * d, d) -= contrib;
  }
  return grad;
}

Vector fd_gradient(const Graph& g, const Vector& p, Index d, double rel_step) {
  const double h = rel_step * std::max(1.0, p.cwiseAbs().maxCoeff());
  Vector grad(p.size());
  Vector probe = p;
  for (Index k = 0; k < p.size(); ++k) {
    probe(k) = p(k) + h;
    const double up = objective(g, probe, d);
    probe(k) = p(k) - h;
    const double down = objective(g, probe, d);
    probe(k) = p(k);
    grad(k) = (up - down) / (2.0 * h);
  }
  return grad;
}

std::optional<Vector> gradient_at(const Graph& g, const Vector& p, Index d, GradientMode mode,
                                  const OptimizerConfig& cfg, const Evaluation& e) {
  if (!is_simple(e, cfg.simple_gap)) return std::nullopt;
  if (mode == GradientMode::analytic) return analytic_gradient(g, p, d, e);
  return fd_gradient(g, p, d, cfg.fd_step);
}

// Moves p off coincident edge endpoints by a fixed pseudo-random offset.
std::optional<Vector> separate_coincident(const Graph& g, const Vector& p, Index d) {
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Vector offset(p.size());
    for (Index k = 0; k < offset.size(); ++k) offset(k) = normal(rng);
    const Vector moved = p + (1e-6 * scale / offset.norm()) * offset;
    if (!has_coincident_edge(g, moved, d)) return moved;
  }
  return std::nullopt;
}

struct AscentOutcome {
  Vector p;
  double value = 0.0;
  int iterations = 0;
};

// Objective value at the first improving coordinate move, trying +step then
// -step along each axis in index order.
bool coordinate_move(const Graph& g, Vector& p, double& value, Index d, double step) {
  for (Index k = 0; k < p.size(); ++k) {
    for (const double sign : {1.0, -1.0}) {
      Vector trial = p;
      trial(k) += sign * step;
      trial = fix_gauge(trial, d);
      const double f = objective(g, trial, d);
      if (f > value) {
        p = std::move(trial);
        value = f;
        return true;
      }
    }
  }
  return false;
}

AscentOutcome ascend(const Graph& g, Vector p, Index d, const OptimizerConfig& cfg) {
  p = fix_gauge(p, d);
  Evaluation current = evaluate(g, p, d);
  double step = cfg.initial_step;
  int stall = 0;
  int it = 0;
  while (it < cfg.max_iters && step >= cfg.min_step) {
    ++it;
    const double before = current.value;
    const double scale = p.norm();
    bool improved = false;

    std::optional<Vector> grad;
    if (has_coincident_edge(g, p, d)) {
      if (auto moved = separate_coincident(g, p, d)) {
        const Evaluation shifted = evaluate(g, *moved, d);
        grad = gradient_at(g, *moved, d, cfg.gradient, cfg, shifted);
      }
    } else {
      grad = gradient_at(g, p, d, cfg.gradient, cfg, current);
    }

    if (grad && grad->norm() > 0.0) {
      const Vector trial = fix_gauge(p + (step * scale / grad->norm()) * *grad, d);
      Evaluation next = evaluate(g, trial, d);
      if (next.value > current.value) {
        p = trial;
        current = std::move(next);
        improved = true;
      }
    } else {
      double value = current.value;
      if (coordinate_move(g, p, value, d, step * scale)) {
        current = evaluate(g, p, d);
        improved = true;
      }
    }

    step = improved ? std::min(2.0 * step, cfg.initial_step) : 0.5 * step;
    stall = (current.value - before < cfg.stall_tolerance) ? stall + 1 : 0;
    if (stall >= cfg.stall_iters) break;
  }
  return {std::move(p), current.value, it};
}

}  // namespace

double objective(const Graph& g, const Vector& p, Index d) {
  return rigidity_eigenvalue(Framework(g, Configuration::from_stacked(p, d)));
}

std::optional<Vector> gradient(const Graph& g, const Vector& p, Index d, GradientMode mode,
                               const OptimizerConfig& cfg) {
  if (has_coincident_edge(g, p, d)) {
    const auto moved = separate_coincident(g, p, d);
    if (!moved) return std::nullopt;
    return gradient_at(g, *moved, d, mode, cfg, evaluate(g, *moved, d));
  }
  return gradient_at(g, p, d, mode, cfg, evaluate(g, p, d));
}

std::optional<Vector> gradient(const Graph& g, const Vector& p, Index d,
                               const OptimizerConfig& cfg) {
  return gradient(g, p, d, cfg.gradient, cfg);
}

Vector fix_gauge(const Vector& p, Index d) {
  const Index n = p.size() / d;
  Vector centroid = Vector::Zero(d);
  for (Index i = 0; i < n; ++i) centroid += p.segment(i * d, d);
  centroid /= static_cast<double>(n);
  Vector out = p;
  for (Index i = 0; i < n; ++i) out.segment(i * d, d) -= centroid;
  const double norm = out.norm();
  if (norm > 0.0) out *= std::sqrt(static_cast<double>(n)) / norm;
  return out;
}

EstimateResult estimate_ad(const Graph& g, Index d, const OptimizerConfig& cfg) {
  cfg.validate();
  if (d < 1) throw InvalidInput("estimate_ad: d must be at least 1");
  const Index n = g.vertex_count();
  if (n < 2) throw InvalidInput("estimate_ad: the graph needs at least 2 vertices");

  EstimateResult result;
  result.d = d;
  result.n = n;
  result.algebraic_connectivity = algebraic_connectivity(g).value;

  Vector best_p;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                      static_cast<std::uint32_t>(cfg.seed >> 32), static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    Vector start(n * d);
    for (Index k = 0; k < start.size(); ++k) start(k) = normal(rng);

    AscentOutcome out = ascend(g, start, d, cfg);
    result.restarts.push_back({out.value, out.iterations});
    if (r == 0 || out.value > result.best_value) {
      result.best_value = out.value;
      result.best_restart = r;
      best_p = std::move(out.p);
    }
  }

  result.best_config = Configuration::from_stacked(best_p, d);
  result.certificate = result.algebraic_connectivity - result.best_value;
  result.violation = result.best_value > result.algebraic_connectivity + 1e-8;
  return result;
}

}  // namespace rigidlab
