#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigidlab/graph.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab {

enum class GradientMode { finite_difference, analytic };

struct OptimizerConfig {
  int restarts = 20;
  std::uint64_t seed = 1;
  int max_iters = 500;
  GradientMode gradient = GradientMode::analytic;
  double fd_step = 1e-6;        // relative to max(1, max |p_k|)
  double initial_step = 0.1;    // relative to ||p||
  double min_step = 1e-9;
  double stall_tolerance = 1e-10;
  int stall_iters = 10;
  double simple_gap = 1e-7;     // minimum eigenvalue gap for a gradient

  /// Throws InvalidInput on non-positive counts or tolerances.
  void validate() const;
};

/// lambda_{D+1}(L(p)), with D taken from the affine dimension of this p.
double objective(const Graph& g, const Vector& p, Index d);

/// Gradient of the objective at p, or nullopt when lambda_{D+1} is not
/// simple (gap to a neighbouring eigenvalue <= cfg.simple_gap). If an edge
/// has coincident endpoints the gradient is evaluated at p plus a fixed
/// pseudo-random perturbation of size 1e-6 * scale.
std::optional<Vector> gradient(const Graph& g, const Vector& p, Index d,
                               const OptimizerConfig& cfg = {});

/// Same as gradient() with the mode forced, for comparing the two.
std::optional<Vector> gradient(const Graph& g, const Vector& p, Index d, GradientMode mode,
                               const OptimizerConfig& cfg = {});

struct RestartTrace {
  double final_value = 0.0;
  int iterations = 0;
};

struct EstimateResult {
  double best_value = 0.0;  // lower bound on a_d(G)
  Configuration best_config{Matrix::Zero(1, 1)};
  int best_restart = 0;
  std::vector<RestartTrace> restarts;
  double algebraic_connectivity = 0.0;
  double certificate = 0.0;  // lambda_2(Lap) - best_value
  bool violation = false;    // best_value exceeded lambda_2 + 1e-8
  Index d = 0;
  Index n = 0;
};

/// Multi-restart ascent on lambda_{D+1} over configurations. Each restart
/// starts from a seeded Gaussian p, centered and scaled to ||p|| = sqrt(n);
/// the gauge is re-fixed after every step. The result is a lower bound on
/// a_d(G); restarts are independent, so a run with more restarts extends the
/// trace of a run with fewer.
EstimateResult estimate_ad(const Graph& g, Index d, const OptimizerConfig& cfg = {});

/// Center p and rescale it to norm sqrt(n).
Vector fix_gauge(const Vector& p, Index d);

}  // namespace rigidlab
