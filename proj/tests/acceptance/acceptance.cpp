// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rigidlab/bounds.hpp"
#include "rigidlab/optimizer.hpp"
#include "rigidlab/rigidity.hpp"
#include "support/oracles.hpp"

using namespace rigidlab;
using rigidlab::testing::Rng;

namespace {

// Tolerances and limits, fixed here so a run cannot be loosened from outside.
constexpr double kIdentityTol = 1e-10;
constexpr double kSpectrumTol = 1e-9;
constexpr double kLemma2Slack = 1e-10;
constexpr double kEqualityTol = 1e-9;
constexpr double kBoundSlack = 1e-9;
constexpr double kWitnessTol = 1e-9;
constexpr double kCompleteSpectrumTol = 1e-10;
constexpr double kOneDimTol = 1e-10;
constexpr double kFlexibleTol = 1e-6;
constexpr double kLewSlack = 1e-8;
constexpr double kGradientRelTol = 1e-5;
constexpr double kInvarianceTol = 1e-9;
constexpr double kCollinearSeconds = 5.0;
constexpr double kTheoremSeconds = 60.0;
constexpr double kOptimizerSeconds = 120.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Index draw(Rng& rng, Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }

// L(p) block (i, j) should be Lap(i, j) x x^T; compared entry by entry.
double collinear_identity_residual(const Framework& fw, const Vector& x) {
  const Index d = fw.dim();
  const Matrix l = stiffness_matrix(fw).dense();
  const Matrix lap = laplacian(fw.graph()).dense();
  double worst = 0.0;
  for (Index i = 0; i < fw.vertex_count(); ++i)
    for (Index j = 0; j < fw.vertex_count(); ++j)
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
          worst = std::max(worst, std::abs(l(i * d + a, j * d + b) - lap(i, j) * x(a) * x(b)));
  return worst;
}

Outcome collinear_identity() {
  Rng rng(101);
  const auto start = std::chrono::steady_clock::now();
  double worst_identity = 0.0;
  double worst_spectrum = 0.0;
  int coincident_cases = 0;
  bool reports_hold = true;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = draw(rng, 2, 8);
    const Index d = draw(rng, 1, 4);
    const Vector x = testing::random_unit(rng, d);
    const bool repeats = trial % 2 == 0;
    const Framework fw(testing::random_graph(rng, n, 0.6),
                       testing::collinear_configuration(rng, n, x, repeats));
    if (fw.affine_dimension() != 1) return {false, fmt("trial %d: affine dimension %ld", trial,
                                                       static_cast<long>(fw.affine_dimension()))};
    for (Index i = 0; i < n && repeats; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (fw.coincident(i, j)) {
          ++coincident_cases;
          i = n;
          break;
        }

    worst_identity = std::max(worst_identity, collinear_identity_residual(fw, x));
    const Vector stiff = eigh(stiffness_matrix(fw)).values;
    const Vector lap = testing::eigen_reference_values(laplacian(fw.graph()).dense());
    const Index z = (d - 1) * n;
    for (Index k = 0; k < z; ++k) worst_spectrum = std::max(worst_spectrum, std::abs(stiff(k)));
    for (Index i = 0; i < n; ++i)
      worst_spectrum = std::max(worst_spectrum, std::abs(stiff(z + i) - lap(i)));
    reports_hold = reports_hold && all_hold(lemma1_check(fw));
  }
  const double elapsed = seconds_since(start);
  const bool pass = worst_identity <= kIdentityTol && worst_spectrum <= kSpectrumTol &&
                    reports_hold && coincident_cases > 0 && elapsed < kCollinearSeconds;
  return {pass, fmt("200 frameworks (%d with coincident points), identity %.2e <= %.0e, "
                    "spectrum %.2e <= %.0e, reports %s, %.2fs < %.0fs",
                    coincident_cases, worst_identity, kIdentityTol, worst_spectrum, kSpectrumTol,
                    reports_hold ? "hold" : "FAIL", elapsed, kCollinearSeconds)};
}

// delta_ij = +-x for every edge, decided from the positions.
bool all_edges_along(const Framework& fw, const Vector& x) {
  for (const Edge& e : fw.graph().edges()) {
    Vector delta;
    if (fw.coincident(e.i, e.j)) {
      if (fw.affine_dimension() != 1) return false;
      delta = *fw.line_direction();
    } else {
      delta = (fw.config().point(e.i) - fw.config().point(e.j)).normalized();
    }
    if (1.0 - std::pow(delta.dot(x), 2) > kEqualityTol) return false;
  }
  return true;
}

Outcome lemma2_triples() {
  Rng rng(202);
  double worst_excess = -1e300;
  double worst_equality = 0.0;
  int collinear = 0;
  int mismatches = 0;
  int equalities = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = draw(rng, 2, 9);
    const Index d = draw(rng, 1, 4);
    const Vector x = testing::random_unit(rng, d);
    const bool along_x = trial % 3 == 0;
    const Configuration c = along_x ? testing::collinear_configuration(rng, n, x, trial % 2 == 0)
                                    : testing::random_configuration(rng, n, d);
    const Framework fw(testing::random_graph(rng, n, 0.6), c);
    const Vector v = testing::gaussian_vector(rng, n);
    const BoundReport r = lemma2_check(fw, x, v);
    worst_excess = std::max(worst_excess, r.lhs - r.rhs);
    if (along_x) {
      ++collinear;
      worst_equality = std::max(worst_equality, std::abs(r.lhs - r.rhs));
    }
    const bool flag = std::get<bool>(r.context.at("equality"));
    equalities += flag ? 1 : 0;
    if (flag != all_edges_along(fw, x)) ++mismatches;
  }
  const bool pass = worst_excess <= kLemma2Slack && worst_equality <= kEqualityTol && mismatches == 0;
  return {pass, fmt("500 triples, max(lhs - rhs) %.2e <= %.0e; %d along x with |lhs - rhs| "
                    "%.2e <= %.0e; %d equality flags, %d disagree with the alignment predicate",
                    worst_excess, kLemma2Slack, collinear, worst_equality, kEqualityTol, equalities,
                    mismatches)};
}

struct Corpus {
  std::vector<Framework> frameworks;
  int connected = 0;
  int disconnected = 0;
};

Corpus theorem_corpus() {
  Rng rng(303);
  Corpus corpus;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = draw(rng, 2, 10);
    const Index d = draw(rng, 1, 4);
    Graph g = trial % 2 == 0 ? testing::random_connected_graph(rng, n, 0.3)
                             : testing::random_graph(rng, n, 0.25);
    Configuration c = trial % 10 == 7
                          ? testing::collinear_configuration(rng, n, testing::random_unit(rng, d), true)
                          : testing::random_configuration(rng, n, d);
    if (testing::bfs_components(g) == 1)
      ++corpus.connected;
    else
      ++corpus.disconnected;
    corpus.frameworks.emplace_back(std::move(g), std::move(c));
  }
  return corpus;
}

Outcome theorem_pointwise(const Corpus& corpus) {
  const auto start = std::chrono::steady_clock::now();
  double worst = -1e300;
  int violations = 0;
  for (const Framework& fw : corpus.frameworks) {
    const double lambda2 = testing::eigen_reference_values(laplacian(fw.graph()).dense())(1);
    const double excess = rigidity_eigenvalue(fw) - lambda2;
    worst = std::max(worst, excess);
    if (excess > kBoundSlack) ++violations;
  }
  const double elapsed = seconds_since(start);
  const bool pass = violations == 0 && corpus.disconnected > 0 && elapsed < kTheoremSeconds;
  return {pass, fmt("1000 frameworks (%d connected, %d disconnected), max(lambda_{D+1} - "
                    "lambda_2) %.2e <= %.0e, %.2fs < %.0fs",
                    corpus.connected, corpus.disconnected, worst, kBoundSlack, elapsed,
                    kTheoremSeconds)};
}

Outcome jordan_and_ceiling(const Corpus& corpus) {
  double worst = -1e300;
  long long checked = 0;
  for (const Framework& fw : corpus.frameworks) {
    const Index d = fw.dim();
    const Vector stiff = eigh(stiffness_matrix(fw)).values;
    const Vector lap = testing::eigen_reference_values(laplacian(fw.graph()).dense());
    for (Index k = 1; k <= stiff.size(); ++k) {
      const auto index = static_cast<Index>(std::ceil(static_cast<double>(k) / static_cast<double>(d)));
      worst = std::max(worst, stiff(k - 1) - lap(index - 1));
      ++checked;
    }
  }
  int ceiling_mismatches = 0;
  int ceiling_cases = 0;
  for (Index d = 1; d <= 6; ++d) {
    for (Index m = 1; m <= d; ++m) {
      ++ceiling_cases;
      const bool is_two = ceiling_index(d, m) == 2;
      if (is_two != (d <= 2 || m == 1)) ++ceiling_mismatches;
    }
  }
  const bool pass = worst <= kBoundSlack && ceiling_mismatches == 0;
  return {pass, fmt("%lld eigenvalue pairs, max(lambda_k(L) - lambda_ceil(k/d)) %.2e <= %.0e; "
                    "ceiling_index == 2 iff d <= 2 or m = 1 on %d cases, %d mismatches",
                    checked, worst, kBoundSlack, ceiling_cases, ceiling_mismatches)};
}

Outcome witness_chain() {
  Rng rng(404);
  int degenerate = 0;
  int failures = 0;
  double worst_residual = 0.0;
  double worst_excess = -1e300;
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = draw(rng, 2, 9);
    const Index d = draw(rng, 1, 4);
    const Graph g = testing::random_connected_graph(rng, n, 0.4);
    Matrix m = testing::random_configuration(rng, n, d).positions();
    if (trial % 10 == 0 && n >= 3) {
      // Remove the Fiedler component from every coordinate so M^T v = 0.
      const Vector v = algebraic_connectivity(g).fiedler;
      m -= v * (v.transpose() * m);
    } else if (trial % 10 == 5) {
      m = testing::collinear_configuration(rng, n, testing::random_unit(rng, d), true).positions();
    }
    const Framework fw(g, Configuration(m));
    if (witness_rotation(fw).degenerate) ++degenerate;
    const auto reports = witness_verify(fw);
    if (reports.size() != 4 || !all_hold(reports)) ++failures;
    for (const auto& r : reports) {
      if (r.name == "witness.orthogonality" || r.name == "witness.rotation_invariance")
        worst_residual = std::max(worst_residual, r.lhs);
      else
        worst_excess = std::max(worst_excess, r.lhs - r.rhs);
    }
    worst_residual = std::max(worst_residual, std::get<double>(reports[0].context.at("det_error")));
    worst_residual =
        std::max(worst_residual, std::get<double>(reports[0].context.at("orthogonality_error")));
  }
  const bool pass = failures == 0 && degenerate >= 10 && worst_residual <= kWitnessTol &&
                    worst_excess <= kWitnessTol;
  return {pass, fmt("300 connected frameworks (%d degenerate), %d failing, residuals %.2e <= "
                    "%.0e, max(rayleigh or lambda_{D+1} - lambda_2) %.2e <= %.0e",
                    degenerate, failures, worst_residual, kWitnessTol, worst_excess, kWitnessTol)};
}

Outcome known_values() {
  const Matrix p = testing::unit_equilateral_triangle();
  const auto gram = testing::sym3_eigenvalues(testing::triangle_gram(p));
  const std::vector<double> expected{0.0, 0.0, 0.0, 1.5, 1.5, 3.0};
  double oracle_dev = 0.0;
  for (std::size_t k = 0; k < 3; ++k) oracle_dev = std::max(oracle_dev, std::abs(gram[k] - expected[k + 3]));

  const Vector s = eigh(stiffness_matrix(Framework(generate::complete(3), Configuration(p)))).values;
  double triangle_dev = 0.0;
  for (std::size_t k = 0; k < 6; ++k)
    triangle_dev = std::max(triangle_dev, std::abs(s(static_cast<Index>(k)) - expected[k]));
  double oracle_match = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    oracle_match = std::max(oracle_match, std::abs(s(static_cast<Index>(k) + 3) - gram[k]));

  double complete_dev = 0.0;
  for (Index n = 1; n <= 10; ++n) {
    const Vector values = eigh(laplacian(generate::complete(n))).values;
    complete_dev = std::max(complete_dev, std::abs(values(0)));
    for (Index k = 1; k < n; ++k)
      complete_dev = std::max(complete_dev, std::abs(values(k) - static_cast<double>(n)));
  }
  const bool pass = oracle_dev <= kSpectrumTol && triangle_dev <= kSpectrumTol &&
                    oracle_match <= kSpectrumTol && complete_dev <= kCompleteSpectrumTol;
  return {pass, fmt("Gram oracle %.2e, triangle spectrum %.2e (vs oracle %.2e) <= %.0e; "
                    "Lap(K_n) n <= 10 %.2e <= %.0e",
                    oracle_dev, triangle_dev, oracle_match, kSpectrumTol, complete_dev,
                    kCompleteSpectrumTol)};
}

Outcome optimizer_sanity() {
  const auto start = std::chrono::steady_clock::now();
  OptimizerConfig cfg;
  cfg.restarts = 20;
  cfg.seed = 1;

  const double k3 = estimate_ad(generate::complete(3), 2, cfg).best_value;
  const bool k3_ok = k3 >= 1.499 && k3 <= 3.0 + 1e-8;

  Rng rng(505);
  std::vector<Graph> one_dim{generate::complete(2), generate::path(5), generate::cycle(6),
                             generate::complete_bipartite(2, 3), Graph(4, {{0, 1}, {2, 3}})};
  for (int k = 0; k < 5; ++k) one_dim.push_back(testing::random_graph(rng, draw(rng, 2, 9), 0.5));
  double one_dim_dev = 0.0;
  OptimizerConfig short_cfg = cfg;
  short_cfg.restarts = 3;
  for (const Graph& g : one_dim) {
    const double lambda2 = testing::eigen_reference_values(laplacian(g).dense())(1);
    one_dim_dev = std::max(one_dim_dev, std::abs(estimate_ad(g, 1, short_cfg).best_value - lambda2));
  }

  const double p3 = estimate_ad(generate::path(3), 2, cfg).best_value;

  double worst_lew = -1e300;
  double a2k4 = 0.0;
  int lew_cases = 0;
  for (Index n = 4; n <= 8; ++n) {
    for (Index d : {2, 3}) {
      if (n < 2 * d) continue;
      ++lew_cases;
      const double est = estimate_ad(generate::complete(n), d, cfg).best_value;
      if (n == 4 && d == 2) a2k4 = est;
      worst_lew = std::max(worst_lew, est - lew_bounds(n, d).upper);
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = k3_ok && one_dim_dev <= kOneDimTol && p3 <= kFlexibleTol &&
                    worst_lew <= kLewSlack && elapsed < kOptimizerSeconds;
  return {pass, fmt("K_3 d=2: %.10f in [1.499, 3]; d=1 vs lambda_2 on %zu graphs %.2e <= %.0e; "
                    "P_3 d=2: %.2e <= %.0e; K_n vs published upper bound on %d cases, max excess "
                    "%.3f <= %.0e (K_4 d=2: %.6f <= 3); %.1fs < %.0fs",
                    k3, one_dim.size(), one_dim_dev, kOneDimTol, p3, kFlexibleTol, lew_cases,
                    worst_lew, kLewSlack, a2k4, elapsed, kOptimizerSeconds)};
}

Outcome gradient_consistency() {
  Rng rng(606);
  int points = 0;
  int skipped = 0;
  double worst = 0.0;
  while (points < 100) {
    const Index n = draw(rng, 3, 8);
    const Index d = draw(rng, 2, 3);
    const Graph g = testing::random_connected_graph(rng, n, 0.5);
    const Vector p = testing::gaussian_vector(rng, n * d);
    const auto analytic = gradient(g, p, d, GradientMode::analytic);
    const auto fd = gradient(g, p, d, GradientMode::finite_difference);
    if (!analytic || !fd) {
      ++skipped;
      continue;
    }
    const Vector w = testing::random_unit(rng, n * d);
    const double a = analytic->dot(w);
    const double f = fd->dot(w);
    const double scale = std::max(std::abs(a), std::abs(f));
    worst = std::max(worst, scale > 0.0 ? std::abs(a - f) / scale : 0.0);
    ++points;
  }
  return {worst <= kGradientRelTol,
          fmt("100 simple-eigenvalue points (%d non-simple skipped), max relative gap %.2e <= %.0e",
              skipped, worst, kGradientRelTol)};
}

Outcome invariance() {
  Rng rng(707);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = draw(rng, 2, 9);
    const Index d = draw(rng, 1, 4);
    const Configuration c = trial % 5 == 0
                                ? testing::collinear_configuration(rng, n, testing::random_unit(rng, d), false)
                                : testing::random_configuration(rng, n, d);
    const Framework fw(testing::random_graph(rng, n, 0.6), c);
    const Vector base = eigh(stiffness_matrix(fw)).values;
    const Matrix& p = c.positions();

    const Vector shift = 3.0 * testing::gaussian_vector(rng, d);
    const double factor = std::exp(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
    const std::vector<Configuration> moved{Configuration(p.rowwise() + shift.transpose()),
                                           Configuration(factor * p),
                                           Configuration(p * testing::random_rotation(rng, d).transpose())};
    for (const Configuration& q : moved) {
      const Vector other = eigh(stiffness_matrix(Framework(fw.graph(), q))).values;
      worst = std::max(worst, (other - base).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= kInvarianceTol,
          fmt("200 frameworks x {translation, scaling, rotation}, max eigenvalue drift %.2e <= %.0e",
              worst, kInvarianceTol)};
}

}  // namespace

int main() {
  const Corpus corpus = theorem_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 collinear identity and spectrum", collinear_identity},
      {"2 lifted quadratic form bound", lemma2_triples},
      {"3 rigidity eigenvalue <= algebraic connectivity", [&] { return theorem_pointwise(corpus); }},
      {"4 interlacing bound and ceiling index", [&] { return jordan_and_ceiling(corpus); }},
      {"5 witness rotation chain", witness_chain},
      {"6 known spectra", known_values},
      {"7 optimizer sanity", optimizer_sanity},
      {"8 gradient consistency", gradient_consistency},
      {"9 invariance", invariance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%s] %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
