#include "rigidlab/graph.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "rigidlab/errors.hpp"

namespace rigidlab {

Graph::Graph(Index n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 0) throw InvalidInput("graph: negative vertex count");
  degree_.assign(static_cast<std::size_t>(n_), 0);

  std::set<std::pair<Index, Index>> seen;
  for (Edge& e : edges_) {
    if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_)
      throw InvalidInput("graph: edge {" + std::to_string(e.i) + "," + std::to_string(e.j) +
                         "} has an endpoint outside [0, " + std::to_string(n_) + ")");
    if (e.i == e.j) throw InvalidInput("graph: self-loop at vertex " + std::to_string(e.i));
    if (e.i > e.j) std::swap(e.i, e.j);
    if (!seen.emplace(e.i, e.j).second)
      throw InvalidInput("graph: duplicate edge {" + std::to_string(e.i) + "," +
                         std::to_string(e.j) + "}");
    ++degree_[static_cast<std::size_t>(e.i)];
    ++degree_[static_cast<std::size_t>(e.j)];
  }
}

SymMatrix laplacian(const Graph& g) {
  const Index n = g.vertex_count();
  if (n == 0) throw InvalidInput("laplacian: empty graph");
  Matrix l = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    l(e.i, e.j) = -1.0;
    l(e.j, e.i) = -1.0;
    l(e.i, e.i) += 1.0;
    l(e.j, e.j) += 1.0;
  }
  return SymMatrix(l);
}

AlgebraicConnectivity algebraic_connectivity(const Graph& g) {
  const Index n = g.vertex_count();
  if (n < 2) throw InvalidInput("algebraic_connectivity: needs at least 2 vertices");

  // Deflate the all-ones kernel vector so the returned eigenvector is
  // orthogonal to it even when lambda_2 = 0 is repeated.
  const std::vector<Vector> ones{Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)))};
  const SymMatrix lap = laplacian(g);
  RayleighMinimum r = min_rayleigh_pair(lap, ones);

  Index best = 0;
  for (Index i = 1; i < n; ++i)
    if (std::abs(r.argmin(i)) > std::abs(r.argmin(best))) best = i;
  if (r.argmin(best) < 0.0) r.argmin = -r.argmin;
  // The value is read from the full spectrum (lambda_1 = 0 belongs to the
  // ones vector) so it is bit-identical to lambda_2 of any other eigh() call
  // on the same matrix, such as the 1D stiffness matrix.
  return {eigh(lap).lambda(2), std::move(r.argmin)};
}

namespace generate {

namespace {
void require_vertices(Index n) {
  if (n < 1) throw InvalidInput("generate: vertex count must be positive");
}
}  // namespace

Graph path(Index n) {
  require_vertices(n);
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

Graph cycle(Index n) {
  if (n < 3) throw InvalidInput("generate: cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return Graph(n, std::move(edges));
}

Graph complete(Index n) {
  require_vertices(n);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

Graph complete_bipartite(Index a, Index b) {
  if (a < 1 || b < 1) throw InvalidInput("generate: both sides of K_{a,b} must be nonempty");
  std::vector<Edge> edges;
  for (Index i = 0; i < a; ++i)
    for (Index j = 0; j < b; ++j) edges.push_back({i, a + j});
  return Graph(a + b, std::move(edges));
}

Graph erdos_renyi(Index n, double prob, std::uint64_t seed) {
  require_vertices(n);
  if (!(prob >= 0.0 && prob <= 1.0))
    throw InvalidInput("generate: edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (unit(rng) < prob) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

}  // namespace generate

}  // namespace rigidlab
