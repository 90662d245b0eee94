#pragma once

#include <cstdint>
#include <vector>

#include "rigidlab/linalg.hpp"

namespace rigidlab {

/// Undirected edge, stored with i < j.
struct Edge {
  Index i = 0;
  Index j = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// The edge list keeps the order it was given in (each pair is normalized to
/// i < j); that order fixes the row order of every rigidity matrix built from
/// this graph. Construction rejects out-of-range endpoints, self-loops and
/// duplicate pairs with InvalidInput.
class Graph {
 public:
  Graph() = default;
  Graph(Index n, std::vector<Edge> edges);

  Index vertex_count() const noexcept { return n_; }
  Index edge_count() const noexcept { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  Index degree(Index v) const { return degree_.at(static_cast<std::size_t>(v)); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Index> degree_;
};

/// Combinatorial Laplacian: degree on the diagonal, -1 per edge.
SymMatrix laplacian(const Graph& g);

struct AlgebraicConnectivity {
  double value = 0.0;  // lambda_2 of the Laplacian
  Vector fiedler;      // unit, orthogonal to the all-ones vector
};

/// Throws InvalidInput when n < 2.
AlgebraicConnectivity algebraic_connectivity(const Graph& g);

namespace generate {

Graph path(Index n);
Graph cycle(Index n);  // n >= 3
Graph complete(Index n);
Graph complete_bipartite(Index a, Index b);
/// G(n, p): each pair (i, j), i < j, visited lexicographically, is kept with
/// probability `prob`. Deterministic for a fixed seed.
Graph erdos_renyi(Index n, double prob, std::uint64_t seed);

}  // namespace generate

}  // namespace rigidlab
