#include "lpfom/generators.h"

#include <cmath>
#include <random>
#include <string>

#include "lpfom/errors.h"

namespace lpfom {
namespace {

constexpr int kOffsets[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                {0, 1},   {1, -1}, {1, 0},  {1, 1}};

}  // namespace

std::vector<GridEdge> grid_edges(int k) {
  if (k < 2) throw ParameterError("grid side must be at least 2");
  std::vector<GridEdge> edges;
  for (int r = 0; r < k; ++r) {
    for (int col = 0; col < k; ++col) {
      for (const auto& off : kOffsets) {
        const int nr = r + off[0];
        const int nc = col + off[1];
        if (nr < 0 || nr >= k || nc < 0 || nc >= k) continue;
        edges.push_back({r * k + col, nr * k + nc});
      }
    }
  }
  return edges;
}

LpProblem gen_grid_shortest_path(int k,
                                 const std::vector<double>& vertex_costs) {
  if (k < 2) throw ParameterError("grid side must be at least 2");
  const int nodes = k * k;
  if (static_cast<int>(vertex_costs.size()) != nodes) {
    throw DimensionError("expected " + std::to_string(nodes) +
                         " vertex costs, got " +
                         std::to_string(vertex_costs.size()));
  }
  for (double v : vertex_costs) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ParameterError("vertex costs must be finite and nonnegative");
    }
  }
  const std::vector<GridEdge> edges = grid_edges(k);
  const int n = static_cast<int>(edges.size());

  LpProblem p;
  p.name = "grid" + std::to_string(k);
  p.storage = Storage::kSparseCsr;
  p.c.resize(n);
  std::vector<Triplet> t;
  t.reserve(2 * edges.size());
  for (int e = 0; e < n; ++e) {
    p.c[e] = vertex_costs[edges[e].to];
    t.push_back({edges[e].from, e, 1.0});
    t.push_back({edges[e].to, e, -1.0});
  }
  p.A = ConstraintMatrix::FromTriplets(nodes, n, t, Storage::kSparseCsr);
  p.b.assign(nodes, 0.0);
  p.b.front() = 1.0;
  p.b.back() = -1.0;
  p.G = ConstraintMatrix::Zero(0, n, Storage::kSparseCsr);
  p.l.assign(n, 0.0);
  p.u.assign(n, 1.0);
  return p;
}

LpProblem gen_knapsack(const std::vector<double>& values,
                       const std::vector<std::vector<double>>& weights,
                       double capacity) {
  const int n = static_cast<int>(values.size());
  const int d = static_cast<int>(weights.size());
  if (n < 1) throw ParameterError("knapsack needs at least one item");
  if (d < 1) throw ParameterError("knapsack needs at least one dimension");
  if (!(capacity > 0.0) || !std::isfinite(capacity)) {
    throw ParameterError("knapsack capacity must be positive and finite");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ParameterError("item values must be finite");
  }
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n) * d);
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != n) {
      throw DimensionError("weight row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(n));
    }
    for (double w : row) data.push_back(-w);
  }
  LpProblem p;
  p.name = "knapsack";
  p.storage = Storage::kDense;
  p.c.resize(n);
  for (int i = 0; i < n; ++i) p.c[i] = -values[i];
  p.G = ConstraintMatrix::Dense(d, n, std::move(data));
  p.h.assign(d, -capacity);
  p.A = ConstraintMatrix::Zero(0, n, Storage::kDense);
  p.l.assign(n, 0.0);
  p.u.assign(n, 1.0);
  return p;
}

std::vector<std::vector<double>> knapsack_weights(int n_items, int d,
                                                  std::uint64_t seed) {
  if (n_items < 1) throw ParameterError("knapsack needs at least one item");
  if (d < 1) throw ParameterError("knapsack needs at least one dimension");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(3, 8);
  std::vector<std::vector<double>> w(d, std::vector<double>(n_items));
  for (auto& row : w) {
    for (double& e : row) e = weight(rng);
  }
  return w;
}

LpProblem gen_knapsack(int n_items, int d, std::uint64_t seed,
                       const std::vector<double>& values, double capacity) {
  if (static_cast<int>(values.size()) != n_items) {
    throw DimensionError("expected " + std::to_string(n_items) +
                         " item values, got " + std::to_string(values.size()));
  }
  return gen_knapsack(values, knapsack_weights(n_items, d, seed), capacity);
}

}  // namespace lpfom
