#ifndef LPFOM_GENERATORS_H_
#define LPFOM_GENERATORS_H_

#include <cstdint>
#include <vector>

#include "lpfom/problem.h"

namespace lpfom {

// Directed edge between grid nodes; nodes are numbered row-major.
struct GridEdge {
  int from;
  int to;
};

// All directed edges of the 8-connected k x k grid, in the column order used
// by gen_grid_shortest_path: nodes row-major, neighbours in the fixed offset
// order (-1,-1) (-1,0) (-1,1) (0,-1) (0,1) (1,-1) (1,0) (1,1).
std::vector<GridEdge> grid_edges(int k);

// Shortest-path flow LP from the top-left to the bottom-right node. One
// variable per directed edge in [0, 1]; one flow-conservation row per node.
// An edge costs the vertex cost of its destination, so a path costs the sum
// of the vertex costs it visits after the source. `vertex_costs` is k*k,
// row-major, finite and nonnegative. Sparse storage.
LpProblem gen_grid_shortest_path(int k, const std::vector<double>& vertex_costs);

// Multi-dimensional knapsack relaxation
//   max values'x  s.t.  W x <= capacity,  0 <= x <= 1
// emitted in min form: c = -values, G = -W, h = -capacity. `weights` holds
// d rows of length n. Dense storage.
LpProblem gen_knapsack(const std::vector<double>& values,
                       const std::vector<std::vector<double>>& weights,
                       double capacity);

inline constexpr double kDefaultKnapsackCapacity = 500.0;

// d x n integer weights drawn uniformly from {3, ..., 8}.
std::vector<std::vector<double>> knapsack_weights(int n_items, int d,
                                                  std::uint64_t seed);

// gen_knapsack with seeded weights.
LpProblem gen_knapsack(int n_items, int d, std::uint64_t seed,
                       const std::vector<double>& values,
                       double capacity = kDefaultKnapsackCapacity);

}  // namespace lpfom

#endif  // LPFOM_GENERATORS_H_
