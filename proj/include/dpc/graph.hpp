// Copyright 2026 The dpconsensus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPC_GRAPH_HPP_
#define DPC_GRAPH_HPP_

#include <string>
#include <utility>
#include <vector>

#include "dpc/matops.hpp"

namespace dpc {

// Undirected, unweighted communication topology. Agents are 0-based.
class Graph {
 public:
  // Validates symmetry, zero diagonal and 0/1 entries.
  explicit Graph(Matrix adjacency);

  static Graph from_edges(int node_count,
                          const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return static_cast<int>(adjacency_.rows()); }
  const Matrix& adjacency() const { return adjacency_; }
  bool linked(int i, int j) const { return adjacency_(i, j) != 0.0; }
  std::vector<int> neighbors(int i) const;

  // Sorted (i < j) edge list.
  std::vector<std::pair<int, int>> edges() const;

 private:
  Matrix adjacency_;
};

struct GraphSpectrum {
  std::vector<double> eigenvalues;  // ascending
  double fiedler = 0.0;             // lambda_2
  double lambda_max = 0.0;
  bool connected = false;

  // diag(lambda_2, ..., lambda_N)
  Matrix nonzero_block() const;
};

inline constexpr double kSpectralZero = 1e-9;

Matrix laplacian(const Graph& g);
std::vector<int> degrees(const Graph& g);
GraphSpectrum spectrum(const Graph& g);

enum class TopologyKind { kComplete, kRing, kCirculant, kStar, kExplicit };

struct TopologySpec {
  TopologyKind kind = TopologyKind::kCirculant;
  int node_count = 10;
  std::vector<int> offsets = {1, 2, 3};          // circulant only
  std::vector<std::pair<int, int>> edges;        // explicit only
  Matrix adjacency;  // explicit only; used instead of `edges` when non-empty
};

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& name);

// Deterministic construction. Throws ValidationError on bad N or offsets.
// The star is centred on node 0.
Graph make_topology(const TopologySpec& spec);

}  // namespace dpc

#endif  // DPC_GRAPH_HPP_
