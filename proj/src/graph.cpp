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
#include "dpc/graph.hpp"

#include <algorithm>
#include <set>

#include "dpc/error.hpp"

namespace dpc {

Graph::Graph(Matrix adjacency) : adjacency_(std::move(adjacency)) {
  if (adjacency_.rows() != adjacency_.cols()) {
    throw ValidationError("adjacency matrix must be square");
  }
  const Eigen::Index n = adjacency_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adjacency_(i, i) != 0.0) {
      throw ValidationError("adjacency matrix has a self loop at node " +
                            std::to_string(i));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = adjacency_(i, j);
      if (a != 0.0 && a != 1.0) {
        throw ValidationError("adjacency entries must be 0 or 1");
      }
      if (a != adjacency_(j, i)) {
        throw ValidationError("adjacency matrix is not symmetric at (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ")");
      }
    }
  }
}

Graph Graph::from_edges(int node_count,
                        const std::vector<std::pair<int, int>>& edges) {
  if (node_count < 1) throw ValidationError("graph needs at least one node");
  Matrix a = Matrix::Zero(node_count, node_count);
  for (const auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= node_count || j >= node_count) {
      throw ValidationError("edge (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") is out of range");
    }
    if (i == j) {
      throw ValidationError("edge (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") is a self loop");
    }
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return Graph(std::move(a));
}

std::vector<int> Graph::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < node_count(); ++j) {
    if (linked(i, j)) out.push_back(j);
  }
  return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < node_count(); ++i) {
    for (int j = i + 1; j < node_count(); ++j) {
      if (linked(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

Matrix GraphSpectrum::nonzero_block() const {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  Matrix out = Matrix::Zero(std::max<Eigen::Index>(n - 1, 0),
                            std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 1; i < n; ++i) out(i - 1, i - 1) = eigenvalues[i];
  return out;
}

Matrix laplacian(const Graph& g) {
  const Matrix& a = g.adjacency();
  Matrix lap = -a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) lap(i, i) = a.row(i).sum();
  return lap;
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> out(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) {
    out[i] = static_cast<int>(g.adjacency().row(i).sum());
  }
  return out;
}

GraphSpectrum spectrum(const Graph& g) {
  GraphSpectrum s;
  s.eigenvalues = sym_eigvals(laplacian(g));
  s.lambda_max = s.eigenvalues.back();
  s.fiedler = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
  s.connected = s.eigenvalues.size() == 1 || s.fiedler > kSpectralZero;
  return s;
}

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kComplete: return "complete";
    case TopologyKind::kRing: return "ring";
    case TopologyKind::kCirculant: return "circulant";
    case TopologyKind::kStar: return "star";
    case TopologyKind::kExplicit: return "explicit";
  }
  return "unknown";
}

TopologyKind topology_kind_from_string(const std::string& name) {
  if (name == "complete") return TopologyKind::kComplete;
  if (name == "ring") return TopologyKind::kRing;
  if (name == "circulant") return TopologyKind::kCirculant;
  if (name == "star") return TopologyKind::kStar;
  if (name == "explicit") return TopologyKind::kExplicit;
  throw ValidationError("unknown graph kind '" + name + "'");
}

Graph make_topology(const TopologySpec& spec) {
  const int n = spec.node_count;
  if (n < 2) {
    throw ValidationError("topology needs N >= 2, got " + std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  switch (spec.kind) {
    case TopologyKind::kComplete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      break;
    case TopologyKind::kRing:
      for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (i != j) edges.emplace_back(i, j);
      }
      break;
    case TopologyKind::kCirculant: {
      if (spec.offsets.empty()) {
        throw ValidationError("circulant topology needs at least one offset");
      }
      std::set<int> seen;
      for (int s : spec.offsets) {
        if (s < 1 || 2 * s > n) {
          throw ValidationError("circulant offset " + std::to_string(s) +
                                " must lie in [1, N/2] for N = " +
                                std::to_string(n));
        }
        if (!seen.insert(s).second) {
          throw ValidationError("circulant offset " + std::to_string(s) +
                                " is repeated");
        }
        for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + s) % n);
      }
      break;
    }
    case TopologyKind::kStar:
      for (int j = 1; j < n; ++j) edges.emplace_back(0, j);
      break;
    case TopologyKind::kExplicit:
      if (spec.adjacency.size() > 0) {
        if (spec.adjacency.rows() != n) {
          throw ValidationError("explicit adjacency has " +
                                std::to_string(spec.adjacency.rows()) +
                                " rows, expected N = " + std::to_string(n));
        }
        return Graph(spec.adjacency);
      }
      edges = spec.edges;
      break;
  }
  return Graph::from_edges(n, edges);
}

}  // namespace dpc
