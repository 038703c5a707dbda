#pragma once

#include <string>
#include <vector>

namespace setaut {

// Simple undirected graph, no self-loops.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

  int vertex_count() const { return n_; }

  void add_edge(int u, int v);
  bool adjacent(int u, int v) const {
    return adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                static_cast<std::size_t>(v)] != 0;
  }

  std::vector<int> neighbors(int v) const;
  std::vector<std::pair<int, int>> edges() const;

  std::vector<std::string> labels;  // optional, size n or empty

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_;
  }

private:
  int n_ = 0;
  std::vector<char> adj_;
};

// Graph with the same edges under a vertex relabeling pi (vertex v becomes pi(v)).
Graph relabel(const Graph& g, const std::vector<int>& pi);

}  // namespace setaut
