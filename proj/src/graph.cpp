#include "setaut/graph.hpp"

#include "setaut/errors.hpp"

namespace setaut {

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw ValidationError("edge endpoint out of range");
  if (u == v) throw ValidationError("self-loop");
  adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
       static_cast<std::size_t>(v)] = 1;
  adj_[static_cast<std::size_t>(v) * static_cast<std::size_t>(n_) +
       static_cast<std::size_t>(u)] = 1;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int u = 0; u < n_; ++u)
    if (adjacent(v, u)) out.push_back(u);
  return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

Graph relabel(const Graph& g, const std::vector<int>& pi) {
  Graph out(g.vertex_count());
  for (auto [u, v] : g.edges())
    out.add_edge(pi[static_cast<std::size_t>(u)], pi[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace setaut
