#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "setaut/graph.hpp"
#include "setaut/perm_group.hpp"

namespace setaut {

enum class NodeKind { Leaf, P, Q };

// Rank of an inner vertex: for a Q-node, the multiset of palindromic child
// indices it spans (invariant under reversal); trivial otherwise.
struct RankDescriptor {
  std::vector<int> palindromic_indices;  // sorted; empty = trivial rank
  bool trivial() const { return palindromic_indices.empty(); }
  auto operator<=>(const RankDescriptor&) const = default;
};

// Totally ordered structural key; equal keys mean the subtrees carry the same
// interval-graph shape and inner-vertex structure.
struct CanonicalCode {
  std::string key;
  auto operator<=>(const CanonicalCode&) const = default;
};

// PQ-tree over the maximal cliques of an interval graph, stored in canonical
// form: P-children sorted by code, Q-orientation minimizing (child codes,
// inner-vertex span profile). Immutable once built.
class PQTree {
public:
  struct Node {
    NodeKind kind = NodeKind::Leaf;
    std::vector<int> children;  // canonical order
    int parent = -1;
    int depth = 0;
    int clique = -1;            // leaves only
    std::vector<int> leaf_cliques;  // sorted clique ids under this node
    std::vector<int> inner;         // vertices inner to this node, sorted
    bool reversal_tied = false;     // Q only: both orientations share the key
  };

  int root() const { return root_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const std::vector<std::vector<int>>& cliques() const { return cliques_; }
  int leaf_of_clique(int clique) const { return leaf_of_clique_[static_cast<std::size_t>(clique)]; }

  // Left-to-right clique order of the stored (canonical) tree.
  std::vector<int> frontier() const;

  int inner_node_of(int vertex) const { return inner_node_[static_cast<std::size_t>(vertex)]; }
  RankDescriptor rank_of(int vertex) const;
  // Child-index range the vertex spans at its Q-node; (-1,-1) if its node is
  // not a Q-node.
  std::pair<int, int> inner_span(int vertex) const;

  const CanonicalCode& code(int node_id) const { return codes_[static_cast<std::size_t>(node_id)]; }

  int vertex_count() const { return static_cast<int>(inner_node_.size()); }

private:
  friend PQTree build_pq_tree(const Graph& g);
  friend struct PQTreeShaper;  // internal construction helper
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::vector<int>> cliques_;
  std::vector<int> leaf_of_clique_;
  std::vector<int> inner_node_;                 // vertex -> node id
  std::vector<std::pair<int, int>> spans_;      // vertex -> child range at Q, else (-1,-1)
  std::vector<CanonicalCode> codes_;            // per node
};

// Lex-BFS order (visit order) of the graph.
std::vector<int> lex_bfs(const Graph& g);

// Maximal cliques of a chordal graph via the simplicial elimination ordering;
// cliques are sorted vertex lists, listed in lexicographic order.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

PQTree build_pq_tree(const Graph& g);

RankDescriptor rank(const PQTree& tree, int vertex);

CanonicalCode canonical_code(const PQTree& tree, int node_id);

// Code of `node` where only children accepted by `keep` contribute their
// subtrees; the rest appear as position markers (reversal-invariant at
// Q-nodes). The marked reduction uses this to annotate non-clean nodes.
CanonicalCode canonical_code_pruned(const PQTree& tree, int node_id,
                                    const std::function<bool(int)>& keep);

// Generators of Aut(G): same-clique-set vertex transpositions, equal-code
// P-child swaps, and Q reversals, each realized as a vertex permutation.
PermGroup interval_automorphism_group(const Graph& g);

std::string pq_tree_dot(const PQTree& tree, const std::vector<std::string>& labels = {});

}  // namespace setaut
