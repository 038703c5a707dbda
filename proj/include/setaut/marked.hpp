#pragma once

#include <string>
#include <vector>

#include "setaut/graph.hpp"
#include "setaut/interval_pq.hpp"
#include "setaut/perm_group.hpp"
#include "setaut/set_family.hpp"

namespace setaut {

// An interval graph with colored families of marked cliques. Entries are kept
// in the canonical (color, cardinality, lexicographic) order; every marked
// set must induce a clique. Interval-ness is verified when the PQ-tree is
// built (reduce / autom_marked_int).
class MarkedInstance {
public:
  MarkedInstance(Graph graph, std::vector<FamilyEntry> marked);

  const Graph& graph() const { return graph_; }
  const std::vector<FamilyEntry>& marked() const { return marked_; }
  int color_count() const { return color_count_; }

private:
  Graph graph_;
  std::vector<FamilyEntry> marked_;
  int color_count_ = 0;
};

struct CleanClassification {
  std::vector<char> node_clean;     // inner vertices miss every marked set
  std::vector<char> subtree_clean;  // node and all descendants clean
  std::vector<int> t_prime;         // nodes surviving after discarding clean subtrees
};

CleanClassification classify_clean(const PQTree& tree, const MarkedInstance& inst);

// Automorphism-invariant annotation of a marked set: per tree level on its
// root-to-leaf path, the node kind, the number of elements inner there and,
// at Q-nodes, the rank multiset of those elements.
struct SetAnnotation {
  std::string key;
  bool operator==(const SetAnnotation&) const = default;
};

SetAnnotation annotate_set(const PQTree& tree, const Graph& g,
                           const std::vector<int>& marked_set);
std::vector<SetAnnotation> annotate_sets(const PQTree& tree, const MarkedInstance& inst);

// C_q = union of the maximal cliques at descendant leaves of q, per T' node.
std::vector<std::vector<int>> node_sets(const PQTree& tree,
                                        const std::vector<int>& t_prime);

struct ReducedInstance {
  ColoredSetFamily set_instance;  // B-colors 0..b_colors-1, C-colors after
  int b_colors = 0;
  // per set_instance entry: index into MarkedInstance::marked(), or -1 for a
  // C-part entry
  std::vector<int> entry_origin;
  // per set_instance entry: the T' nodes whose covering sets produced it
  // (empty for B-part entries); equal (set, color) nodes share an entry
  std::vector<std::vector<int>> entry_nodes;
};

ReducedInstance reduce(const MarkedInstance& inst);
ReducedInstance reduce(const MarkedInstance& inst, const PQTree& tree);

// Exact realizability test for a permutation of the reduced family's
// entries: whether some marking-preserving automorphism of the graph acts as
// `entry_map` on the marked sets and covering node sets. Decided node by
// node over T': an orientation per Q-node must match the induced child moves,
// the clean subtree codes, and the per-(span, marked-pattern) counts of
// inner vertices. The set-family solution alone cannot couple the
// orientation choices of a node's sets and children, so this predicate cuts
// the solved group down to the genuine action.
class RealizabilityOracle {
public:
  RealizabilityOracle(const MarkedInstance& inst, const PQTree& tree,
                      const CleanClassification& clean, const ReducedInstance& reduced);

  bool entry_action_realizable(const std::vector<int>& entry_map) const;

private:
  struct NodeData {
    int entry = -1;                    // C-entry of this T' node
    std::vector<int> nonclean_children;  // positions within children
    // bucket key: (span.lo, span.hi, marked-pattern id) -> count
    std::map<std::tuple<int, int, int>, int> buckets;
  };

  bool assign(int q, int target, const std::vector<int>& entry_map) const;
  bool try_orientation(int q, int target, bool flip,
                       const std::vector<int>& entry_map) const;
  bool buckets_match(int q, int target, bool flip,
                     const std::vector<int>& entry_map) const;

  const PQTree& tree_;
  const CleanClassification& clean_;
  std::vector<NodeData> data_;          // per tree node (valid for T' nodes)
  std::vector<std::vector<int>> entry_nodes_;
  std::vector<int> pattern_of_vertex_;  // pattern id per vertex (-1 = unmarked alone)
  std::vector<std::vector<int>> patterns_;  // id -> sorted B-entry indices
  int root_ = -1;
};

struct AutomMarkedResult {
  PermGroup group;  // action on the marked multiset domain, canonical order
  TowerTrace trace;
  int antichain = 0;  // of the reduced family (equals the antichain of A)
};

// Solve AutomMarkedINT: reduce to AutomSET over V(G), then restrict the
// solution to the marked-set points. An empty marked family yields the
// trivial group on an empty domain.
AutomMarkedResult autom_marked_int(const MarkedInstance& inst);

}  // namespace setaut
