#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "setaut/bigint.hpp"
#include "setaut/graph.hpp"
#include "setaut/marked.hpp"
#include "setaut/perm.hpp"
#include "setaut/perm_group.hpp"
#include "setaut/set_family.hpp"

namespace setaut::oracle {

// The oracle enumerates instead of computing cleverly; these caps make it
// abort loudly rather than silently truncate.
struct OracleBudget {
  int max_ground = 8;
  std::uint64_t max_perms = 40320;  // 8!
  std::uint64_t seed = 1;
};

// Ground truth produced by exhaustive enumeration: the action group on the
// multiset domain of a colored family, held as the set of realizable entry
// permutations plus free copy moves. Membership and order come straight from
// that description, independent of the pipeline's group machinery.
struct BruteActionGroup {
  std::vector<FamilyEntry> entries;  // canonical order; domain = copies in order
  std::set<std::vector<int>> entry_maps;  // realizable permutations of entries
  int domain_size = 0;
  BigUint order;

  bool contains(const Perm& tau) const;
  // Canonical lift of every realizable entry map, plus copy transpositions.
  std::vector<Perm> generating_set() const;
  PermGroup to_perm_group() const;
};

// All color/multiplicity-preserving permutations of the family realizable by
// some permutation of the ground set (Def. of AutomSET, by enumeration).
BruteActionGroup brute_autom_set(const ColoredSetFamily& family,
                                 const OracleBudget& budget = {});

// Equality of a pipeline group and an oracle group on the same multiset
// domain: equal orders plus mutual membership of the generating sets.
bool action_groups_equal(const PermGroup& pipeline, const BruteActionGroup& brute);

// All edge-preserving vertex bijections.
std::vector<Perm> brute_graph_autom_list(const Graph& g, const OracleBudget& budget = {});
PermGroup brute_graph_autom(const Graph& g, const OracleBudget& budget = {});

// The action of the marking-preserving automorphisms on the marked multiset,
// by filtering brute_graph_autom members and projecting onto the entries.
BruteActionGroup brute_autom_marked(const MarkedInstance& inst,
                                    const OracleBudget& budget = {});

int max_antichain_of_family(const ColoredSetFamily& family);

// Seeded generators -----------------------------------------------------

// Random colored multiset family: |X| <= max_ground, <= max_sets entries,
// <= colors color classes, multiplicities <= max_mult.
ColoredSetFamily gen_set_family(std::uint64_t seed, int max_ground, int max_sets,
                                int colors, int max_mult);

// Random interval graph from n random intervals; returns the graph and the
// interval order for tests that need a certificate.
Graph gen_interval_graph(std::uint64_t seed, int n);

// Random marked interval instance: marked sets are random subsets of greedily
// grown cliques (validated by direct adjacency checks), with <= max_sets
// entries over <= colors color classes.
MarkedInstance gen_interval_instance(std::uint64_t seed, int n, int max_sets, int colors);

}  // namespace setaut::oracle
