#pragma once

#include <string>
#include <vector>

#include "setaut/graph.hpp"
#include "setaut/set_family.hpp"

namespace setaut::fixtures {

// Ground-set realization of the four-set Venn diagram with cell counts
// D-only 3, C-only 1, B-only 2, A-only 3, DC 2, CA 2, DCB 2, DCA 1, DBA 2,
// CBA 2 and all other cells empty (20 ground elements).
inline ColoredSetFamily venn4_family() {
  std::vector<int> A = {6, 7, 8, 11, 12, 15, 16, 17, 18, 19};
  std::vector<int> B = {4, 5, 13, 14, 16, 17, 18, 19};
  std::vector<int> C = {3, 9, 10, 11, 12, 13, 14, 15, 18, 19};
  std::vector<int> D = {0, 1, 2, 9, 10, 13, 14, 15, 16, 17};
  return ColoredSetFamily(
      20, {FamilyEntry{A, 0, 1}, FamilyEntry{B, 0, 1}, FamilyEntry{C, 0, 1},
           FamilyEntry{D, 0, 1}});
}

// Canonical entry order of venn4_family is (B, D, C, A): B has cardinality 8,
// the others 10 and sort lexicographically.
enum Venn4Index { kVennB = 0, kVennD = 1, kVennC = 2, kVennA = 3 };

// The 23-vertex interval graph on {a..w}: vertices a=0 .. w=22, edges the
// union of its fifteen maximal cliques.
inline std::vector<std::vector<int>> wide_tree_cliques() {
  return {
      {0, 1, 2},     // abc
      {0, 1, 3},     // abd
      {0, 1, 4},     // abe
      {1, 5, 6, 7},  // bfgh
      {1, 5, 7, 8},  // bfhi
      {1, 5, 8, 9},  // bfij
      {5, 10, 13},   // fkn
      {5, 11, 13},   // fln
      {5, 12, 13},   // fmn
      {5, 14, 15},   // fop
      {5, 15, 16},   // fpq
      {5, 16, 17},   // fqr
      {5, 18, 19, 20},  // fstu
      {5, 18, 20, 21},  // fsuv
      {5, 18, 21, 22},  // fsvw
  };
}

inline Graph wide_tree_graph() {
  Graph g(23);
  for (const auto& clique : wide_tree_cliques())
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j)
        g.add_edge(clique[i], clique[j]);
  g.labels.resize(23);
  for (int v = 0; v < 23; ++v) g.labels[static_cast<std::size_t>(v)] = std::string(1, static_cast<char>('a' + v));
  return g;
}

// Marked sets {b,f,g}, {f,o,p}, {s,u,v}: a three-set marking that leaves
// most of the wide tree clean.
inline std::vector<std::vector<int>> wide_tree_marked_sets() {
  return {{1, 5, 6}, {5, 14, 15}, {18, 20, 21}};
}

}  // namespace setaut::fixtures
