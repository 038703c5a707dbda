#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "setaut/bigint.hpp"
#include "setaut/perm.hpp"
#include "setaut/perm_group.hpp"

namespace setaut {

// One family entry: a member set with a color and a multiplicity.
struct FamilyEntry {
  std::vector<int> set;  // strictly sorted vertex indices
  int color = 0;
  int multiplicity = 1;

  bool operator==(const FamilyEntry&) const = default;
};

// A colored multiset family over a ground set {0..ground_size-1}. Entries are
// normalized to a canonical order (color, cardinality, lexicographic set) at
// construction; equal (set, color) pairs are expressed via multiplicity only.
class ColoredSetFamily {
public:
  ColoredSetFamily() = default;
  ColoredSetFamily(int ground_size, std::vector<FamilyEntry> entries);

  int ground_size() const { return ground_size_; }
  const std::vector<FamilyEntry>& entries() const { return entries_; }
  int color_count() const { return color_count_; }

  // Multiset domain: one point per (entry, copy), entries in canonical order.
  struct DomainPoint {
    int entry = 0;
    int copy = 0;
  };
  std::vector<DomainPoint> domain_points() const;

  bool operator==(const ColoredSetFamily&) const = default;

private:
  int ground_size_ = 0;
  int color_count_ = 0;
  std::vector<FamilyEntry> entries_;
};

// AutomSimpleSET instance: globally distinct member sets, refined colors from
// multiplicity vectors, and the lift data needed to expand solutions back to
// the multiset domain.
struct SimpleFamily {
  int ground_size = 0;
  std::vector<std::vector<int>> sets;  // distinct, sorted by (cardinality, lex)
  std::vector<int> refined_color;      // per set
  // lift data: multiplicity of set i in original color c
  std::vector<std::vector<int>> mult_by_color;  // [set][color]
  std::vector<std::vector<int>> elem_to_sets;   // incidence by ground element

  int size() const { return static_cast<int>(sets.size()); }
};

// Parts of the simple family grouped by (refined color, cardinality), in that
// order. Same-cardinality distinct sets are an antichain, so no part exceeds
// the family's antichain size.
struct CardinalityPartition {
  std::vector<std::vector<int>> parts;  // indices into SimpleFamily::sets
};

using VennCellMap = std::map<std::vector<int>, int>;

SimpleFamily simplify(const ColoredSetFamily& family);

// Lift a solution of the simple instance to the multiset domain: each simple
// generator maps the c-th copy of B to the c-th copy of sigma(B) per color,
// and copies of a repeated set move freely within their color.
PermGroup expand_solution(const PermGroup& simple_group,
                          const ColoredSetFamily& family,
                          const SimpleFamily& simple);

CardinalityPartition cardinality_partition(const SimpleFamily& family);

// Nonzero cells of the cardinality Venn diagram of the subfamily: for each
// ground element, its membership signature among `subfamily`, tallied.
// Keys are sorted lists of family-member indices.
VennCellMap venn_diagram(const SimpleFamily& family, const std::vector<int>& subfamily);

// Whether every cell of the subfamily's Venn diagram has the same cardinality
// as its rho-image cell. rho must stabilize the subfamily set-wise.
bool venn_good(const SimpleFamily& family, const std::vector<int>& subfamily,
               const Perm& rho);

struct TowerStepResult {
  bool all_good = false;
  std::vector<int> part_indices;  // parts whose union is T (0-based, sorted)
  PermGroup gamma_next;
  std::uint64_t index = 0;  // |Gamma_prev| / |Gamma_next|
};

// One step of the tower refinement: scans prefixes of the partition for a
// union T (of at most `antichain` parts) that is not Venn-good with some
// generator, then cuts gamma_prev to the members Venn-good on T.
TowerStepResult tower_step(const SimpleFamily& family, const CardinalityPartition& w,
                           const PermGroup& gamma_prev, int antichain);

struct AutomSetResult {
  PermGroup group;  // over the multiset domain of the input family
  TowerTrace trace;
  int antichain = 0;
};

AutomSetResult autom_set(const ColoredSetFamily& family);

// Maximum number of pairwise inclusion-incomparable distinct sets.
int max_antichain(const std::vector<std::vector<int>>& sets);

}  // namespace setaut
