#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "setaut/bigint.hpp"
#include "setaut/perm.hpp"

namespace setaut {

// A permutation group held by a base-and-transversal structure (BSGS).
// The chain is built eagerly and deterministically at construction; the
// object is immutable afterwards and safe to share across threads.
class PermGroup {
public:
  // Trivial group.
  explicit PermGroup(int domain_size);

  static PermGroup from_generators(int domain_size, const std::vector<Perm>& gens);

  int domain_size() const { return domain_size_; }

  // Reduced generating set: input generators that were not already members
  // of the group generated by their predecessors.
  const std::vector<Perm>& generators() const { return generators_; }

  // Union of per-level strong generators of the chain.
  const std::vector<Perm>& strong_generators() const { return strong_generators_; }

  const std::vector<int>& base() const { return base_; }
  const BigUint& order() const { return order_; }
  bool is_trivial() const { return order_ == BigUint(1); }

  // Membership by sifting through the chain.
  bool contains(const Perm& p) const;

private:
  struct Level {
    int base_point = -1;
    std::vector<Perm> gens;
    std::vector<int> orbit;            // discovery order
    std::vector<int> transversal_idx;  // point -> index into transversal, -1 if absent
    std::vector<Perm> transversal;     // transversal[i](base_point) == orbit[i]
  };

  void add_generator(const Perm& g);
  // Sift h starting at level `lvl`; returns true if it reduced to identity,
  // otherwise installs the residue as a new strong generator.
  bool sift_in(Perm h, std::size_t lvl);
  void extend_orbit(std::size_t lvl);
  void for_each_level_gen(std::size_t lvl,
                          const std::function<void(const Perm&)>& fn) const;
  void finalize();

  int domain_size_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> strong_generators_;
  std::vector<int> base_;
  std::vector<Level> levels_;
  BigUint order_{1};
  std::vector<std::pair<std::size_t, Perm>> pending_;
};

PermGroup schreier_sims(int domain_size, const std::vector<Perm>& generators);

// Direct product of symmetric groups on the given disjoint parts; points not
// covered by any part are fixed.
PermGroup symmetric_product(const std::vector<std::vector<int>>& partition,
                            int domain_size);

struct SubgroupResult {
  PermGroup group;
  std::uint64_t index;  // number of coset representatives found
};

// Generators of {g in group : predicate(g)} by coset-representative search
// with Schreier generators (Furst-Hopcroft-Luks). The predicate must define a
// subgroup of index at most index_bound; a violated precondition surfaces as
// IndexBoundExceeded.
SubgroupResult subgroup_by_membership(const PermGroup& group,
                                      const std::function<bool(const Perm&)>& predicate,
                                      std::uint64_t index_bound);

// Image of the restriction homomorphism onto an invariant subdomain,
// re-indexed to 0..|subdomain|-1 in the order given.
PermGroup restrict_group(const PermGroup& group, const std::vector<int>& subdomain);

// One tower refinement step as recorded in a trace.
struct TowerStep {
  int step = 0;
  std::vector<int> part_indices;  // parts of the cardinality partition forming T
  BigUint order;                  // |Gamma_i| after the cut
  std::uint64_t index = 0;        // |Gamma_{i-1}| / |Gamma_i|

  bool operator==(const TowerStep&) const = default;
};

struct TowerTrace {
  BigUint initial_order{1};  // |Gamma_0|
  std::vector<TowerStep> steps;
};

}  // namespace setaut
