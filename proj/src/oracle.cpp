#include "setaut/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "setaut/errors.hpp"

namespace setaut::oracle {

namespace {

std::uint64_t xorshift(std::uint64_t& state) {
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  return state;
}

std::uint64_t rng_below(std::uint64_t& state, std::uint64_t n) {
  return n ? xorshift(state) % n : 0;
}

void check_budget(int ground, const OracleBudget& budget) {
  if (ground > budget.max_ground)
    throw BudgetExceeded("ground size " + std::to_string(ground) + " exceeds oracle cap " +
                         std::to_string(budget.max_ground));
  std::uint64_t perms = 1;
  for (int i = 2; i <= ground; ++i) {
    perms *= static_cast<std::uint64_t>(i);
    if (perms > budget.max_perms)
      throw BudgetExceeded("permutation count exceeds oracle cap");
  }
}

}  // namespace

bool BruteActionGroup::contains(const Perm& tau) const {
  if (tau.domain_size() != domain_size)
    throw DomainMismatch("oracle membership across different domains");
  std::vector<int> first_point(entries.size(), 0);
  for (std::size_t e = 0, p = 0; e < entries.size(); ++e) {
    first_point[e] = static_cast<int>(p);
    p += static_cast<std::size_t>(entries[e].multiplicity);
  }
  std::vector<int> entry_of(static_cast<std::size_t>(domain_size), 0);
  for (std::size_t e = 0; e < entries.size(); ++e)
    for (int c = 0; c < entries[e].multiplicity; ++c)
      entry_of[static_cast<std::size_t>(first_point[e] + c)] = static_cast<int>(e);

  std::vector<int> em(entries.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    int target = entry_of[static_cast<std::size_t>(tau(first_point[e]))];
    // all copies must land in the same target entry
    for (int c = 0; c < entries[e].multiplicity; ++c)
      if (entry_of[static_cast<std::size_t>(tau(first_point[e] + c))] != target)
        return false;
    em[e] = target;
  }
  return entry_maps.count(em) > 0;
}

std::vector<Perm> BruteActionGroup::generating_set() const {
  std::vector<int> first_point(entries.size(), 0);
  for (std::size_t e = 0, p = 0; e < entries.size(); ++e) {
    first_point[e] = static_cast<int>(p);
    p += static_cast<std::size_t>(entries[e].multiplicity);
  }
  std::vector<Perm> out;
  for (const std::vector<int>& em : entry_maps) {
    std::vector<int> im(static_cast<std::size_t>(domain_size));
    for (std::size_t e = 0; e < entries.size(); ++e)
      for (int c = 0; c < entries[e].multiplicity; ++c)
        im[static_cast<std::size_t>(first_point[e] + c)] =
            first_point[static_cast<std::size_t>(em[e])] + c;
    Perm p(im);
    if (!p.is_identity()) out.push_back(std::move(p));
  }
  for (std::size_t e = 0; e < entries.size(); ++e) {
    if (entries[e].multiplicity < 2) continue;
    std::vector<int> im(static_cast<std::size_t>(domain_size));
    std::iota(im.begin(), im.end(), 0);
    std::swap(im[static_cast<std::size_t>(first_point[e])],
              im[static_cast<std::size_t>(first_point[e] + 1)]);
    out.emplace_back(im);
    if (entries[e].multiplicity >= 3) {
      std::iota(im.begin(), im.end(), 0);
      for (int c = 0; c < entries[e].multiplicity; ++c)
        im[static_cast<std::size_t>(first_point[e] + c)] =
            first_point[e] + (c + 1) % entries[e].multiplicity;
      out.emplace_back(im);
    }
  }
  return out;
}

PermGroup BruteActionGroup::to_perm_group() const {
  return PermGroup::from_generators(domain_size, generating_set());
}

BruteActionGroup brute_autom_set(const ColoredSetFamily& family,
                                 const OracleBudget& budget) {
  check_budget(family.ground_size(), budget);
  const auto& entries = family.entries();

  BruteActionGroup out;
  out.entries = entries;
  for (const FamilyEntry& e : entries) out.domain_size += e.multiplicity;

  // entry lookup by (sorted set, color)
  std::map<std::pair<std::vector<int>, int>, int> lookup;
  for (std::size_t e = 0; e < entries.size(); ++e)
    lookup[{entries[e].set, entries[e].color}] = static_cast<int>(e);

  std::vector<int> sigma(static_cast<std::size_t>(family.ground_size()));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<int> em(entries.size());
    bool ok = true;
    for (std::size_t e = 0; e < entries.size() && ok; ++e) {
      std::vector<int> image;
      image.reserve(entries[e].set.size());
      for (int x : entries[e].set) image.push_back(sigma[static_cast<std::size_t>(x)]);
      std::sort(image.begin(), image.end());
      auto it = lookup.find({image, entries[e].color});
      if (it == lookup.end() ||
          entries[static_cast<std::size_t>(it->second)].multiplicity !=
              entries[e].multiplicity) {
        ok = false;
      } else {
        em[e] = it->second;
      }
    }
    if (ok) out.entry_maps.insert(em);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  out.order = BigUint(out.entry_maps.size());
  for (const FamilyEntry& e : entries)
    out.order *= BigUint::factorial(static_cast<std::uint64_t>(e.multiplicity));
  return out;
}

bool action_groups_equal(const PermGroup& pipeline, const BruteActionGroup& brute) {
  if (pipeline.domain_size() != brute.domain_size) return false;
  if (pipeline.order() != brute.order) return false;
  for (const Perm& g : pipeline.generators())
    if (!brute.contains(g)) return false;
  for (const Perm& g : brute.generating_set())
    if (!pipeline.contains(g)) return false;
  return true;
}

std::vector<Perm> brute_graph_autom_list(const Graph& g, const OracleBudget& budget) {
  check_budget(g.vertex_count(), budget);
  const int n = g.vertex_count();
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<Perm> out;
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if (g.adjacent(u, v) != g.adjacent(pi[static_cast<std::size_t>(u)],
                                           pi[static_cast<std::size_t>(v)]))
          ok = false;
    if (ok) out.emplace_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

PermGroup brute_graph_autom(const Graph& g, const OracleBudget& budget) {
  return PermGroup::from_generators(g.vertex_count(), brute_graph_autom_list(g, budget));
}

BruteActionGroup brute_autom_marked(const MarkedInstance& inst,
                                    const OracleBudget& budget) {
  const auto& entries = inst.marked();
  BruteActionGroup out;
  out.entries = entries;
  for (const FamilyEntry& e : entries) out.domain_size += e.multiplicity;

  std::map<std::pair<std::vector<int>, int>, int> lookup;
  for (std::size_t e = 0; e < entries.size(); ++e)
    lookup[{entries[e].set, entries[e].color}] = static_cast<int>(e);

  for (const Perm& beta : brute_graph_autom_list(inst.graph(), budget)) {
    std::vector<int> em(entries.size());
    bool ok = true;
    for (std::size_t e = 0; e < entries.size() && ok; ++e) {
      std::vector<int> image;
      image.reserve(entries[e].set.size());
      for (int v : entries[e].set) image.push_back(beta(v));
      std::sort(image.begin(), image.end());
      auto it = lookup.find({image, entries[e].color});
      if (it == lookup.end() ||
          entries[static_cast<std::size_t>(it->second)].multiplicity !=
              entries[e].multiplicity) {
        ok = false;
      } else {
        em[e] = it->second;
      }
    }
    if (ok) out.entry_maps.insert(em);
  }
  out.order = BigUint(out.entry_maps.size());
  for (const FamilyEntry& e : entries)
    out.order *= BigUint::factorial(static_cast<std::uint64_t>(e.multiplicity));
  return out;
}

int max_antichain_of_family(const ColoredSetFamily& family) {
  std::vector<std::vector<int>> sets;
  for (const FamilyEntry& e : family.entries()) sets.push_back(e.set);
  return max_antichain(sets);
}

ColoredSetFamily gen_set_family(std::uint64_t seed, int max_ground, int max_sets,
                                int colors, int max_mult) {
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
  xorshift(state);
  int ground = 2 + static_cast<int>(rng_below(state, static_cast<std::uint64_t>(max_ground - 1)));
  int count = 1 + static_cast<int>(rng_below(state, static_cast<std::uint64_t>(max_sets)));

  std::map<std::pair<std::vector<int>, int>, int> mult;
  for (int s = 0; s < count; ++s) {
    std::vector<int> set;
    for (int x = 0; x < ground; ++x)
      if (rng_below(state, 2) == 0) set.push_back(x);
    if (set.empty()) set.push_back(static_cast<int>(rng_below(state, static_cast<std::uint64_t>(ground))));
    int color = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(colors)));
    // skew multiplicities toward 1
    int m = 1;
    if (max_mult > 1 && rng_below(state, 3) == 0)
      m = 2 + static_cast<int>(rng_below(state, static_cast<std::uint64_t>(max_mult - 1)));
    auto& slot = mult[{set, color}];
    slot = std::min(max_mult, slot + m);
  }
  std::vector<FamilyEntry> entries;
  for (const auto& [key, m] : mult)
    entries.push_back(FamilyEntry{key.first, key.second, m});
  return ColoredSetFamily(ground, std::move(entries));
}

MarkedInstance gen_interval_instance(std::uint64_t seed, int n, int max_sets, int colors) {
  Graph g = gen_interval_graph(seed, n);
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0xda3e39cb94b95bdbull;
  xorshift(state);
  int count = 1 + static_cast<int>(rng_below(state, static_cast<std::uint64_t>(max_sets)));

  std::map<std::pair<std::vector<int>, int>, int> mult;
  for (int s = 0; s < count; ++s) {
    // grow a clique greedily from a random vertex, verified by adjacency
    int start = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(n)));
    std::vector<int> clique{start};
    for (int v = 0; v < n; ++v) {
      int cand = (v + start + 1) % n;
      bool fits = true;
      for (int u : clique)
        if (u == cand || !g.adjacent(u, cand)) fits = false;
      if (fits && rng_below(state, 3) != 0) clique.push_back(cand);
    }
    // nonempty random subset of the clique
    std::vector<int> set;
    for (int u : clique)
      if (rng_below(state, 2) == 0) set.push_back(u);
    if (set.empty()) set.push_back(clique[static_cast<std::size_t>(
        rng_below(state, clique.size()))]);
    std::sort(set.begin(), set.end());
    int color = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(colors)));
    int m = rng_below(state, 4) == 0 ? 2 : 1;
    auto& slot = mult[{set, color}];
    slot = std::min(3, slot + m);
  }
  std::vector<FamilyEntry> entries;
  for (const auto& [key, m] : mult)
    entries.push_back(FamilyEntry{key.first, key.second, m});
  return MarkedInstance(std::move(g), std::move(entries));
}

Graph gen_interval_graph(std::uint64_t seed, int n) {
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x853c49e6748fea9bull;
  xorshift(state);
  // endpoints drawn on a grid twice the vertex count; ties are fine
  Graph g(n);
  std::vector<std::pair<int, int>> iv(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    int a = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(2 * n)));
    int b = static_cast<int>(rng_below(state, static_cast<std::uint64_t>(2 * n)));
    iv[static_cast<std::size_t>(v)] = {std::min(a, b), std::max(a, b)};
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      auto [a1, b1] = iv[static_cast<std::size_t>(u)];
      auto [a2, b2] = iv[static_cast<std::size_t>(v)];
      if (std::max(a1, a2) <= std::min(b1, b2)) g.add_edge(u, v);
    }
  return g;
}

}  // namespace setaut::oracle
