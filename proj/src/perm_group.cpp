#include "setaut/perm_group.hpp"

#include <algorithm>
#include <set>

#include "setaut/errors.hpp"

namespace setaut {

PermGroup::PermGroup(int domain_size) : domain_size_(domain_size) {}

PermGroup PermGroup::from_generators(int domain_size, const std::vector<Perm>& gens) {
  PermGroup g(domain_size);
  for (const Perm& p : gens) {
    if (p.domain_size() != domain_size)
      throw DomainMismatch("generator domain size " + std::to_string(p.domain_size()) +
                           " != group domain size " + std::to_string(domain_size));
    g.add_generator(p);
  }
  g.finalize();
  return g;
}

void PermGroup::add_generator(const Perm& g) {
  if (g.is_identity()) return;
  if (contains(g)) return;  // keeps the stored generating set reduced
  generators_.push_back(g);
  pending_.emplace_back(0, g);
  while (!pending_.empty()) {
    auto [lvl, p] = pending_.back();
    pending_.pop_back();
    sift_in(std::move(p), lvl);
  }
}

// The generator set of the j-th stabilizer is the union of everything
// installed at levels >= j; each installed generator fixes all earlier base
// points, so the sets are nested the way the chain requires.
void PermGroup::for_each_level_gen(std::size_t lvl,
                                   const std::function<void(const Perm&)>& fn) const {
  for (std::size_t i = lvl; i < levels_.size(); ++i)
    for (const Perm& g : levels_[i].gens) fn(g);
}

bool PermGroup::sift_in(Perm h, std::size_t lvl) {
  std::size_t j = lvl;
  while (true) {
    if (h.is_identity()) return true;
    if (j == levels_.size()) {
      Level level;
      level.base_point = h.first_moved_point();
      level.transversal_idx.assign(static_cast<std::size_t>(domain_size_), -1);
      level.orbit.push_back(level.base_point);
      level.transversal_idx[static_cast<std::size_t>(level.base_point)] = 0;
      level.transversal.push_back(Perm::identity(domain_size_));
      levels_.push_back(std::move(level));
      base_.push_back(levels_.back().base_point);
    }
    Level& level = levels_[j];
    int x = h(level.base_point);
    if (x == level.base_point) {
      ++j;
      continue;
    }
    int ti = level.transversal_idx[static_cast<std::size_t>(x)];
    if (ti >= 0) {
      h = level.transversal[static_cast<std::size_t>(ti)].inverse() * h;
      ++j;
      continue;
    }
    // Stuck: h is a new strong generator at level j. Every generator set
    // S_0..S_j gained a member, so refresh those orbits and queue their
    // Schreier generators for sifting one level deeper.
    level.gens.push_back(std::move(h));
    for (std::size_t i = j + 1; i-- > 0;) {
      extend_orbit(i);
      Level& lv = levels_[i];
      for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
        const Perm& u = lv.transversal[oi];
        for_each_level_gen(i, [&](const Perm& s) {
          int image = s(lv.orbit[oi]);
          const Perm& u_img = lv.transversal[static_cast<std::size_t>(
              lv.transversal_idx[static_cast<std::size_t>(image)])];
          Perm schreier = u_img.inverse() * s * u;
          if (!schreier.is_identity()) pending_.emplace_back(i + 1, std::move(schreier));
        });
      }
    }
    return false;
  }
}

void PermGroup::extend_orbit(std::size_t lvl) {
  Level& level = levels_[lvl];
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    for_each_level_gen(lvl, [&](const Perm& s) {
      int image = s(level.orbit[i]);
      if (level.transversal_idx[static_cast<std::size_t>(image)] < 0) {
        level.transversal_idx[static_cast<std::size_t>(image)] =
            static_cast<int>(level.orbit.size());
        level.orbit.push_back(image);
        level.transversal.push_back(s * level.transversal[i]);
      }
    });
  }
}

void PermGroup::finalize() {
  order_ = BigUint(1);
  std::set<Perm> uniq;
  for (const Level& level : levels_) {
    order_ *= static_cast<std::uint32_t>(level.orbit.size());
    uniq.insert(level.gens.begin(), level.gens.end());
  }
  strong_generators_.assign(uniq.begin(), uniq.end());
}

bool PermGroup::contains(const Perm& p) const {
  if (p.domain_size() != domain_size_)
    throw DomainMismatch("membership test across different domains");
  Perm h = p;
  for (const Level& level : levels_) {
    if (h.is_identity()) return true;
    int x = h(level.base_point);
    if (x == level.base_point) continue;
    int ti = level.transversal_idx[static_cast<std::size_t>(x)];
    if (ti < 0) return false;
    h = level.transversal[static_cast<std::size_t>(ti)].inverse() * h;
  }
  return h.is_identity();
}

PermGroup schreier_sims(int domain_size, const std::vector<Perm>& generators) {
  return PermGroup::from_generators(domain_size, generators);
}

PermGroup symmetric_product(const std::vector<std::vector<int>>& partition,
                            int domain_size) {
  std::vector<char> used(static_cast<std::size_t>(domain_size), 0);
  std::vector<Perm> gens;
  for (const std::vector<int>& raw_part : partition) {
    std::vector<int> part = raw_part;
    std::sort(part.begin(), part.end());
    for (int p : part) {
      if (p < 0 || p >= domain_size)
        throw InvalidPartition("part element out of domain");
      if (used[static_cast<std::size_t>(p)])
        throw InvalidPartition("overlapping parts");
      used[static_cast<std::size_t>(p)] = 1;
    }
    if (part.size() < 2) continue;
    std::vector<int> im(static_cast<std::size_t>(domain_size));
    for (int i = 0; i < domain_size; ++i) im[static_cast<std::size_t>(i)] = i;
    im[static_cast<std::size_t>(part[0])] = part[1];
    im[static_cast<std::size_t>(part[1])] = part[0];
    gens.emplace_back(im);
    if (part.size() >= 3) {
      for (int i = 0; i < domain_size; ++i) im[static_cast<std::size_t>(i)] = i;
      for (std::size_t i = 0; i + 1 < part.size(); ++i)
        im[static_cast<std::size_t>(part[i])] = part[i + 1];
      im[static_cast<std::size_t>(part.back())] = part[0];
      gens.emplace_back(im);
    }
  }
  return PermGroup::from_generators(domain_size, gens);
}

SubgroupResult subgroup_by_membership(const PermGroup& group,
                                      const std::function<bool(const Perm&)>& predicate,
                                      std::uint64_t index_bound) {
  const int n = group.domain_size();
  if (!predicate(Perm::identity(n)))
    throw IndexBoundExceeded("predicate rejects the identity; not a subgroup");

  std::vector<Perm> reps{Perm::identity(n)};
  std::vector<Perm> reps_inv{Perm::identity(n)};
  std::vector<Perm> schreier_gens;

  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const Perm& g : group.generators()) {
      Perm x = reps[i] * g;
      bool placed = false;
      for (std::size_t r = 0; r < reps.size(); ++r) {
        if (predicate(x * reps_inv[r])) {
          Perm sg = x * reps_inv[r];
          if (!sg.is_identity()) schreier_gens.push_back(std::move(sg));
          placed = true;
          break;
        }
      }
      if (!placed) {
        if (reps.size() + 1 > index_bound)
          throw IndexBoundExceeded("more than " + std::to_string(index_bound) +
                                   " cosets found");
        reps_inv.push_back(x.inverse());
        reps.push_back(std::move(x));
      }
    }
  }
  return SubgroupResult{PermGroup::from_generators(n, schreier_gens),
                        static_cast<std::uint64_t>(reps.size())};
}

PermGroup restrict_group(const PermGroup& group, const std::vector<int>& subdomain) {
  const int n = group.domain_size();
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < subdomain.size(); ++i) {
    int d = subdomain[i];
    if (d < 0 || d >= n) throw DomainMismatch("subdomain point out of range");
    pos[static_cast<std::size_t>(d)] = static_cast<int>(i);
  }
  std::vector<Perm> restricted;
  for (const Perm& g : group.generators()) {
    std::vector<int> im(subdomain.size());
    for (std::size_t i = 0; i < subdomain.size(); ++i) {
      int target = g(subdomain[i]);
      if (pos[static_cast<std::size_t>(target)] < 0)
        throw NonInvariantSubdomain("generator maps subdomain point " +
                                    std::to_string(subdomain[i]) + " outside");
      im[i] = pos[static_cast<std::size_t>(target)];
    }
    restricted.emplace_back(std::move(im));
  }
  return PermGroup::from_generators(static_cast<int>(subdomain.size()), restricted);
}

}  // namespace setaut
