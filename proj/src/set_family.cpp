#include "setaut/set_family.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

#include "setaut/errors.hpp"

namespace setaut {

namespace {

bool entry_less(const FamilyEntry& a, const FamilyEntry& b) {
  return std::tuple(a.color, a.set.size(), a.set) <
         std::tuple(b.color, b.set.size(), b.set);
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_factorial_pow(int a) {
  std::uint64_t f = 1;
  for (int i = 2; i <= a; ++i) f = sat_mul(f, static_cast<std::uint64_t>(i));
  std::uint64_t out = 1;
  for (int i = 0; i < a; ++i) out = sat_mul(out, f);
  return out;
}

}  // namespace

ColoredSetFamily::ColoredSetFamily(int ground_size, std::vector<FamilyEntry> entries)
    : ground_size_(ground_size), entries_(std::move(entries)) {
  if (ground_size_ < 0) throw ValidationError("negative ground size");
  for (const FamilyEntry& e : entries_) {
    if (e.set.empty()) throw ValidationError("empty member set");
    if (e.multiplicity < 1) throw ValidationError("multiplicity must be positive");
    if (e.color < 0) throw ValidationError("negative color id");
    for (std::size_t i = 0; i < e.set.size(); ++i) {
      if (e.set[i] < 0 || e.set[i] >= ground_size_)
        throw ValidationError("member set index out of ground range");
      if (i > 0 && e.set[i - 1] >= e.set[i])
        throw ValidationError("member set must be strictly sorted");
    }
  }
  std::sort(entries_.begin(), entries_.end(), entry_less);
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i - 1].set == entries_[i].set &&
        entries_[i - 1].color == entries_[i].color)
      throw ValidationError("duplicate (set, color) entry; use multiplicity");
  }
  for (const FamilyEntry& e : entries_)
    color_count_ = std::max(color_count_, e.color + 1);
}

std::vector<ColoredSetFamily::DomainPoint> ColoredSetFamily::domain_points() const {
  std::vector<DomainPoint> out;
  for (std::size_t e = 0; e < entries_.size(); ++e)
    for (int c = 0; c < entries_[e].multiplicity; ++c)
      out.push_back(DomainPoint{static_cast<int>(e), c});
  return out;
}

SimpleFamily simplify(const ColoredSetFamily& family) {
  SimpleFamily out;
  out.ground_size = family.ground_size();

  std::set<std::vector<int>> distinct;
  for (const FamilyEntry& e : family.entries()) distinct.insert(e.set);
  out.sets.assign(distinct.begin(), distinct.end());
  std::sort(out.sets.begin(), out.sets.end(), [](const auto& a, const auto& b) {
    return std::tuple(a.size(), a) < std::tuple(b.size(), b);
  });

  out.mult_by_color.assign(out.sets.size(),
                           std::vector<int>(static_cast<std::size_t>(family.color_count()), 0));
  for (const FamilyEntry& e : family.entries()) {
    std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(out.sets.begin(), out.sets.end(), e.set,
                         [](const auto& a, const auto& b) {
                           return std::tuple(a.size(), a) < std::tuple(b.size(), b);
                         }) -
        out.sets.begin());
    out.mult_by_color[idx][static_cast<std::size_t>(e.color)] = e.multiplicity;
  }

  // refined colors = classes of equal multiplicity vectors
  std::map<std::vector<int>, int> vector_class;
  for (const auto& mv : out.mult_by_color) vector_class.emplace(mv, 0);
  int next = 0;
  for (auto& [vec, id] : vector_class) id = next++;
  out.refined_color.resize(out.sets.size());
  for (std::size_t i = 0; i < out.sets.size(); ++i)
    out.refined_color[i] = vector_class.at(out.mult_by_color[i]);

  out.elem_to_sets.assign(static_cast<std::size_t>(out.ground_size), {});
  for (std::size_t i = 0; i < out.sets.size(); ++i)
    for (int x : out.sets[i])
      out.elem_to_sets[static_cast<std::size_t>(x)].push_back(static_cast<int>(i));
  return out;
}

PermGroup expand_solution(const PermGroup& simple_group,
                          const ColoredSetFamily& family,
                          const SimpleFamily& simple) {
  const auto& entries = family.entries();
  const auto points = family.domain_points();
  const int n = static_cast<int>(points.size());

  // point index lookup per (entry, copy)
  std::vector<int> first_point(entries.size(), -1);
  for (int p = 0; p < n; ++p)
    if (points[static_cast<std::size_t>(p)].copy == 0)
      first_point[static_cast<std::size_t>(points[static_cast<std::size_t>(p)].entry)] = p;

  auto set_index = [&](const std::vector<int>& s) {
    auto it = std::lower_bound(simple.sets.begin(), simple.sets.end(), s,
                               [](const auto& a, const auto& b) {
                                 return std::tuple(a.size(), a) < std::tuple(b.size(), b);
                               });
    return static_cast<int>(it - simple.sets.begin());
  };
  // entry lookup by (simple set index, color)
  std::map<std::pair<int, int>, int> entry_by_set_color;
  for (std::size_t e = 0; e < entries.size(); ++e)
    entry_by_set_color[{set_index(entries[e].set), entries[e].color}] =
        static_cast<int>(e);

  std::vector<Perm> gens;
  for (const Perm& sigma : simple_group.generators()) {
    std::vector<int> im(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
      const auto& pt = points[static_cast<std::size_t>(p)];
      const FamilyEntry& e = entries[static_cast<std::size_t>(pt.entry)];
      int target_set = sigma(set_index(e.set));
      int target_entry = entry_by_set_color.at({target_set, e.color});
      im[static_cast<std::size_t>(p)] =
          first_point[static_cast<std::size_t>(target_entry)] + pt.copy;
    }
    gens.emplace_back(im);
  }
  // copies of a repeated set permute freely within their color
  for (std::size_t e = 0; e < entries.size(); ++e) {
    int m = entries[e].multiplicity;
    if (m < 2) continue;
    int base = first_point[e];
    std::vector<int> im(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
    std::swap(im[static_cast<std::size_t>(base)], im[static_cast<std::size_t>(base + 1)]);
    gens.emplace_back(im);
    if (m >= 3) {
      for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
      for (int c = 0; c < m; ++c)
        im[static_cast<std::size_t>(base + c)] = base + (c + 1) % m;
      gens.emplace_back(im);
    }
  }
  return PermGroup::from_generators(n, gens);
}

CardinalityPartition cardinality_partition(const SimpleFamily& family) {
  std::map<std::pair<int, int>, std::vector<int>> grouped;  // (refined color, card)
  for (int i = 0; i < family.size(); ++i)
    grouped[{family.refined_color[static_cast<std::size_t>(i)],
             static_cast<int>(family.sets[static_cast<std::size_t>(i)].size())}]
        .push_back(i);
  CardinalityPartition out;
  for (auto& [key, part] : grouped) out.parts.push_back(std::move(part));
  return out;
}

VennCellMap venn_diagram(const SimpleFamily& family, const std::vector<int>& subfamily) {
  std::vector<char> in_sub(static_cast<std::size_t>(family.size()), 0);
  for (int i : subfamily) {
    if (i < 0 || i >= family.size()) throw ValidationError("subfamily index out of range");
    in_sub[static_cast<std::size_t>(i)] = 1;
  }
  VennCellMap cells;
  std::vector<int> sig;
  for (int x = 0; x < family.ground_size; ++x) {
    sig.clear();
    for (int s : family.elem_to_sets[static_cast<std::size_t>(x)])
      if (in_sub[static_cast<std::size_t>(s)]) sig.push_back(s);
    if (!sig.empty()) ++cells[sig];
  }
  return cells;
}

bool venn_good(const SimpleFamily& family, const std::vector<int>& subfamily,
               const Perm& rho) {
  if (rho.domain_size() != family.size())
    throw DomainMismatch("rho is not a permutation of the family");
  {
    std::set<int> sub(subfamily.begin(), subfamily.end());
    for (int i : subfamily)
      if (!sub.count(rho(i)))
        throw NonStabilizedSubfamily("rho does not stabilize the subfamily");
  }
  VennCellMap cells = venn_diagram(family, subfamily);
  VennCellMap relabeled;
  for (const auto& [key, count] : cells) {
    std::vector<int> image;
    image.reserve(key.size());
    for (int i : key) image.push_back(rho(i));
    std::sort(image.begin(), image.end());
    relabeled[std::move(image)] = count;
  }
  return relabeled == cells;
}

namespace {

// Venn-goodness of a fixed subfamily against many permutations: build the
// cell map once, then compare relabelings.
class VennProbe {
public:
  VennProbe(const SimpleFamily& family, std::vector<int> subfamily)
      : subfamily_(std::move(subfamily)), cells_(venn_diagram(family, subfamily_)) {}

  bool good(const Perm& rho) const {
    VennCellMap relabeled;
    for (const auto& [key, count] : cells_) {
      std::vector<int> image;
      image.reserve(key.size());
      for (int i : key) image.push_back(rho(i));
      std::sort(image.begin(), image.end());
      relabeled[std::move(image)] = count;
    }
    return relabeled == cells_;
  }

  const std::vector<int>& subfamily() const { return subfamily_; }

private:
  std::vector<int> subfamily_;
  VennCellMap cells_;
};

std::vector<int> union_of_parts(const CardinalityPartition& w,
                                const std::vector<int>& part_ids) {
  std::vector<int> out;
  for (int id : part_ids)
    out.insert(out.end(), w.parts[static_cast<std::size_t>(id)].begin(),
               w.parts[static_cast<std::size_t>(id)].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TowerStepResult tower_step(const SimpleFamily& family, const CardinalityPartition& w,
                           const PermGroup& gamma_prev, int antichain) {
  const int k = static_cast<int>(w.parts.size());
  std::vector<int> t_parts;  // distinct part ids whose union is T

  for (int p = 1; p <= antichain; ++p) {
    int found_q = -1;
    for (int q = 1; q <= k; ++q) {
      std::vector<int> t1_parts;
      for (int i = 0; i < q; ++i) t1_parts.push_back(i);
      for (int id : t_parts)
        if (id >= q) t1_parts.push_back(id);
      VennProbe probe(family, union_of_parts(w, t1_parts));
      bool failed = false;
      for (const Perm& g : gamma_prev.generators()) {
        if (!probe.good(g)) {
          failed = true;
          break;
        }
      }
      if (failed) {
        found_q = q;
        break;
      }
    }
    if (found_q < 0) {
      // ran through q = k+1: the whole family is Venn-good with every generator
      return TowerStepResult{true, {}, PermGroup(family.size()), 1};
    }
    if (std::find(t_parts.begin(), t_parts.end(), found_q - 1) == t_parts.end())
      t_parts.push_back(found_q - 1);
    if (found_q == 1 || p == antichain) break;
  }

  std::sort(t_parts.begin(), t_parts.end());
  VennProbe probe(family, union_of_parts(w, t_parts));
  // the scan can only exit on a union that genuinely fails for some generator
  bool t_fails = false;
  for (const Perm& g : gamma_prev.generators())
    if (!probe.good(g)) {
      t_fails = true;
      break;
    }
  if (!t_fails)
    throw std::logic_error("tower step left the scan without a failing subfamily");
  auto sub = subgroup_by_membership(
      gamma_prev, [&probe](const Perm& rho) { return probe.good(rho); },
      sat_factorial_pow(antichain));
  return TowerStepResult{false, t_parts, std::move(sub.group), sub.index};
}

AutomSetResult autom_set(const ColoredSetFamily& family) {
  SimpleFamily simple = simplify(family);
  const int a = std::max(1, max_antichain(simple.sets));
  CardinalityPartition w = cardinality_partition(simple);

  PermGroup gamma = symmetric_product(w.parts, simple.size());
  TowerTrace trace;
  trace.initial_order = gamma.order();

  const std::uint64_t step_cap = trace.initial_order.bit_length() + 1;
  for (std::uint64_t i = 1; i <= step_cap + 1; ++i) {
    TowerStepResult res = tower_step(simple, w, gamma, a);
    if (res.all_good) break;
    if (res.gamma_next.order() >= gamma.order())
      throw IndexBoundExceeded("tower step did not refine strictly");
    TowerStep step;
    step.step = static_cast<int>(i);
    step.part_indices = res.part_indices;
    step.order = res.gamma_next.order();
    step.index = res.index;
    trace.steps.push_back(std::move(step));
    gamma = std::move(res.gamma_next);
  }

  PermGroup expanded = expand_solution(gamma, family, simple);
  return AutomSetResult{std::move(expanded), std::move(trace), a};
}

int max_antichain(const std::vector<std::vector<int>>& sets_in) {
  std::set<std::vector<int>> distinct(sets_in.begin(), sets_in.end());
  std::vector<std::vector<int>> sets(distinct.begin(), distinct.end());
  const int n = static_cast<int>(sets.size());
  if (n == 0) return 0;

  auto comparable = [&](int i, int j) {
    const auto& a = sets[static_cast<std::size_t>(i)];
    const auto& b = sets[static_cast<std::size_t>(j)];
    if (a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()))
      return true;
    return b.size() <= a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
  };

  // seed: same-cardinality sets are pairwise incomparable
  std::map<std::size_t, int> by_card;
  int best = 1;
  for (const auto& s : sets) best = std::max(best, ++by_card[s.size()]);

  // branch and bound on the incomparability graph
  std::vector<std::vector<char>> incomp(static_cast<std::size_t>(n),
                                        std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      incomp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          incomp[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              !comparable(i, j);

  std::vector<int> cand(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cand[static_cast<std::size_t>(i)] = i;

  auto rec = [&](auto&& self, const std::vector<int>& candidates, int size) -> void {
    if (size > best) best = size;
    if (size + static_cast<int>(candidates.size()) <= best) return;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (size + static_cast<int>(candidates.size() - i) <= best) return;
      int v = candidates[i];
      std::vector<int> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (incomp[static_cast<std::size_t>(v)][static_cast<std::size_t>(candidates[j])])
          next.push_back(candidates[j]);
      self(self, next, size + 1);
    }
  };
  rec(rec, cand, 0);
  return best;
}

}  // namespace setaut
