#include "setaut/marked.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "setaut/errors.hpp"

namespace setaut {

MarkedInstance::MarkedInstance(Graph graph, std::vector<FamilyEntry> marked)
    : graph_(std::move(graph)), marked_(std::move(marked)) {
  const int n = graph_.vertex_count();
  for (const FamilyEntry& e : marked_) {
    if (e.set.empty()) throw ValidationError("empty marked set");
    if (e.multiplicity < 1) throw ValidationError("multiplicity must be positive");
    for (std::size_t i = 0; i < e.set.size(); ++i) {
      if (e.set[i] < 0 || e.set[i] >= n)
        throw ValidationError("marked set vertex out of range");
      if (i > 0 && e.set[i - 1] >= e.set[i])
        throw ValidationError("marked set must be strictly sorted");
    }
    for (std::size_t i = 0; i < e.set.size(); ++i)
      for (std::size_t j = i + 1; j < e.set.size(); ++j)
        if (!graph_.adjacent(e.set[i], e.set[j]))
          throw MarkedSetNotClique("marked set does not induce a clique");
  }
  std::sort(marked_.begin(), marked_.end(), [](const FamilyEntry& a, const FamilyEntry& b) {
    return std::tuple(a.color, a.set.size(), a.set) <
           std::tuple(b.color, b.set.size(), b.set);
  });
  for (std::size_t i = 1; i < marked_.size(); ++i)
    if (marked_[i - 1].set == marked_[i].set && marked_[i - 1].color == marked_[i].color)
      throw ValidationError("duplicate (set, color) marked entry; use multiplicity");
  for (const FamilyEntry& e : marked_) color_count_ = std::max(color_count_, e.color + 1);
}

CleanClassification classify_clean(const PQTree& tree, const MarkedInstance& inst) {
  std::vector<char> in_marked(static_cast<std::size_t>(inst.graph().vertex_count()), 0);
  for (const FamilyEntry& e : inst.marked())
    for (int v : e.set) in_marked[static_cast<std::size_t>(v)] = 1;

  CleanClassification out;
  out.node_clean.assign(static_cast<std::size_t>(tree.node_count()), 1);
  out.subtree_clean.assign(static_cast<std::size_t>(tree.node_count()), 1);
  for (int x = 0; x < tree.node_count(); ++x)
    for (int v : tree.node(x).inner)
      if (in_marked[static_cast<std::size_t>(v)]) out.node_clean[static_cast<std::size_t>(x)] = 0;

  // children precede parents in no particular arena order; walk bottom-up
  // by depth instead
  std::vector<int> order(static_cast<std::size_t>(tree.node_count()));
  for (int x = 0; x < tree.node_count(); ++x) order[static_cast<std::size_t>(x)] = x;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return tree.node(a).depth > tree.node(b).depth;
  });
  for (int x : order) {
    char clean = out.node_clean[static_cast<std::size_t>(x)];
    for (int c : tree.node(x).children)
      if (!out.subtree_clean[static_cast<std::size_t>(c)]) clean = 0;
    out.subtree_clean[static_cast<std::size_t>(x)] = clean;
  }
  for (int x = 0; x < tree.node_count(); ++x)
    if (!out.subtree_clean[static_cast<std::size_t>(x)]) out.t_prime.push_back(x);
  return out;
}

SetAnnotation annotate_set(const PQTree& tree, const Graph& g,
                           const std::vector<int>& marked_set) {
  for (std::size_t i = 0; i < marked_set.size(); ++i)
    for (std::size_t j = i + 1; j < marked_set.size(); ++j)
      if (!g.adjacent(marked_set[i], marked_set[j]))
        throw MarkedSetNotClique("annotated set does not induce a clique");

  // nodes holding the set's elements must form a chain in tree order
  std::set<int> nodes;
  for (int v : marked_set) nodes.insert(tree.inner_node_of(v));
  std::vector<int> chain(nodes.begin(), nodes.end());
  std::sort(chain.begin(), chain.end(),
            [&](int a, int b) { return tree.node(a).depth < tree.node(b).depth; });
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    int descendant = chain[i + 1];
    int walker = descendant;
    while (walker >= 0 && walker != chain[i]) walker = tree.node(walker).parent;
    if (walker != chain[i])
      throw std::logic_error("marked-set nodes do not lie on a root-to-leaf path");
  }

  // Per level: node kind, element count, and at Q-nodes the child-index
  // spans of the elements, read in the node's canonical orientation. A
  // reversal-symmetric node contributes the lex-min of the whole span
  // multiset and its mirror image: the orientation is one choice per node,
  // so spans must be folded jointly, not element by element. An
  // orientation-pinned node keeps its exact spans; reversal-collapsed ranks
  // would identify sets on opposite ends that no automorphism can exchange.
  std::map<int, std::tuple<char, int, int, std::vector<std::pair<int, int>>>> levels;
  for (int v : marked_set) {
    int x = tree.inner_node_of(v);
    const auto& node = tree.node(x);
    char tag = node.kind == NodeKind::Leaf ? 'L' : (node.kind == NodeKind::P ? 'P' : 'Q');
    auto& [kind, node_id, count, spans] = levels[node.depth];
    kind = tag;
    node_id = x;
    ++count;
    if (node.kind == NodeKind::Q) spans.push_back(tree.inner_span(v));
  }
  std::string key;
  for (auto& [depth, data] : levels) {
    auto& [kind, node_id, count, spans] = data;
    std::sort(spans.begin(), spans.end());
    const auto& node = tree.node(node_id);
    if (node.kind == NodeKind::Q && node.reversal_tied) {
      const int k = static_cast<int>(node.children.size());
      std::vector<std::pair<int, int>> mirrored;
      mirrored.reserve(spans.size());
      for (auto [lo, hi] : spans) mirrored.emplace_back(k - 1 - hi, k - 1 - lo);
      std::sort(mirrored.begin(), mirrored.end());
      spans = std::min(spans, mirrored);
    }
    key += "d" + std::to_string(depth) + kind + "c" + std::to_string(count);
    for (auto [lo, hi] : spans)
      key += "(" + std::to_string(lo) + "-" + std::to_string(hi) + ")";
    key += ";";
  }
  return SetAnnotation{key};
}

std::vector<SetAnnotation> annotate_sets(const PQTree& tree, const MarkedInstance& inst) {
  std::vector<SetAnnotation> out;
  for (const FamilyEntry& e : inst.marked())
    out.push_back(annotate_set(tree, inst.graph(), e.set));
  return out;
}

std::vector<std::vector<int>> node_sets(const PQTree& tree,
                                        const std::vector<int>& t_prime) {
  std::vector<std::vector<int>> out;
  for (int x : t_prime) {
    std::set<int> vertices;
    for (int c : tree.node(x).leaf_cliques)
      for (int v : tree.cliques()[static_cast<std::size_t>(c)]) vertices.insert(v);
    out.emplace_back(vertices.begin(), vertices.end());
  }
  return out;
}

ReducedInstance reduce(const MarkedInstance& inst) {
  PQTree tree = build_pq_tree(inst.graph());
  return reduce(inst, tree);
}

ReducedInstance reduce(const MarkedInstance& inst, const PQTree& tree) {
  auto annotations = annotate_sets(tree, inst);
  auto clean = classify_clean(tree, inst);

  // B-parts: refine input colors by set annotation
  std::map<std::pair<int, std::string>, int> b_class;
  for (std::size_t i = 0; i < inst.marked().size(); ++i)
    b_class.emplace(std::pair(inst.marked()[i].color, annotations[i].key), 0);
  int next = 0;
  for (auto& [key, id] : b_class) id = next++;
  const int b_colors = next;

  std::vector<FamilyEntry> entries;
  std::vector<std::pair<std::vector<int>, int>> entry_keys;  // (set, color) per entry
  std::vector<int> origins;
  for (std::size_t i = 0; i < inst.marked().size(); ++i) {
    const FamilyEntry& e = inst.marked()[i];
    int color = b_class.at({e.color, annotations[i].key});
    entries.push_back(FamilyEntry{e.set, color, e.multiplicity});
    origins.push_back(static_cast<int>(i));
  }

  // C-parts: one set per T' node, colored by the node annotation (pruned
  // canonical code over the clean child subtrees, with position markers).
  // Under a Q-node parent the annotation also carries the child's position
  // class: the exact index in the parent's canonical orientation, folded
  // with its mirror only when the parent is reversal-symmetric. Without it,
  // equally-shaped children at opposite ends of an orientation-pinned
  // Q-node would be free to swap in the set-family instance.
  auto c_sets = node_sets(tree, clean.t_prime);
  std::map<std::string, int> c_class;
  std::vector<std::string> node_ann;
  for (std::size_t i = 0; i < clean.t_prime.size(); ++i) {
    int q = clean.t_prime[i];
    std::string ann =
        canonical_code_pruned(tree, q, [&](int child) {
          return clean.subtree_clean[static_cast<std::size_t>(child)] != 0;
        }).key;
    int parent = tree.node(q).parent;
    if (parent >= 0 && tree.node(parent).kind == NodeKind::Q) {
      const auto& pn = tree.node(parent);
      const int k = static_cast<int>(pn.children.size());
      int pos = static_cast<int>(
          std::find(pn.children.begin(), pn.children.end(), q) - pn.children.begin());
      if (pn.reversal_tied) pos = std::min(pos, k - 1 - pos);
      ann += "@pos" + std::to_string(pos);
    }
    node_ann.push_back(ann);
    c_class.emplace(ann, 0);
  }
  next = 0;
  for (auto& [key, id] : c_class) id = next++;

  // equal (set, color) pairs from different T' nodes merge via multiplicity
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> c_nodes;
  for (std::size_t i = 0; i < clean.t_prime.size(); ++i) {
    int color = b_colors + c_class.at(node_ann[i]);
    c_nodes[{c_sets[i], color}].push_back(clean.t_prime[i]);
  }
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> nodes_of;
  for (const auto& [key, nodes] : c_nodes) {
    entries.push_back(FamilyEntry{key.first, key.second, static_cast<int>(nodes.size())});
    origins.push_back(-1);
    nodes_of[key] = nodes;
  }

  ReducedInstance out;
  out.b_colors = b_colors;
  out.set_instance = ColoredSetFamily(inst.graph().vertex_count(), entries);
  // recover entry origins after the family's canonical sort
  std::map<std::pair<std::vector<int>, int>, int> origin_of;
  for (std::size_t i = 0; i < entries.size(); ++i)
    origin_of[{entries[i].set, entries[i].color}] = origins[i];
  for (const FamilyEntry& e : out.set_instance.entries()) {
    out.entry_origin.push_back(origin_of.at({e.set, e.color}));
    auto it = nodes_of.find({e.set, e.color});
    out.entry_nodes.push_back(it == nodes_of.end() ? std::vector<int>{} : it->second);
  }
  return out;
}

RealizabilityOracle::RealizabilityOracle(const MarkedInstance& inst, const PQTree& tree,
                                         const CleanClassification& clean,
                                         const ReducedInstance& reduced)
    : tree_(tree), clean_(clean) {
  root_ = tree.root();
  data_.assign(static_cast<std::size_t>(tree.node_count()), {});
  entry_nodes_ = reduced.entry_nodes;

  for (std::size_t e = 0; e < entry_nodes_.size(); ++e)
    for (int q : entry_nodes_[e]) data_[static_cast<std::size_t>(q)].entry = static_cast<int>(e);

  // marked pattern per vertex: which B-part entries contain it
  const auto& entries = reduced.set_instance.entries();
  std::vector<std::vector<int>> raw_pattern(
      static_cast<std::size_t>(inst.graph().vertex_count()));
  for (std::size_t e = 0; e < entries.size(); ++e) {
    if (reduced.entry_origin[e] < 0) continue;
    for (int v : entries[e].set)
      raw_pattern[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));
  }
  std::map<std::vector<int>, int> pattern_ids;
  pattern_of_vertex_.assign(raw_pattern.size(), -1);
  for (std::size_t v = 0; v < raw_pattern.size(); ++v) {
    auto [it, fresh] =
        pattern_ids.emplace(raw_pattern[v], static_cast<int>(patterns_.size()));
    if (fresh) patterns_.push_back(raw_pattern[v]);
    pattern_of_vertex_[v] = it->second;
  }

  for (int q : clean.t_prime) {
    auto& nd = data_[static_cast<std::size_t>(q)];
    const auto& node = tree.node(q);
    for (std::size_t p = 0; p < node.children.size(); ++p)
      if (!clean.subtree_clean[static_cast<std::size_t>(node.children[p])])
        nd.nonclean_children.push_back(static_cast<int>(p));
    for (int v : node.inner) {
      auto [lo, hi] = tree.inner_span(v);
      ++nd.buckets[{lo, hi, pattern_of_vertex_[static_cast<std::size_t>(v)]}];
    }
  }
}

bool RealizabilityOracle::buckets_match(int q, int target, bool flip,
                                        const std::vector<int>& entry_map) const {
  const auto& src = data_[static_cast<std::size_t>(q)].buckets;
  const auto& dst = data_[static_cast<std::size_t>(target)].buckets;
  if (src.size() != dst.size()) return false;
  const int k = static_cast<int>(tree_.node(q).children.size());
  for (const auto& [key, count] : src) {
    auto [lo, hi, pid] = key;
    if (flip && lo >= 0) std::tie(lo, hi) = std::pair(k - 1 - hi, k - 1 - lo);
    std::vector<int> image;
    image.reserve(patterns_[static_cast<std::size_t>(pid)].size());
    for (int b : patterns_[static_cast<std::size_t>(pid)])
      image.push_back(entry_map[static_cast<std::size_t>(b)]);
    std::sort(image.begin(), image.end());
    // the image pattern must exist with the same count
    int image_pid = -1;
    for (std::size_t i = 0; i < patterns_.size(); ++i)
      if (patterns_[i] == image) {
        image_pid = static_cast<int>(i);
        break;
      }
    if (image_pid < 0) return false;
    auto it = dst.find({lo, hi, image_pid});
    if (it == dst.end() || it->second != count) return false;
  }
  return true;
}

bool RealizabilityOracle::try_orientation(int q, int target, bool flip,
                                          const std::vector<int>& entry_map) const {
  const auto& qc = tree_.node(q).children;
  const auto& tc = tree_.node(target).children;
  if (qc.size() != tc.size()) return false;
  const int k = static_cast<int>(qc.size());
  if (!buckets_match(q, target, flip, entry_map)) return false;
  for (int p = 0; p < k; ++p) {
    int c = qc[static_cast<std::size_t>(p)];
    int c2 = tc[static_cast<std::size_t>(flip ? k - 1 - p : p)];
    bool clean_c = clean_.subtree_clean[static_cast<std::size_t>(c)] != 0;
    bool clean_c2 = clean_.subtree_clean[static_cast<std::size_t>(c2)] != 0;
    if (clean_c != clean_c2) return false;
    if (clean_c) {
      if (tree_.code(c) != tree_.code(c2)) return false;
      continue;
    }
    int ce = data_[static_cast<std::size_t>(c)].entry;
    int c2e = data_[static_cast<std::size_t>(c2)].entry;
    if (entry_map[static_cast<std::size_t>(ce)] != c2e) return false;
    if (!assign(c, c2, entry_map)) return false;
  }
  return true;
}

bool RealizabilityOracle::assign(int q, int target, const std::vector<int>& entry_map) const {
  const auto& qn = tree_.node(q);
  const auto& tn = tree_.node(target);
  if (qn.kind != tn.kind) return false;

  if (qn.kind == NodeKind::Leaf) return buckets_match(q, target, false, entry_map);

  if (qn.kind == NodeKind::Q) {
    return try_orientation(q, target, false, entry_map) ||
           try_orientation(q, target, true, entry_map);
  }

  // P-node: children move freely; clean children must match as a code
  // multiset, non-clean children by entry with backtracking within groups
  if (!buckets_match(q, target, false, entry_map)) return false;
  std::multiset<std::string> clean_src, clean_dst;
  std::vector<int> nc_src, nc_dst;
  for (int c : qn.children) {
    if (clean_.subtree_clean[static_cast<std::size_t>(c)])
      clean_src.insert(tree_.code(c).key);
    else
      nc_src.push_back(c);
  }
  for (int c : tn.children) {
    if (clean_.subtree_clean[static_cast<std::size_t>(c)])
      clean_dst.insert(tree_.code(c).key);
    else
      nc_dst.push_back(c);
  }
  if (clean_src != clean_dst || nc_src.size() != nc_dst.size()) return false;

  std::vector<char> used(nc_dst.size(), 0);
  auto match = [&](auto&& self, std::size_t i) -> bool {
    if (i == nc_src.size()) return true;
    int ce = data_[static_cast<std::size_t>(nc_src[i])].entry;
    for (std::size_t j = 0; j < nc_dst.size(); ++j) {
      if (used[j]) continue;
      if (entry_map[static_cast<std::size_t>(ce)] !=
          data_[static_cast<std::size_t>(nc_dst[j])].entry)
        continue;
      if (!assign(nc_src[i], nc_dst[j], entry_map)) continue;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return match(match, 0);
}

bool RealizabilityOracle::entry_action_realizable(const std::vector<int>& entry_map) const {
  if (clean_.t_prime.empty()) return true;
  // the tree root is the unique T' node without a T' parent, so it must map
  // to itself; everything else follows top-down
  int root_entry = data_[static_cast<std::size_t>(root_)].entry;
  const auto& root_targets =
      entry_nodes_[static_cast<std::size_t>(entry_map[static_cast<std::size_t>(root_entry)])];
  if (std::find(root_targets.begin(), root_targets.end(), root_) == root_targets.end())
    return false;
  return assign(root_, root_, entry_map);
}

AutomMarkedResult autom_marked_int(const MarkedInstance& inst) {
  if (inst.marked().empty())
    return AutomMarkedResult{PermGroup(0), TowerTrace{}, 0};

  PQTree tree = build_pq_tree(inst.graph());
  CleanClassification clean = classify_clean(tree, inst);
  ReducedInstance reduced = reduce(inst, tree);
  AutomSetResult solved = autom_set(reduced.set_instance);

  const auto& entries = reduced.set_instance.entries();
  std::vector<int> first_point_of(entries.size(), 0);
  std::vector<int> entry_of_point;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    first_point_of[e] = static_cast<int>(entry_of_point.size());
    for (int c = 0; c < entries[e].multiplicity; ++c)
      entry_of_point.push_back(static_cast<int>(e));
  }

  // Cut the set-family solution down to the entry actions that genuinely
  // lift to marking-preserving automorphisms: the family cannot couple the
  // per-node orientation choices, the realizability test can.
  if (!clean.t_prime.empty() && !solved.group.is_trivial()) {
    RealizabilityOracle realizable(inst, tree, clean, reduced);
    std::map<std::vector<int>, bool> memo;
    auto predicate = [&](const Perm& g) {
      std::vector<int> em(entries.size());
      for (std::size_t e = 0; e < entries.size(); ++e)
        em[e] = entry_of_point[static_cast<std::size_t>(g(first_point_of[e]))];
      auto [it, fresh] = memo.emplace(std::move(em), false);
      if (fresh) it->second = realizable.entry_action_realizable(it->first);
      return it->second;
    };
    solved.group = subgroup_by_membership(solved.group, predicate, 1ull << 30).group;
  }
  // The marked-set points form an invariant subdomain: B-colors and C-colors
  // never mix. List them in the canonical order of the original entries so
  // the restricted domain matches the instance's own multiset domain.
  std::vector<int> by_origin(inst.marked().size(), -1);
  for (std::size_t e = 0; e < entries.size(); ++e)
    if (reduced.entry_origin[e] >= 0)
      by_origin[static_cast<std::size_t>(reduced.entry_origin[e])] = static_cast<int>(e);

  std::vector<int> subdomain;
  for (std::size_t o = 0; o < inst.marked().size(); ++o) {
    int e = by_origin[o];
    if (e < 0) throw std::logic_error("marked entry lost in reduction");
    for (int c = 0; c < entries[static_cast<std::size_t>(e)].multiplicity; ++c)
      subdomain.push_back(first_point_of[static_cast<std::size_t>(e)] + c);
  }

  return AutomMarkedResult{restrict_group(solved.group, subdomain),
                           std::move(solved.trace), solved.antichain};
}

}  // namespace setaut
