#include "setaut/interval_pq.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "setaut/errors.hpp"

namespace setaut {

// ---------------------------------------------------------------------------
// Lex-BFS, chordality, maximal cliques
// ---------------------------------------------------------------------------

std::vector<int> lex_bfs(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> label(static_cast<std::size_t>(n));
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      if (pick < 0 || label[static_cast<std::size_t>(v)] > label[static_cast<std::size_t>(pick)])
        pick = v;
    }
    visited[static_cast<std::size_t>(pick)] = 1;
    order.push_back(pick);
    for (int u : g.neighbors(pick))
      if (!visited[static_cast<std::size_t>(u)])
        label[static_cast<std::size_t>(u)].push_back(n - step);
  }
  return order;
}

namespace {

// Elimination order = reversed Lex-BFS; returns empty if the order is not a
// perfect elimination ordering (graph not chordal).
std::vector<int> perfect_elimination_order(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> elim = lex_bfs(g);
  std::reverse(elim.begin(), elim.end());
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(elim[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < n; ++i) {
    int v = elim[static_cast<std::size_t>(i)];
    std::vector<int> later;
    for (int u : g.neighbors(v))
      if (pos[static_cast<std::size_t>(u)] > i) later.push_back(u);
    if (later.empty()) continue;
    int first = later[0];
    for (int u : later)
      if (pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(first)]) first = u;
    for (int u : later)
      if (u != first && !g.adjacent(first, u)) return {};
  }
  return elim;
}

std::vector<std::vector<int>> cliques_from_peo(const Graph& g, const std::vector<int>& elim) {
  const int n = g.vertex_count();
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(elim[static_cast<std::size_t>(i)])] = i;
  std::vector<std::vector<int>> candidates;
  for (int i = 0; i < n; ++i) {
    int v = elim[static_cast<std::size_t>(i)];
    std::vector<int> c{v};
    for (int u : g.neighbors(v))
      if (pos[static_cast<std::size_t>(u)] > i) c.push_back(u);
    std::sort(c.begin(), c.end());
    candidates.push_back(std::move(c));
  }
  // keep the maximal ones
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::vector<int>> cliques;
  for (const auto& c : candidates) {
    bool dominated = false;
    for (const auto& kept : cliques)
      if (std::includes(kept.begin(), kept.end(), c.begin(), c.end())) {
        dominated = true;
        break;
      }
    if (!dominated) cliques.push_back(c);
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

// Bron-Kerbosch with pivoting, aborting once more cliques exist than an
// interval graph could have. Fallback path for non-chordal input so that
// build_pq_tree can report NotInterval rather than NotChordal.
void bron_kerbosch(const Graph& g, std::vector<int>& r, std::vector<int> p,
                   std::vector<int> x, std::vector<std::vector<int>>& out,
                   std::size_t cap) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    std::sort(out.back().begin(), out.back().end());
    if (out.size() > cap) throw NotInterval("too many maximal cliques");
    return;
  }
  int pivot = -1, best = -1;
  for (int u : p) {
    int cnt = 0;
    for (int w : p)
      if (g.adjacent(u, w)) ++cnt;
    if (cnt > best) best = cnt, pivot = u;
  }
  for (int u : x) {
    int cnt = 0;
    for (int w : p)
      if (g.adjacent(u, w)) ++cnt;
    if (cnt > best) best = cnt, pivot = u;
  }
  std::vector<int> ext;
  for (int v : p)
    if (pivot < 0 || !g.adjacent(pivot, v)) ext.push_back(v);
  for (int v : ext) {
    std::vector<int> p2, x2;
    for (int w : p)
      if (g.adjacent(v, w)) p2.push_back(w);
    for (int w : x)
      if (g.adjacent(v, w)) x2.push_back(w);
    r.push_back(v);
    bron_kerbosch(g, r, std::move(p2), std::move(x2), out, cap);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  if (g.vertex_count() == 0) throw EmptyGraph("no vertices");
  std::vector<int> elim = perfect_elimination_order(g);
  if (elim.empty()) throw NotChordal("no perfect elimination ordering exists");
  return cliques_from_peo(g, elim);
}

// ---------------------------------------------------------------------------
// PQ-tree reduction (Booth-Lueker templates, labels recomputed per pass)
// ---------------------------------------------------------------------------

namespace {

enum class Label { Empty, Full, Partial };

class PQBuilder {
public:
  struct BNode {
    NodeKind kind = NodeKind::Leaf;
    std::vector<int> children;
    int clique = -1;
  };

  explicit PQBuilder(int clique_count) {
    if (clique_count == 1) {
      root_ = make(NodeKind::Leaf, {});
      nodes_[static_cast<std::size_t>(root_)].clique = 0;
      return;
    }
    std::vector<int> leaves;
    for (int c = 0; c < clique_count; ++c) {
      int leaf = make(NodeKind::Leaf, {});
      nodes_[static_cast<std::size_t>(leaf)].clique = c;
      leaves.push_back(leaf);
    }
    root_ = make(NodeKind::P, std::move(leaves));
  }

  // Restrict the tree so the marked cliques are consecutive in every
  // frontier. Throws NotInterval if impossible.
  void reduce(const std::vector<char>& marked, int marked_count) {
    compute_counts(marked);
    if (marked_count <= 1 || marked_count == total_leaves_) return;
    int pert = root_;
    for (;;) {
      int next = -1;
      for (int c : nodes_[static_cast<std::size_t>(pert)].children)
        if (full_[static_cast<std::size_t>(c)] == marked_count) {
          next = c;
          break;
        }
      if (next < 0) break;
      pert = next;
    }
    if (full_[static_cast<std::size_t>(pert)] == leaves_[static_cast<std::size_t>(pert)])
      return;  // the marked set is exactly a subtree
    process(pert, true);
    root_ = compact(root_);
  }

  // Final shape pass: contract single-child nodes, turn two-child Q into P.
  void normalize() {
    root_ = compact(root_);
    for (auto& node : nodes_)
      if (node.kind == NodeKind::Q && node.children.size() == 2) node.kind = NodeKind::P;
  }

  int root() const { return root_; }
  const BNode& at(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

private:
  int make(NodeKind kind, std::vector<int> children) {
    nodes_.push_back(BNode{kind, std::move(children), -1});
    return static_cast<int>(nodes_.size() - 1);
  }

  void compute_counts(const std::vector<char>& marked) {
    full_.assign(nodes_.size(), 0);
    leaves_.assign(nodes_.size(), 0);
    count_rec(root_, marked);
    total_leaves_ = leaves_[static_cast<std::size_t>(root_)];
  }

  void count_rec(int x, const std::vector<char>& marked) {
    BNode& node = nodes_[static_cast<std::size_t>(x)];
    if (node.kind == NodeKind::Leaf) {
      leaves_[static_cast<std::size_t>(x)] = 1;
      full_[static_cast<std::size_t>(x)] = marked[static_cast<std::size_t>(node.clique)] ? 1 : 0;
      return;
    }
    for (int c : node.children) {
      count_rec(c, marked);
      leaves_[static_cast<std::size_t>(x)] += leaves_[static_cast<std::size_t>(c)];
      full_[static_cast<std::size_t>(x)] += full_[static_cast<std::size_t>(c)];
    }
  }

  Label child_label(int c) const {
    if (full_[static_cast<std::size_t>(c)] == 0) return Label::Empty;
    if (full_[static_cast<std::size_t>(c)] == leaves_[static_cast<std::size_t>(c)])
      return Label::Full;
    return Label::Partial;
  }

  // Wrap `ids` under a single node (a fresh P-node if several).
  int group(const std::vector<int>& ids) {
    if (ids.size() == 1) return ids[0];
    return make(NodeKind::P, ids);
  }

  // Restructure a mixed node. Non-root results are partial Q-nodes whose
  // children run full side first; the pertinent root is fixed up in place.
  void process(int x, bool is_root) {
    BNode& node = nodes_[static_cast<std::size_t>(x)];
    if (node.kind == NodeKind::Leaf)
      throw std::logic_error("pq reduce: leaf cannot be mixed");

    std::vector<int> empties, fulls, partials;
    std::vector<Label> labels;
    for (int c : node.children) {
      Label lab = child_label(c);
      if (lab == Label::Partial) process(c, false);
      labels.push_back(lab);
      if (lab == Label::Empty)
        empties.push_back(c);
      else if (lab == Label::Full)
        fulls.push_back(c);
      else
        partials.push_back(c);
    }

    if (node.kind == NodeKind::P) {
      if (!is_root) {
        if (partials.empty()) {
          // template P3
          int fg = group(fulls);
          int eg = group(empties);
          auto& me = nodes_[static_cast<std::size_t>(x)];
          me.kind = NodeKind::Q;
          me.children = {fg, eg};
        } else if (partials.size() == 1) {
          // template P5
          std::vector<int> kids;
          if (!fulls.empty()) kids.push_back(group(fulls));
          const auto& q = nodes_[static_cast<std::size_t>(partials[0])];
          kids.insert(kids.end(), q.children.begin(), q.children.end());
          if (!empties.empty()) kids.push_back(group(empties));
          auto& me = nodes_[static_cast<std::size_t>(x)];
          me.kind = NodeKind::Q;
          me.children = std::move(kids);
        } else {
          throw NotInterval("pq reduction failed (P-node, two partial children)");
        }
        return;
      }
      // pertinent root
      if (partials.empty()) {
        // template P2
        if (fulls.size() >= 2) {
          int fp = make(NodeKind::P, fulls);
          auto& me = nodes_[static_cast<std::size_t>(x)];
          me.children = empties;
          me.children.push_back(fp);
        }
      } else if (partials.size() == 1) {
        // template P4
        int q = partials[0];
        if (!fulls.empty()) {
          int fg = group(fulls);  // may reallocate the arena
          std::vector<int> kids{fg};
          const auto& qn = nodes_[static_cast<std::size_t>(q)];
          kids.insert(kids.end(), qn.children.begin(), qn.children.end());
          nodes_[static_cast<std::size_t>(q)].children = std::move(kids);
        }
        auto& me = nodes_[static_cast<std::size_t>(x)];
        me.children = empties;
        me.children.push_back(q);
      } else if (partials.size() == 2) {
        // template P6
        std::vector<int> kids(nodes_[static_cast<std::size_t>(partials[0])].children);
        std::reverse(kids.begin(), kids.end());
        if (!fulls.empty()) kids.push_back(group(fulls));
        const auto& q2 = nodes_[static_cast<std::size_t>(partials[1])];
        kids.insert(kids.end(), q2.children.begin(), q2.children.end());
        int qc = make(NodeKind::Q, std::move(kids));
        auto& me = nodes_[static_cast<std::size_t>(x)];
        me.children = empties;
        me.children.push_back(qc);
      } else {
        throw NotInterval("pq reduction failed (root P-node, three partial children)");
      }
      return;
    }

    // Q-node
    if (!is_root) {
      // template Q2: full children at one end, then at most one partial,
      // then empties; orient fulls to the front
      auto matches_forward = [&](const std::vector<Label>& l) {
        std::size_t i = 0;
        while (i < l.size() && l[i] == Label::Full) ++i;
        if (i < l.size() && l[i] == Label::Partial) ++i;
        for (; i < l.size(); ++i)
          if (l[i] != Label::Empty) return false;
        return true;
      };
      auto& me = nodes_[static_cast<std::size_t>(x)];
      if (!matches_forward(labels)) {
        std::reverse(labels.begin(), labels.end());
        std::reverse(me.children.begin(), me.children.end());
        if (!matches_forward(labels))
          throw NotInterval("pq reduction failed (Q-node, interior pertinent block)");
      }
      std::vector<int> kids;
      for (std::size_t i = 0; i < me.children.size(); ++i) {
        if (labels[i] == Label::Partial) {
          const auto& q = nodes_[static_cast<std::size_t>(me.children[i])];
          kids.insert(kids.end(), q.children.begin(), q.children.end());
        } else {
          kids.push_back(me.children[i]);
        }
      }
      nodes_[static_cast<std::size_t>(x)].children = std::move(kids);
      return;
    }
    // template Q3 at the pertinent root: E* [partial] F* [partial] E*
    std::size_t lo = 0, hi = labels.size();
    while (lo < labels.size() && labels[lo] == Label::Empty) ++lo;
    while (hi > 0 && labels[hi - 1] == Label::Empty) --hi;
    if (lo >= hi) throw std::logic_error("pq reduce: pertinent root with no full leaves");
    for (std::size_t i = lo; i < hi; ++i) {
      bool boundary = i == lo || i == hi - 1;
      if (labels[i] == Label::Empty ||
          (labels[i] == Label::Partial && !boundary))
        throw NotInterval("pq reduction failed (root Q-node, split pertinent block)");
    }
    auto& me = nodes_[static_cast<std::size_t>(x)];
    std::vector<int> kids;
    for (std::size_t i = 0; i < me.children.size(); ++i) {
      if (labels[i] != Label::Partial) {
        kids.push_back(me.children[i]);
        continue;
      }
      std::vector<int> sub = nodes_[static_cast<std::size_t>(me.children[i])].children;
      if (i == lo) std::reverse(sub.begin(), sub.end());  // full end faces inward
      kids.insert(kids.end(), sub.begin(), sub.end());
    }
    nodes_[static_cast<std::size_t>(x)].children = std::move(kids);
  }

  // Drop single-child chains.
  int compact(int x) {
    BNode& node = nodes_[static_cast<std::size_t>(x)];
    if (node.kind == NodeKind::Leaf) return x;
    std::vector<int> kids;
    for (int c : node.children) kids.push_back(compact(c));
    if (kids.size() == 1) return kids[0];
    nodes_[static_cast<std::size_t>(x)].children = std::move(kids);
    return x;
  }

  std::vector<BNode> nodes_;
  int root_ = -1;
  std::vector<int> full_, leaves_;
  int total_leaves_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Tree finalization: inner vertices, ranks, canonical form
// ---------------------------------------------------------------------------

namespace {

// Code of an internal node: the lex-min over the two orientations of the
// decorated child sequence (child codes plus the exact child-index spans of
// the node's inner vertices). Exact spans rather than reversal-collapsed
// ranks keep mirror-asymmetric Q-nodes apart.
std::string serialize_internal(NodeKind kind, const std::vector<std::string>& child_codes,
                               const std::vector<std::pair<int, int>>& spans,
                               std::size_t inner_count) {
  const int k = static_cast<int>(child_codes.size());
  auto render = [&](const std::vector<std::string>& seq,
                    std::vector<std::pair<int, int>> sp) {
    std::sort(sp.begin(), sp.end());
    std::string out = kind == NodeKind::P ? "P(n=" : "Q(n=";
    out += std::to_string(inner_count);
    if (kind == NodeKind::Q)
      for (auto [lo, hi] : sp)
        out += "|" + std::to_string(lo) + "-" + std::to_string(hi);
    out += ")[";
    for (const auto& c : seq) out += c + ",";
    out += "]";
    return out;
  };
  if (kind == NodeKind::P) {
    std::vector<std::string> seq = child_codes;
    std::sort(seq.begin(), seq.end());
    return render(seq, {});
  }
  std::vector<std::string> rev(child_codes.rbegin(), child_codes.rend());
  std::vector<std::pair<int, int>> mirrored;
  mirrored.reserve(spans.size());
  for (auto [lo, hi] : spans) mirrored.emplace_back(k - 1 - hi, k - 1 - lo);
  return std::min(render(child_codes, spans), render(rev, mirrored));
}

}  // namespace

struct PQTreeShaper {
  PQTree& t;
  std::vector<std::vector<int>> cliques_of_vertex;  // vertex -> sorted clique ids

  explicit PQTreeShaper(PQTree& tree) : t(tree) {}

  void copy_from_builder(const PQBuilder& b) {
    copy_rec(b, b.root(), -1, 0);
    t.root_ = 0;
  }

  int copy_rec(const PQBuilder& b, int src, int parent, int depth) {
    int id = static_cast<int>(t.nodes_.size());
    t.nodes_.push_back({});
    {
      auto& node = t.nodes_.back();
      node.kind = b.at(src).kind;
      node.parent = parent;
      node.depth = depth;
      node.clique = b.at(src).clique;
    }
    std::vector<int> kids;
    for (int c : b.at(src).children) kids.push_back(copy_rec(b, c, id, depth + 1));
    t.nodes_[static_cast<std::size_t>(id)].children = std::move(kids);
    return id;
  }

  void compute_leafsets(int x) {
    auto& node = t.nodes_[static_cast<std::size_t>(x)];
    if (node.kind == NodeKind::Leaf) {
      node.leaf_cliques = {node.clique};
      t.leaf_of_clique_[static_cast<std::size_t>(node.clique)] = x;
      return;
    }
    for (int c : node.children) {
      compute_leafsets(c);
      const auto& sub = t.nodes_[static_cast<std::size_t>(c)].leaf_cliques;
      node.leaf_cliques.insert(node.leaf_cliques.end(), sub.begin(), sub.end());
    }
    std::sort(node.leaf_cliques.begin(), node.leaf_cliques.end());
  }

  // Inner node of v = LCA of the leaves of the cliques containing v.
  void assign_inner_vertices() {
    const int n = t.vertex_count();
    cliques_of_vertex.assign(static_cast<std::size_t>(n), {});
    for (std::size_t c = 0; c < t.cliques_.size(); ++c)
      for (int v : t.cliques_[c])
        cliques_of_vertex[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));

    for (int v = 0; v < n; ++v) {
      const auto& kv = cliques_of_vertex[static_cast<std::size_t>(v)];
      if (kv.empty()) throw std::logic_error("vertex in no maximal clique");
      int node = t.leaf_of_clique_[static_cast<std::size_t>(kv[0])];
      for (std::size_t i = 1; i < kv.size(); ++i) {
        int other = t.leaf_of_clique_[static_cast<std::size_t>(kv[i])];
        node = lca(node, other);
      }
      t.inner_node_[static_cast<std::size_t>(v)] = node;
      t.nodes_[static_cast<std::size_t>(node)].inner.push_back(v);
    }
  }

  int lca(int a, int b) const {
    while (a != b) {
      if (t.nodes_[static_cast<std::size_t>(a)].depth <
          t.nodes_[static_cast<std::size_t>(b)].depth)
        std::swap(a, b);
      a = t.nodes_[static_cast<std::size_t>(a)].parent;
    }
    return a;
  }

  // Spans at Q-nodes; also asserts the containment-propagation invariant:
  // an inner vertex of p that touches a child covers that child entirely.
  void compute_spans() {
    for (int v = 0; v < t.vertex_count(); ++v) {
      int x = t.inner_node_[static_cast<std::size_t>(v)];
      const auto& node = t.nodes_[static_cast<std::size_t>(x)];
      const auto& kv = cliques_of_vertex[static_cast<std::size_t>(v)];
      if (node.kind != NodeKind::Q) {
        t.spans_[static_cast<std::size_t>(v)] = {-1, -1};
        if (node.kind == NodeKind::P) {
          // inner vertices of a P-node belong to all children
          if (kv.size() != node.leaf_cliques.size())
            throw std::logic_error("inner vertex of a P-node misses a child");
        }
        continue;
      }
      int lo = -1, hi = -1;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const auto& sub =
            t.nodes_[static_cast<std::size_t>(node.children[i])].leaf_cliques;
        bool touched = false;
        for (int c : sub)
          if (std::binary_search(kv.begin(), kv.end(), c)) {
            touched = true;
            break;
          }
        if (!touched) continue;
        if (!std::includes(kv.begin(), kv.end(), sub.begin(), sub.end()))
          throw std::logic_error("inner vertex covers a child only partially");
        if (lo < 0) lo = static_cast<int>(i);
        hi = static_cast<int>(i);
      }
      if (lo < 0 || hi <= lo)
        throw std::logic_error("inner vertex of a Q-node spans fewer than two children");
      t.spans_[static_cast<std::size_t>(v)] = {lo, hi};
    }
  }

  // Bottom-up canonicalization: sort P-children by code, orient Q-nodes by
  // (child code sequence, span profile), then serialize this node's code.
  std::string canonize(int x) {
    auto& node = t.nodes_[static_cast<std::size_t>(x)];
    std::vector<std::string> child_codes;
    for (int c : node.children) child_codes.push_back(canonize(c));

    if (node.kind == NodeKind::P) {
      std::vector<std::size_t> idx(node.children.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return child_codes[a] < child_codes[b];
      });
      std::vector<int> kids;
      std::vector<std::string> codes;
      for (std::size_t i : idx) {
        kids.push_back(node.children[i]);
        codes.push_back(child_codes[i]);
      }
      node.children = std::move(kids);
      child_codes = std::move(codes);
    } else if (node.kind == NodeKind::Q) {
      auto span_profile = [&](bool reversed) {
        const int k = static_cast<int>(node.children.size());
        std::map<std::pair<int, int>, int> prof;
        for (int v : node.inner) {
          auto [lo, hi] = t.spans_[static_cast<std::size_t>(v)];
          if (reversed) std::tie(lo, hi) = std::pair(k - 1 - hi, k - 1 - lo);
          ++prof[{lo, hi}];
        }
        return prof;
      };
      std::vector<std::string> rev_codes(child_codes.rbegin(), child_codes.rend());
      auto fwd_key = std::pair(child_codes, span_profile(false));
      auto rev_key = std::pair(rev_codes, span_profile(true));
      if (rev_key < fwd_key) {
        std::reverse(node.children.begin(), node.children.end());
        child_codes = std::move(rev_codes);
        const int k = static_cast<int>(node.children.size());
        for (int v : node.inner) {
          auto [lo, hi] = t.spans_[static_cast<std::size_t>(v)];
          t.spans_[static_cast<std::size_t>(v)] = {k - 1 - hi, k - 1 - lo};
        }
      } else if (rev_key == fwd_key) {
        node.reversal_tied = true;
      }
    }

    std::string code = serialize_node(x, child_codes);
    t.codes_[static_cast<std::size_t>(x)] = CanonicalCode{code};
    return code;
  }

  std::string serialize_node(int x, const std::vector<std::string>& child_codes) const {
    const auto& node = t.nodes_[static_cast<std::size_t>(x)];
    if (node.kind == NodeKind::Leaf) {
      return "L(" + std::to_string(t.cliques_[static_cast<std::size_t>(node.clique)].size()) +
             ";" + std::to_string(node.inner.size()) + ")";
    }
    std::vector<std::pair<int, int>> spans;
    for (int v : node.inner) spans.push_back(t.spans_[static_cast<std::size_t>(v)]);
    return serialize_internal(node.kind, child_codes, spans, node.inner.size());
  }

  void refresh_depths(int x, int parent, int depth) {
    auto& node = t.nodes_[static_cast<std::size_t>(x)];
    node.parent = parent;
    node.depth = depth;
    for (int c : node.children) refresh_depths(c, x, depth + 1);
  }
};

std::vector<int> PQTree::frontier() const {
  std::vector<int> out;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    const Node& node = nodes_[static_cast<std::size_t>(x)];
    if (node.kind == NodeKind::Leaf) {
      out.push_back(node.clique);
      continue;
    }
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

RankDescriptor PQTree::rank_of(int vertex) const {
  const Node& node = nodes_[static_cast<std::size_t>(inner_node_[static_cast<std::size_t>(vertex)])];
  if (node.kind != NodeKind::Q) return RankDescriptor{};
  auto [lo, hi] = spans_[static_cast<std::size_t>(vertex)];
  const int k = static_cast<int>(node.children.size());
  RankDescriptor out;
  for (int i = lo; i <= hi; ++i)
    out.palindromic_indices.push_back(std::min(i + 1, k - i));
  std::sort(out.palindromic_indices.begin(), out.palindromic_indices.end());
  return out;
}

std::pair<int, int> PQTree::inner_span(int vertex) const {
  return spans_[static_cast<std::size_t>(vertex)];
}

RankDescriptor rank(const PQTree& tree, int vertex) { return tree.rank_of(vertex); }

CanonicalCode canonical_code(const PQTree& tree, int node_id) {
  return tree.code(node_id);
}

PQTree build_pq_tree(const Graph& g) {
  if (g.vertex_count() == 0) throw EmptyGraph("cannot build a PQ-tree of an empty graph");

  std::vector<std::vector<int>> cliques;
  {
    std::vector<int> elim = perfect_elimination_order(g);
    if (!elim.empty()) {
      cliques = cliques_from_peo(g, elim);
    } else {
      // not chordal, hence not interval; enumerate just enough cliques to
      // let the reduction fail with the right error
      std::vector<int> r, p, x;
      for (int v = 0; v < g.vertex_count(); ++v) p.push_back(v);
      bron_kerbosch(g, r, std::move(p), {}, cliques,
                    static_cast<std::size_t>(g.vertex_count()));
      std::sort(cliques.begin(), cliques.end());
    }
  }

  const int k = static_cast<int>(cliques.size());
  PQBuilder builder(k);
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<char> marked(static_cast<std::size_t>(k), 0);
    int count = 0;
    for (int c = 0; c < k; ++c)
      if (std::binary_search(cliques[static_cast<std::size_t>(c)].begin(),
                             cliques[static_cast<std::size_t>(c)].end(), v)) {
        marked[static_cast<std::size_t>(c)] = 1;
        ++count;
      }
    builder.reduce(marked, count);
  }
  builder.normalize();

  PQTree t;
  t.cliques_ = cliques;
  t.leaf_of_clique_.assign(static_cast<std::size_t>(k), -1);
  t.inner_node_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  t.spans_.assign(static_cast<std::size_t>(g.vertex_count()), {-1, -1});

  PQTreeShaper shaper(t);
  shaper.copy_from_builder(builder);
  t.codes_.assign(t.nodes_.size(), CanonicalCode{});
  shaper.compute_leafsets(t.root_);
  shaper.assign_inner_vertices();
  shaper.compute_spans();
  shaper.canonize(t.root_);
  shaper.refresh_depths(t.root_, -1, 0);

  // every vertex's cliques must be consecutive in the frontier
  std::vector<int> order = t.frontier();
  std::vector<int> pos(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int lo = k, hi = -1, count = 0;
    for (int c = 0; c < k; ++c)
      if (std::binary_search(cliques[static_cast<std::size_t>(c)].begin(),
                             cliques[static_cast<std::size_t>(c)].end(), v)) {
        lo = std::min(lo, pos[static_cast<std::size_t>(c)]);
        hi = std::max(hi, pos[static_cast<std::size_t>(c)]);
        ++count;
      }
    if (hi - lo + 1 != count)
      throw std::logic_error("pq tree frontier violates consecutive ones");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Pruned codes (annotations of nodes with clean context)
// ---------------------------------------------------------------------------

namespace {

std::string pruned_code_rec(const PQTree& t, int x, const std::function<bool(int)>& keep,
                            bool prune_here) {
  const auto& node = t.node(x);
  if (node.kind == NodeKind::Leaf)
    return "L(" + std::to_string(t.cliques()[static_cast<std::size_t>(node.clique)].size()) +
           ";" + std::to_string(node.inner.size()) + ")";

  std::vector<std::string> child_codes;
  for (int c : node.children) {
    if (prune_here && !keep(c))
      child_codes.push_back("*");
    else
      child_codes.push_back(pruned_code_rec(t, c, keep, false));
  }
  std::vector<std::pair<int, int>> spans;
  for (int v : node.inner) spans.push_back(t.inner_span(v));
  return serialize_internal(node.kind, child_codes, spans, node.inner.size());
}

}  // namespace

CanonicalCode canonical_code_pruned(const PQTree& tree, int node_id,
                                    const std::function<bool(int)>& keep) {
  return CanonicalCode{pruned_code_rec(tree, node_id, keep, true)};
}

// ---------------------------------------------------------------------------
// Automorphism group
// ---------------------------------------------------------------------------

namespace {

// Builds explicit vertex correspondences between subtrees with equal codes.
// The recursive matching is the ground truth; codes act as a fast filter.
class TreeMatcher {
public:
  explicit TreeMatcher(const PQTree& t) : t_(t) {}

  bool match(int x, int y, std::vector<std::pair<int, int>>& out) {
    if (t_.code(x) != t_.code(y)) return false;
    const auto& nx = t_.node(x);
    const auto& ny = t_.node(y);
    if (nx.kind != ny.kind) return false;
    const std::size_t checkpoint = out.size();

    if (nx.kind == NodeKind::Leaf || nx.kind == NodeKind::P) {
      if (nx.inner.size() != ny.inner.size()) return false;
      for (std::size_t i = 0; i < nx.inner.size(); ++i)
        out.emplace_back(nx.inner[i], ny.inner[i]);
      if (nx.kind == NodeKind::Leaf) return true;
      if (match_p_children(nx.children, ny.children, out)) return true;
      out.resize(checkpoint);
      return false;
    }

    // Q-node: try both alignments
    for (int dir = 0; dir < 2; ++dir) {
      if (match_q(x, y, dir == 1, out)) return true;
      out.resize(checkpoint);
    }
    return false;
  }

private:
  bool match_p_children(const std::vector<int>& xs, const std::vector<int>& ys,
                        std::vector<std::pair<int, int>>& out) {
    if (xs.size() != ys.size()) return false;
    // group by code; within groups, backtrack over pairings
    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> groups;
    for (int c : xs) groups[t_.code(c).key].first.push_back(c);
    for (int c : ys) groups[t_.code(c).key].second.push_back(c);
    for (auto& [key, pair] : groups) {
      if (pair.first.size() != pair.second.size()) return false;
      std::vector<char> used(pair.second.size(), 0);
      if (!assign(pair.first, pair.second, 0, used, out)) return false;
    }
    return true;
  }

  bool assign(const std::vector<int>& xs, const std::vector<int>& ys, std::size_t i,
              std::vector<char>& used, std::vector<std::pair<int, int>>& out) {
    if (i == xs.size()) return true;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (used[j]) continue;
      const std::size_t checkpoint = out.size();
      if (match(xs[i], ys[j], out)) {
        used[j] = 1;
        if (assign(xs, ys, i + 1, used, out)) return true;
        used[j] = 0;
      }
      out.resize(checkpoint);
    }
    return false;
  }

  bool match_q(int x, int y, bool reversed, std::vector<std::pair<int, int>>& out) {
    const auto& nx = t_.node(x);
    const auto& ny = t_.node(y);
    if (nx.children.size() != ny.children.size()) return false;
    const int k = static_cast<int>(nx.children.size());
    const std::size_t checkpoint = out.size();
    for (int i = 0; i < k; ++i) {
      int yc = ny.children[static_cast<std::size_t>(reversed ? k - 1 - i : i)];
      if (!match(nx.children[static_cast<std::size_t>(i)], yc, out)) {
        out.resize(checkpoint);
        return false;
      }
    }
    // pair the nodes' own inner vertices by span class
    std::map<std::pair<int, int>, std::vector<int>> gx, gy;
    for (int v : nx.inner) gx[t_.inner_span(v)].push_back(v);
    for (int v : ny.inner) {
      auto [lo, hi] = t_.inner_span(v);
      if (reversed) std::tie(lo, hi) = std::pair(k - 1 - hi, k - 1 - lo);
      gy[{lo, hi}].push_back(v);
    }
    if (gx.size() != gy.size()) {
      out.resize(checkpoint);
      return false;
    }
    for (auto& [span, vx] : gx) {
      auto it = gy.find(span);
      if (it == gy.end() || it->second.size() != vx.size()) {
        out.resize(checkpoint);
        return false;
      }
      for (std::size_t i = 0; i < vx.size(); ++i)
        out.emplace_back(vx[i], it->second[i]);
    }
    return true;
  }

  const PQTree& t_;
};

Perm perm_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  for (auto [a, b] : pairs) {
    im[static_cast<std::size_t>(a)] = b;
    im[static_cast<std::size_t>(b)] = a;
  }
  return Perm(im);
}

// Swap map to vertex permutation for the Q-reversal at `x` (pairs subtree i
// with subtree k-1-i; self-paired middle and self-mirrored spans stay fixed).
Perm reversal_perm(const PQTree& t, int x, TreeMatcher& matcher, bool& ok) {
  const auto& node = t.node(x);
  const int k = static_cast<int>(node.children.size());
  std::vector<std::pair<int, int>> pairs;
  ok = true;
  for (int i = 0; i < k / 2; ++i) {
    if (!matcher.match(node.children[static_cast<std::size_t>(i)],
                       node.children[static_cast<std::size_t>(k - 1 - i)], pairs)) {
      ok = false;
      return Perm::identity(t.vertex_count());
    }
  }
  std::map<std::pair<int, int>, std::vector<int>> by_span;
  for (int v : node.inner) by_span[t.inner_span(v)].push_back(v);
  for (const auto& [span, vs] : by_span) {
    std::pair<int, int> mirror{k - 1 - span.second, k - 1 - span.first};
    if (mirror == span) continue;  // fixed
    if (mirror < span) continue;   // handled from the other side
    auto it = by_span.find(mirror);
    if (it == by_span.end() || it->second.size() != vs.size()) {
      ok = false;
      return Perm::identity(t.vertex_count());
    }
    for (std::size_t i = 0; i < vs.size(); ++i) pairs.emplace_back(vs[i], it->second[i]);
  }
  return perm_from_pairs(t.vertex_count(), pairs);
}

bool is_graph_automorphism(const Graph& g, const Perm& p) {
  const int n = g.vertex_count();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.adjacent(u, v) != g.adjacent(p(u), p(v))) return false;
  return true;
}

}  // namespace

PermGroup interval_automorphism_group(const Graph& g) {
  PQTree t = build_pq_tree(g);
  const int n = g.vertex_count();
  TreeMatcher matcher(t);
  std::vector<Perm> gens;

  auto push_gen = [&](Perm p) {
    if (p.is_identity()) return;
    if (!is_graph_automorphism(g, p))
      throw std::logic_error("emitted generator is not a graph automorphism");
    gens.push_back(std::move(p));
  };

  for (int x = 0; x < t.node_count(); ++x) {
    const auto& node = t.node(x);

    // vertices sharing node and rank span are interchangeable
    std::map<std::pair<int, int>, std::vector<int>> classes;
    for (int v : node.inner) classes[t.inner_span(v)].push_back(v);
    for (const auto& [span, vs] : classes)
      for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        push_gen(perm_from_pairs(n, {{vs[i], vs[i + 1]}}));

    if (node.kind == NodeKind::P) {
      // adjacent equal-code children, refined into matcher classes
      std::map<std::string, std::vector<int>> by_code;
      for (int c : node.children) by_code[t.code(c).key].push_back(c);
      for (const auto& [key, members] : by_code) {
        std::vector<std::vector<int>> match_classes;
        for (int c : members) {
          bool joined = false;
          for (auto& cls : match_classes) {
            std::vector<std::pair<int, int>> probe;
            if (matcher.match(cls[0], c, probe)) {
              cls.push_back(c);
              joined = true;
              break;
            }
          }
          if (!joined) match_classes.push_back({c});
        }
        for (const auto& cls : match_classes)
          for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
            std::vector<std::pair<int, int>> pairs;
            if (!matcher.match(cls[i], cls[i + 1], pairs))
              throw std::logic_error("match class members stopped matching");
            push_gen(perm_from_pairs(n, pairs));
          }
      }
    } else if (node.kind == NodeKind::Q && node.reversal_tied) {
      bool ok = false;
      Perm rev = reversal_perm(t, x, matcher, ok);
      if (ok) push_gen(std::move(rev));
    }
  }
  return PermGroup::from_generators(n, gens);
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

std::string pq_tree_dot(const PQTree& tree, const std::vector<std::string>& labels) {
  auto vertex_name = [&](int v) {
    if (v < static_cast<int>(labels.size())) return labels[static_cast<std::size_t>(v)];
    return std::to_string(v);
  };
  std::string out = "digraph pqtree {\n  node [fontname=\"monospace\"];\n";
  for (int x = 0; x < tree.node_count(); ++x) {
    const auto& node = tree.node(x);
    std::string inner;
    for (std::size_t i = 0; i < node.inner.size(); ++i) {
      if (i) inner += ' ';
      inner += vertex_name(node.inner[i]);
    }
    if (node.kind == NodeKind::Leaf) {
      std::string cl;
      for (std::size_t i = 0; i < tree.cliques()[static_cast<std::size_t>(node.clique)].size(); ++i) {
        if (i) cl += ' ';
        cl += vertex_name(tree.cliques()[static_cast<std::size_t>(node.clique)][i]);
      }
      out += "  n" + std::to_string(x) + " [shape=plaintext, label=\"" + cl + "\"];\n";
    } else if (node.kind == NodeKind::P) {
      out += "  n" + std::to_string(x) + " [shape=triangle, label=\"" + inner + "\"];\n";
    } else {
      out += "  n" + std::to_string(x) + " [shape=box, label=\"" + inner + "\"];\n";
    }
    for (int c : node.children)
      out += "  n" + std::to_string(x) + " -> n" + std::to_string(c) + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace setaut
