#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "setaut/errors.hpp"
#include "setaut/interval_pq.hpp"
#include "setaut/io.hpp"
#include "setaut/marked.hpp"
#include "setaut/oracle.hpp"
#include "setaut/set_family.hpp"

namespace {

using namespace setaut;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BigUint tower_index_bound(int antichain) {
  BigUint fact = BigUint::factorial(static_cast<std::uint64_t>(antichain));
  BigUint bound(1);
  for (int i = 0; i < antichain; ++i) bound *= fact;
  return bound;
}

// 0 = within bounds; otherwise the number of violated steps.
int tower_bound_violations(const TowerTrace& trace, int antichain) {
  int violations = 0;
  if (BigUint(trace.steps.size()) > BigUint(trace.initial_order.bit_length()))
    ++violations;
  BigUint bound = tower_index_bound(antichain);
  BigUint prev = trace.initial_order;
  for (const auto& step : trace.steps) {
    if (step.order * bound < prev) ++violations;
    if (BigUint(step.index) > bound) ++violations;
    prev = step.order;
  }
  return violations;
}

int cmd_autoset(const std::string& path, bool with_trace, bool with_oracle) {
  InstanceDoc doc = parse_instance(read_file(path));
  ColoredSetFamily family = to_set_family(doc);
  AutomSetResult result = autom_set(family);

  ResultDoc out = make_result(family.entries(), doc.color_names, result.group);
  if (with_trace) attach_trace(out, result.trace, result.antichain);
  std::cout << render_result(out);

  if (with_oracle) {
    auto brute = oracle::brute_autom_set(family);
    if (!oracle::action_groups_equal(result.group, brute)) {
      std::cerr << "oracle: MISMATCH (pipeline order " << result.group.order().to_string()
                << ", brute-force order " << brute.order.to_string() << ")\n";
      return 4;
    }
    std::cerr << "oracle: groups match (order " << brute.order.to_string() << ")\n";
  }
  return 0;
}

int cmd_automarked(const std::string& path, bool with_trace, bool with_oracle) {
  InstanceDoc doc = parse_instance(read_file(path));
  MarkedInstance inst = to_marked_instance(doc);
  if (inst.marked().empty())
    std::cerr << "warning: empty marked family; the result is the trivial group "
                 "on an empty domain\n";
  AutomMarkedResult result = autom_marked_int(inst);

  ResultDoc out = make_result(inst.marked(), doc.color_names, result.group);
  if (with_trace) attach_trace(out, result.trace, result.antichain);
  std::cout << render_result(out);

  if (with_oracle) {
    auto brute = oracle::brute_autom_marked(inst);
    if (!oracle::action_groups_equal(result.group, brute)) {
      std::cerr << "oracle: MISMATCH (pipeline order " << result.group.order().to_string()
                << ", brute-force order " << brute.order.to_string() << ")\n";
      return 4;
    }
    std::cerr << "oracle: groups match (order " << brute.order.to_string() << ")\n";
  }
  return 0;
}

void dump_tree(const PQTree& tree, int node_id, const std::vector<std::string>& labels,
               int indent, std::ostream& os) {
  const auto& node = tree.node(node_id);
  auto name = [&](int v) {
    return v < static_cast<int>(labels.size()) ? labels[static_cast<std::size_t>(v)]
                                               : std::to_string(v);
  };
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
  if (node.kind == NodeKind::Leaf) {
    os << "leaf {";
    const auto& clique = tree.cliques()[static_cast<std::size_t>(node.clique)];
    for (std::size_t i = 0; i < clique.size(); ++i)
      os << (i ? " " : "") << name(clique[i]);
    os << "}";
  } else {
    os << (node.kind == NodeKind::P ? "P" : "Q") << " inner={";
    for (std::size_t i = 0; i < node.inner.size(); ++i)
      os << (i ? " " : "") << name(node.inner[i]);
    os << "}";
  }
  os << "\n";
  for (int c : node.children) dump_tree(tree, c, labels, indent + 1, os);
}

int cmd_pqtree(const std::string& path, bool dot) {
  InstanceDoc doc = parse_instance(read_file(path));
  Graph g = to_graph(doc);
  PQTree tree = build_pq_tree(g);
  if (dot) {
    std::cout << pq_tree_dot(tree, doc.labels);
  } else {
    std::cout << "cliques: " << tree.cliques().size() << "\n";
    dump_tree(tree, tree.root(), doc.labels, 0, std::cout);
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, int count, int max_n, bool marked) {
  int mismatches = 0, skipped = 0, bound_violations = 0;
  std::size_t max_steps = 0;
  std::uint64_t max_index = 0;
  for (int i = 0; i < count; ++i) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    try {
      if (marked) {
        auto inst = oracle::gen_interval_instance(s, 3 + static_cast<int>(s % std::max(1, max_n - 2)),
                                                  6, 3);
        auto brute = oracle::brute_autom_marked(inst);
        auto result = autom_marked_int(inst);
        if (!oracle::action_groups_equal(result.group, brute)) ++mismatches;
        bound_violations += tower_bound_violations(result.trace, result.antichain);
        max_steps = std::max(max_steps, result.trace.steps.size());
        for (const auto& st : result.trace.steps) max_index = std::max(max_index, st.index);
      } else {
        auto family = oracle::gen_set_family(s, max_n, 10, 3, 3);
        auto brute = oracle::brute_autom_set(family);
        auto result = autom_set(family);
        if (!oracle::action_groups_equal(result.group, brute)) ++mismatches;
        bound_violations += tower_bound_violations(result.trace, result.antichain);
        max_steps = std::max(max_steps, result.trace.steps.size());
        for (const auto& st : result.trace.steps) max_index = std::max(max_index, st.index);
      }
    } catch (const BudgetExceeded&) {
      ++skipped;  // oracle out of reach for this draw; not a failure
    }
  }
  std::cout << "instances: " << count << "\n"
            << "kind: " << (marked ? "automarked" : "autoset") << "\n"
            << "mismatches: " << mismatches << "\n"
            << "skipped (oracle budget): " << skipped << "\n"
            << "tower bound violations: " << bound_violations << "\n"
            << "max tower steps: " << max_steps << "\n"
            << "max step index: " << max_index << "\n";
  return (mismatches == 0 && bound_violations == 0) ? 0 : 1;
}

int cmd_oracle_autoset(const std::string& path) {
  InstanceDoc doc = parse_instance(read_file(path));
  ColoredSetFamily family = to_set_family(doc);
  auto brute = oracle::brute_autom_set(family);
  ResultDoc out;
  out.domain_entries = family.entries();
  out.color_names = doc.color_names;
  out.generators = brute.generating_set();
  out.order = brute.order.to_string();
  std::cout << render_result(out);
  return 0;
}

int cmd_oracle_automarked(const std::string& path) {
  InstanceDoc doc = parse_instance(read_file(path));
  MarkedInstance inst = to_marked_instance(doc);
  auto brute = oracle::brute_autom_marked(inst);
  ResultDoc out;
  out.domain_entries = inst.marked();
  out.color_names = doc.color_names;
  out.generators = brute.generating_set();
  out.order = brute.order.to_string();
  std::cout << render_result(out);
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
      return 3;
    case ErrorKind::IndexBoundExceeded:
      return 4;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"automorphism groups of colored set families and marked interval graphs"};
  app.require_subcommand(1);

  std::string path;
  bool with_trace = false, with_oracle = false, dot = false, marked = false;
  std::uint64_t seed = 1;
  int count = 100, max_n = 7;

  auto* autoset = app.add_subcommand("autoset", "automorphism group of a colored set family");
  autoset->add_option("instance", path, "instance file")->required();
  autoset->add_flag("--trace", with_trace, "emit the tower trace");
  autoset->add_flag("--oracle", with_oracle, "cross-check against brute force");

  auto* automarked =
      app.add_subcommand("automarked", "action of marking-preserving automorphisms");
  automarked->add_option("instance", path, "instance file")->required();
  automarked->add_flag("--trace", with_trace, "emit the tower trace");
  automarked->add_flag("--oracle", with_oracle, "cross-check against brute force");

  auto* pqtree = app.add_subcommand("pqtree", "PQ-tree of an interval graph");
  pqtree->add_option("instance", path, "instance file")->required();
  pqtree->add_flag("--dot", dot, "emit DOT instead of a text dump");

  auto* verify = app.add_subcommand("verify", "batch verification against the oracle");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--count", count, "number of instances");
  verify->add_option("--max-n", max_n, "maximum ground size");
  verify->add_flag("--marked", marked, "verify automarked instead of autoset");

  auto* orc = app.add_subcommand("oracle", "brute-force reference results");
  orc->require_subcommand(1);
  auto* orc_set = orc->add_subcommand("autoset", "brute-force AutomSET");
  orc_set->add_option("instance", path, "instance file")->required();
  auto* orc_marked = orc->add_subcommand("automarked", "brute-force AutomMarkedINT");
  orc_marked->add_option("instance", path, "instance file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(autoset)) return cmd_autoset(path, with_trace, with_oracle);
    if (app.got_subcommand(automarked)) return cmd_automarked(path, with_trace, with_oracle);
    if (app.got_subcommand(pqtree)) return cmd_pqtree(path, dot);
    if (app.got_subcommand(verify)) return cmd_verify(seed, count, max_n, marked);
    if (app.got_subcommand(orc)) {
      if (orc->got_subcommand(orc_set)) return cmd_oracle_autoset(path);
      return cmd_oracle_automarked(path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
