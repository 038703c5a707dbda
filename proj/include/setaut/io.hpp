#pragma once

#include <string>
#include <vector>

#include "setaut/marked.hpp"
#include "setaut/perm.hpp"
#include "setaut/perm_group.hpp"
#include "setaut/set_family.hpp"

namespace setaut {

// Parsed instance file: a ground/vertex count, optional labels, an optional
// edges section (its presence marks a graph instance), and colored families.
struct InstanceDoc {
  int n = 0;
  std::vector<std::string> labels;
  bool has_edges = false;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> color_names;  // in order of the color ids used below
  std::vector<FamilyEntry> entries;

  bool operator==(const InstanceDoc&) const = default;
};

InstanceDoc parse_instance(const std::string& text);
std::string render_instance(const InstanceDoc& doc);

// Pure set-family view; rejects instances with an edges section.
ColoredSetFamily to_set_family(const InstanceDoc& doc);
// Graph view; requires an edges section.
MarkedInstance to_marked_instance(const InstanceDoc& doc);
Graph to_graph(const InstanceDoc& doc);

// Result file: the multiset domain in canonical order, generators (image
// sequences and cycle notation), the exact order, and optionally the tower
// trace. Rendering is byte-deterministic for a fixed input.
struct ResultDoc {
  std::vector<std::string> color_names;
  std::vector<FamilyEntry> domain_entries;
  std::vector<Perm> generators;
  std::string order;
  bool has_trace = false;
  std::string initial_order;
  int antichain = 0;
  std::vector<TowerStep> trace_steps;

  bool operator==(const ResultDoc&) const = default;
};

ResultDoc parse_result(const std::string& text);
std::string render_result(const ResultDoc& doc);

ResultDoc make_result(const std::vector<FamilyEntry>& domain_entries,
                      const std::vector<std::string>& color_names,
                      const PermGroup& group);
void attach_trace(ResultDoc& doc, const TowerTrace& trace, int antichain);

}  // namespace setaut
