#include "setaut/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

#include "setaut/errors.hpp"

namespace setaut {

using nlohmann::json;

namespace {

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_and_column(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what());
  }
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ValidationError(std::string("missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

InstanceDoc parse_instance(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  InstanceDoc doc;
  doc.n = require_int(j, "n");
  if (doc.n < 0) throw ValidationError("negative ground size");

  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw ValidationError("'labels' must be an array");
    for (const auto& l : j["labels"]) doc.labels.push_back(l.get<std::string>());
    if (static_cast<int>(doc.labels.size()) != doc.n)
      throw ValidationError("'labels' must list one name per vertex");
  }

  if (j.contains("edges")) {
    doc.has_edges = true;
    if (!j["edges"].is_array()) throw ValidationError("'edges' must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw ValidationError("each edge must be a pair of vertex indices");
      doc.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }

  std::map<std::string, int> color_ids;
  if (j.contains("families")) {
    if (!j["families"].is_array()) throw ValidationError("'families' must be an array");
    for (const auto& fam : j["families"]) {
      if (!fam.is_object() || !fam.contains("color") || !fam.contains("sets"))
        throw ValidationError("each family needs 'color' and 'sets'");
      std::string name = fam["color"].get<std::string>();
      auto [it, fresh] = color_ids.emplace(name, static_cast<int>(doc.color_names.size()));
      if (fresh) doc.color_names.push_back(name);
      int color = it->second;
      for (const auto& s : fam["sets"]) {
        FamilyEntry entry;
        entry.color = color;
        if (s.is_array()) {
          for (const auto& v : s) entry.set.push_back(v.get<int>());
        } else if (s.is_object() && s.contains("set")) {
          for (const auto& v : s["set"]) entry.set.push_back(v.get<int>());
          if (s.contains("mult")) entry.multiplicity = s["mult"].get<int>();
        } else {
          throw ValidationError("each set must be an index list or {set, mult}");
        }
        std::sort(entry.set.begin(), entry.set.end());
        entry.set.erase(std::unique(entry.set.begin(), entry.set.end()), entry.set.end());
        doc.entries.push_back(std::move(entry));
      }
    }
  }
  return doc;
}

std::string render_instance(const InstanceDoc& doc) {
  json j;
  j["n"] = doc.n;
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  if (doc.has_edges) {
    json edges = json::array();
    for (auto [u, v] : doc.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
  }
  json families = json::array();
  for (std::size_t c = 0; c < doc.color_names.size(); ++c) {
    json fam;
    fam["color"] = doc.color_names[c];
    json sets = json::array();
    for (const auto& e : doc.entries) {
      if (e.color != static_cast<int>(c)) continue;
      json s;
      s["set"] = e.set;
      if (e.multiplicity != 1) s["mult"] = e.multiplicity;
      sets.push_back(std::move(s));
    }
    fam["sets"] = std::move(sets);
    families.push_back(std::move(fam));
  }
  j["families"] = std::move(families);
  return j.dump(2) + "\n";
}

ColoredSetFamily to_set_family(const InstanceDoc& doc) {
  if (doc.has_edges)
    throw ValidationError("set-family instance must not have an edges section");
  return ColoredSetFamily(doc.n, doc.entries);
}

Graph to_graph(const InstanceDoc& doc) {
  if (!doc.has_edges) throw ValidationError("graph instance requires an edges section");
  Graph g(doc.n);
  for (auto [u, v] : doc.edges) g.add_edge(u, v);
  g.labels = doc.labels;
  return g;
}

MarkedInstance to_marked_instance(const InstanceDoc& doc) {
  return MarkedInstance(to_graph(doc), doc.entries);
}

ResultDoc parse_result(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("result must be a JSON object");
  ResultDoc doc;
  doc.order = j.at("order").get<std::string>();
  for (const auto& name : j.at("colors")) doc.color_names.push_back(name.get<std::string>());
  std::map<std::pair<std::vector<int>, int>, int> seen;
  for (const auto& row : j.at("domain")) {
    std::vector<int> set = row.at("set").get<std::vector<int>>();
    int color = row.at("color").get<int>();
    if (row.at("copy").get<int>() == 0) {
      doc.domain_entries.push_back(FamilyEntry{set, color, 1});
      seen[{set, color}] = static_cast<int>(doc.domain_entries.size() - 1);
    } else {
      doc.domain_entries[static_cast<std::size_t>(seen.at({set, color}))].multiplicity++;
    }
  }
  for (const auto& g : j.at("generators"))
    doc.generators.emplace_back(g.at("images").get<std::vector<int>>());
  if (j.contains("trace")) {
    doc.has_trace = true;
    doc.initial_order = j["trace"].at("initial_order").get<std::string>();
    doc.antichain = j["trace"].at("antichain").get<int>();
    for (const auto& s : j["trace"].at("steps")) {
      TowerStep step;
      step.step = s.at("step").get<int>();
      step.part_indices = s.at("parts").get<std::vector<int>>();
      step.order = BigUint::from_string(s.at("order").get<std::string>());
      step.index = s.at("index").get<std::uint64_t>();
      doc.trace_steps.push_back(std::move(step));
    }
  }
  return doc;
}

std::string render_result(const ResultDoc& doc) {
  json j;
  j["order"] = doc.order;
  j["colors"] = doc.color_names;
  json domain = json::array();
  for (const auto& e : doc.domain_entries) {
    for (int c = 0; c < e.multiplicity; ++c) {
      json row;
      row["set"] = e.set;
      row["color"] = e.color;
      row["copy"] = c;
      domain.push_back(std::move(row));
    }
  }
  j["domain"] = std::move(domain);
  json gens = json::array();
  for (const Perm& g : doc.generators) {
    json row;
    row["images"] = g.images();
    row["cycles"] = g.cycle_string();
    gens.push_back(std::move(row));
  }
  j["generators"] = std::move(gens);
  if (doc.has_trace) {
    json trace;
    trace["initial_order"] = doc.initial_order;
    trace["antichain"] = doc.antichain;
    json steps = json::array();
    for (const auto& s : doc.trace_steps) {
      json row;
      row["step"] = s.step;
      row["parts"] = s.part_indices;
      row["order"] = s.order.to_string();
      row["index"] = s.index;
      steps.push_back(std::move(row));
    }
    trace["steps"] = std::move(steps);
    j["trace"] = std::move(trace);
  }
  return j.dump(2) + "\n";
}

ResultDoc make_result(const std::vector<FamilyEntry>& domain_entries,
                      const std::vector<std::string>& color_names,
                      const PermGroup& group) {
  ResultDoc doc;
  doc.domain_entries = domain_entries;
  doc.color_names = color_names;
  doc.generators = group.generators();
  doc.order = group.order().to_string();
  return doc;
}

void attach_trace(ResultDoc& doc, const TowerTrace& trace, int antichain) {
  doc.has_trace = true;
  doc.initial_order = trace.initial_order.to_string();
  doc.antichain = antichain;
  doc.trace_steps = trace.steps;
}

}  // namespace setaut
