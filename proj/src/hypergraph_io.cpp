#include "hsync/hypergraph_io.hpp"

#include <fstream>
#include <sstream>

#include "hsync/error.hpp"

namespace hsync {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + key, "missing");
  return *it;
}

std::string as_label(const json& value, const std::string& path) {
  if (!value.is_string()) field_error(path, "expected a string");
  return value.get<std::string>();
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) field_error(path, "expected a number");
  return value.get<double>();
}

}  // namespace

RawHypergraph parse_hypergraph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError,
                "malformed JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) field_error("<root>", "expected an object");

  RawHypergraph raw;
  const json& vertices = require(doc, "vertices", "");
  if (!vertices.is_array()) field_error("vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    raw.vertices.push_back(as_label(vertices[i], "vertices[" + std::to_string(i) + "]"));
  }

  const json& edges = require(doc, "edges", "");
  if (!edges.is_array()) field_error("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "].";
    const json& e = edges[i];
    if (!e.is_object()) field_error(path.substr(0, path.size() - 1), "expected an object");
    RawEdge edge;
    edge.id = as_label(require(e, "id", path), path + "id");
    const json& members = require(e, "members", path);
    if (!members.is_array()) field_error(path + "members", "expected an array");
    for (std::size_t j = 0; j < members.size(); ++j) {
      edge.members.push_back(as_label(members[j], path + "members[" + std::to_string(j) + "]"));
    }
    if (auto d = e.find("delta"); d != e.end()) edge.delta = as_number(*d, path + "delta");
    raw.edges.push_back(std::move(edge));
  }

  if (auto w = doc.find("vertex_weights"); w != doc.end()) {
    if (!w->is_object()) field_error("vertex_weights", "expected an object");
    for (const auto& [label, value] : w->items()) {
      raw.vertex_weights[label] = as_number(value, "vertex_weights." + label);
    }
  }
  if (auto p = doc.find("weight_preset"); p != doc.end()) {
    raw.preset = parse_weight_preset(as_label(*p, "weight_preset"));
  }
  return raw;
}

nlohmann::ordered_json to_json(const Hypergraph& h) {
  nlohmann::ordered_json out;
  out["vertices"] = h.vertex_labels();
  auto edges = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    nlohmann::ordered_json edge;
    edge["id"] = h.edge(e).id;
    auto members = nlohmann::ordered_json::array();
    for (std::size_t v : h.edge(e).members) members.push_back(h.vertex_label(v));
    edge["members"] = std::move(members);
    edge["delta"] = h.edge_weight(e);
    edges.push_back(std::move(edge));
  }
  out["edges"] = std::move(edges);
  nlohmann::ordered_json weights = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < h.num_vertices(); ++v) weights[h.vertex_label(v)] = h.vertex_weight(v);
  out["vertex_weights"] = std::move(weights);
  if (h.preset()) out["weight_preset"] = std::string(to_string(*h.preset()));
  return out;
}

std::string dump_hypergraph(const Hypergraph& h) { return to_json(h).dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

Hypergraph load_hypergraph(const std::filesystem::path& path) {
  return validate(parse_hypergraph(read_file(path)));
}

void save_hypergraph(const Hypergraph& h, const std::filesystem::path& path) {
  write_file(path, dump_hypergraph(h));
}

}  // namespace hsync
