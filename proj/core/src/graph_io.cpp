#include "nlsg/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nlsg/error.hpp"

namespace nlsg {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(Errc::ParseError, where + " must be an object");
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) fail(Errc::ParseError, "unknown key '" + k + "' in " + where);
}

std::string get_id(const json& obj, const std::string& where) {
  auto it = obj.find("id");
  if (it == obj.end() || !it->is_string()) fail(Errc::ParseError, where + " needs a string id");
  return it->get<std::string>();
}

}  // namespace

GraphSpec parse_graph_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  check_keys(doc, {"vertices", "edges"}, "graph");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    fail(Errc::ParseError, "graph needs a 'vertices' array");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    fail(Errc::ParseError, "graph needs an 'edges' array");

  GraphSpec spec;
  for (const auto& v : doc["vertices"]) {
    check_keys(v, {"id", "infinity"}, "vertex");
    GraphSpec::V out{get_id(v, "vertex"), false};
    if (v.contains("infinity")) {
      if (!v["infinity"].is_boolean()) fail(Errc::ParseError, "'infinity' must be boolean");
      out.infinity = v["infinity"].get<bool>();
    }
    spec.vertices.push_back(std::move(out));
  }
  for (const auto& e : doc["edges"]) {
    check_keys(e, {"id", "from", "to", "length", "halfline"}, "edge");
    GraphSpec::E out;
    out.id = get_id(e, "edge");
    for (const char* k : {"from", "to"})
      if (!e.contains(k) || !e[k].is_string())
        fail(Errc::ParseError, "edge '" + out.id + "' needs string '" + k + "'");
    out.from = e["from"].get<std::string>();
    out.to = e["to"].get<std::string>();
    if (e.contains("length")) {
      if (!e["length"].is_number()) fail(Errc::ParseError, "edge '" + out.id + "': bad length");
      out.length = e["length"].get<double>();
    }
    if (e.contains("halfline")) {
      if (!e["halfline"].is_boolean())
        fail(Errc::ParseError, "edge '" + out.id + "': 'halfline' must be boolean");
      out.halfline = e["halfline"].get<bool>();
    }
    spec.edges.push_back(std::move(out));
  }
  return spec;
}

MetricGraph parse_graph(std::string_view json_text) { return build_graph(parse_graph_spec(json_text)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    fail(Errc::IoNotFound, "file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MetricGraph read_graph_file(const std::filesystem::path& path) {
  return parse_graph(read_text_file(path));
}

std::string graph_to_json(const MetricGraph& g, int indent) {
  json doc;
  doc["vertices"] = json::array();
  doc["edges"] = json::array();
  for (const auto& v : g.vertices()) {
    json jv{{"id", v.id}};
    if (v.at_infinity) jv["infinity"] = true;
    doc["vertices"].push_back(jv);
  }
  for (const auto& e : g.edges()) {
    json je{{"id", e.id}, {"from", g.vertex(e.a).id}, {"to", g.vertex(e.b).id}};
    if (e.halfline)
      je["halfline"] = true;
    else
      je["length"] = e.length;
    doc["edges"].push_back(je);
  }
  return doc.dump(indent);
}

void write_graph_file(const MetricGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot write " + path.string());
  out << graph_to_json(g) << '\n';
}

}  // namespace nlsg
