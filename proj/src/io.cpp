#include "glauberlab/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "glauberlab/error.hpp"

namespace glab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t as_count(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(ErrorCode::Parse, std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph parse_graph(std::string_view text) {
  const auto body = trim(text);
  std::vector<Edge> edges;
  std::size_t n = 0;
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, std::string("graph JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("edges") || !j["edges"].is_array()) {
      fail(ErrorCode::Parse, "graph JSON needs fields \"n\" and \"edges\"");
    }
    n = as_count(j["n"], "n");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) fail(ErrorCode::Parse, "each edge must be a 2-element array");
      edges.emplace_back(static_cast<Vertex>(as_count(e[0], "endpoint")), static_cast<Vertex>(as_count(e[1], "endpoint")));
    }
  } else {
    std::istringstream in{std::string(body)};
    long long nn = -1, m = -1;
    if (!(in >> nn >> m) || nn < 0 || m < 0) fail(ErrorCode::Parse, "edge list must start with \"n m\"");
    n = static_cast<std::size_t>(nn);
    for (long long i = 0; i < m; ++i) {
      long long u = -1, v = -1;
      if (!(in >> u >> v) || u < 0 || v < 0) fail(ErrorCode::Parse, "edge " + std::to_string(i) + " is malformed");
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string extra;
    if (in >> extra) fail(ErrorCode::Parse, "trailing data after " + std::to_string(m) + " edges");
  }
  return Graph::from_edges(n, edges);
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.size();
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

ListAssignment parse_lists(std::string_view text, const Graph& g) {
  const auto body = trim(text);
  if (body.rfind("k=", 0) == 0) {
    const std::string digits(body.substr(2));
    std::size_t used = 0;
    long long k = 0;
    try {
      k = std::stoll(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != digits.size() || digits.empty() || k < 1) fail(ErrorCode::Parse, "expected k=<positive int>");
    return uniform_lists(g, static_cast<std::size_t>(k));
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("lists JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("lists") || !j["lists"].is_array()) {
    fail(ErrorCode::Parse, "lists JSON needs an array field \"lists\"");
  }
  const auto& arr = j["lists"];
  if (arr.size() != g.size()) {
    fail(ErrorCode::InvalidArgument, "lists cover " + std::to_string(arr.size()) + " vertices, graph has " +
                                         std::to_string(g.size()));
  }
  std::vector<std::vector<Color>> lists;
  for (std::size_t v = 0; v < arr.size(); ++v) {
    if (!arr[v].is_array() || arr[v].empty()) {
      fail(ErrorCode::InvalidArgument, "list of vertex " + std::to_string(v) + " must be a nonempty array");
    }
    std::vector<Color> l;
    for (const auto& c : arr[v]) l.push_back(static_cast<Color>(as_count(c, "colour")));
    lists.push_back(std::move(l));
  }
  return ListAssignment(std::move(lists));
}

ListAssignment load_lists(const std::string& spec, const Graph& g) {
  if (spec.rfind("k=", 0) == 0) return parse_lists(spec, g);
  return parse_lists(read_file(spec), g);
}

std::string lists_to_json(const ListAssignment& lists) {
  nlohmann::json j;
  j["lists"] = lists.lists();
  return j.dump();
}

}  // namespace glab
