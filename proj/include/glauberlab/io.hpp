#pragma once

#include <string>
#include <string_view>

#include "glauberlab/coloring.hpp"
#include "glauberlab/graph.hpp"

namespace glab {

/// Accepts either {"n": int, "edges": [[u,v], ...]} or whitespace-separated
/// text whose first two numbers are n and m followed by m endpoint pairs.
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);
std::string graph_to_json(const Graph& g);

/// Accepts {"lists": [[...], ...]} or the shorthand "k=<int>". Every list must
/// be nonempty and the vertex count must match the graph.
ListAssignment parse_lists(std::string_view text, const Graph& g);
/// `spec` is "k=<int>" or a path to a lists file.
ListAssignment load_lists(const std::string& spec, const Graph& g);
std::string lists_to_json(const ListAssignment& lists);

std::string read_file(const std::string& path);

}  // namespace glab
