#pragma once

#include "signu/signed_graph.hpp"

#include <json.hpp>

#include <string>

namespace signu {

enum class GraphFormat { text, records };

/// Text format:
///   signed-graph v1 <n>
///   <u> <v> <+|->        one line per edge, '-' = odd
/// Blank lines and '#' comments are ignored. Edge ids follow file order from 0.
SignedGraph parse_graph_text(const std::string& text);

/// Writes the text format. Vertices are relabelled 1..n in sorted order.
std::string format_graph_text(const SignedGraph& g);

/// Records form: {"n": k, "edges": [{"u":..,"v":..,"odd":..}]}, or the full form with
/// "vertices" and per-edge "id" used inside certificates.
nlohmann::json graph_to_json(const SignedGraph& g);
SignedGraph graph_from_json(const nlohmann::json& j);

SignedGraph parse_graph(const std::string& content, GraphFormat format);
/// Reads a file; InputError on I/O or parse failure.
SignedGraph load_graph(const std::string& path, GraphFormat format);

/// Odd edges are drawn bold.
std::string to_dot(const SignedGraph& g, const std::string& name = "G");

nlohmann::json walk_to_json(const Walk& w);
Walk walk_from_json(const nlohmann::json& j);
nlohmann::json vertex_set_to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const nlohmann::json& j);

} // namespace signu
