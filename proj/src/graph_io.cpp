#include "signu/graph_io.hpp"

#include "signu/errors.hpp"

#include <fstream>
#include <sstream>

namespace signu {

using nlohmann::json;

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

} // namespace

SignedGraph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<std::tuple<VertexId, VertexId, Parity>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        if (blank(line)) continue;
        std::istringstream ls(line);
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        if (n < 0) {
            std::string magic, version;
            long count = -1;
            ls >> magic >> version >> count;
            if (!ls || magic != "signed-graph" || version != "v1" || count < 0) {
                throw InputError(where() + "expected header 'signed-graph v1 <n>'");
            }
            std::string extra;
            if (ls >> extra) throw InputError(where() + "trailing tokens after header");
            n = static_cast<int>(count);
            continue;
        }
        long u = 0, v = 0;
        std::string sign, extra;
        ls >> u >> v >> sign;
        if (!ls || (sign != "+" && sign != "-")) throw InputError(where() + "expected '<u> <v> <+|->'");
        if (ls >> extra) throw InputError(where() + "trailing tokens after edge");
        if (u < 1 || u > n || v < 1 || v > n) throw InputError(where() + "vertex out of range 1.." + std::to_string(n));
        if (u == v) throw InputError(where() + "loops are not permitted");
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v), sign == "-" ? Parity::odd : Parity::even);
    }
    if (n < 0) throw InputError("missing header 'signed-graph v1 <n>'");
    return SignedGraph::build(n, edges);
}

std::string format_graph_text(const SignedGraph& g) {
    std::ostringstream os;
    os << "signed-graph v1 " << g.vertex_count() << "\n";
    for (const Edge& e : g.edges()) {
        os << g.vertex_index(e.u) + 1 << " " << g.vertex_index(e.v) + 1 << " " << (e.odd() ? "-" : "+") << "\n";
    }
    return os.str();
}

json graph_to_json(const SignedGraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"odd", e.odd()}});
    return {{"vertices", g.vertices()}, {"edges", edges}};
}

SignedGraph graph_from_json(const json& j) {
    try {
        std::vector<VertexId> vs;
        if (j.contains("vertices")) {
            vs = j.at("vertices").get<std::vector<VertexId>>();
        } else {
            int n = j.at("n").get<int>();
            if (n < 0) throw InputError("records: negative vertex count");
            for (int i = 1; i <= n; ++i) vs.push_back(i);
        }
        std::vector<Edge> es;
        EdgeId next = 0;
        for (const auto& je : j.at("edges")) {
            Edge e;
            e.id = je.contains("id") ? je.at("id").get<EdgeId>() : next;
            next = e.id + 1;
            e.u = je.at("u").get<VertexId>();
            e.v = je.at("v").get<VertexId>();
            e.parity = je.at("odd").get<bool>() ? Parity::odd : Parity::even;
            es.push_back(e);
        }
        return SignedGraph(std::move(vs), std::move(es));
    } catch (const json::exception& ex) {
        throw InputError(std::string("records: ") + ex.what());
    }
}

SignedGraph parse_graph(const std::string& content, GraphFormat format) {
    if (format == GraphFormat::text) return parse_graph_text(content);
    json j;
    try {
        j = json::parse(content);
    } catch (const json::exception& ex) {
        throw InputError(std::string("records: ") + ex.what());
    }
    return graph_from_json(j);
}

SignedGraph load_graph(const std::string& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_graph(ss.str(), format);
    } catch (const InputError& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

std::string to_dot(const SignedGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (VertexId v : g.vertices()) os << "  " << v << ";\n";
    for (const Edge& e : g.edges()) {
        os << "  " << e.u << " -- " << e.v << " [label=\"e" << e.id << "\"";
        if (e.odd()) os << ", style=bold, penwidth=3";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

json walk_to_json(const Walk& w) { return {{"vertices", w.vertices}, {"edges", w.edges}}; }

Walk walk_from_json(const json& j) {
    Walk w;
    w.vertices = j.at("vertices").get<std::vector<VertexId>>();
    w.edges = j.at("edges").get<std::vector<EdgeId>>();
    return w;
}

json vertex_set_to_json(const VertexSet& s) { return std::vector<VertexId>(s.begin(), s.end()); }

VertexSet vertex_set_from_json(const json& j) {
    auto v = j.get<std::vector<VertexId>>();
    return VertexSet(v.begin(), v.end());
}

} // namespace signu
