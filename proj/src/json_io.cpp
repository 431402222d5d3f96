#include "qgeo/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

// Shortest round-trip decimal form; integral values keep a trailing ".0" so
// the JSON stays typed as a number with a stable appearance.
void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
    bool plain = true;
    for (const char* c = buf; c != res.ptr; ++c)
        if (*c == '.' || *c == 'e' || *c == 'n' || *c == 'i') plain = false;
    if (plain) out += ".0";
}

} // namespace

std::string graph_to_json_string(const SpaceGraph& g) {
    // Streamed by hand: a DOM for millions of edge objects costs far more
    // memory than the graph itself. Output is canonical (sorted ids, sorted
    // normalized edges) so identical graphs serialize to identical bytes.
    std::string out;
    out.reserve(g.vertex_count() * 24 + g.edge_count() * 40 + 128);
    out += "{\n  \"family_tag\": \"";
    out += g.family();
    out += "\",\n  \"scale_h\": ";
    append_double(out, g.scale());
    out += ",\n  \"vertices\": [\n";
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        out += "    {\"id\": ";
        out += std::to_string(g.id_of(static_cast<std::uint32_t>(i)));
        if (g.has_coords(static_cast<std::uint32_t>(i))) {
            out += ", \"x\": ";
            append_double(out, g.x(static_cast<std::uint32_t>(i)));
            out += ", \"y\": ";
            append_double(out, g.y(static_cast<std::uint32_t>(i)));
        }
        out += i + 1 < g.vertex_count() ? "},\n" : "}\n";
    }
    out += "  ],\n  \"edges\": [\n";
    std::size_t emitted = 0;
    const std::size_t total = g.edge_count();
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        VertexId a = g.id_of(static_cast<std::uint32_t>(i));
        for (const Arc& arc : g.arcs(static_cast<std::uint32_t>(i))) {
            if (arc.to < i) continue;  // each undirected edge once, (min,max) order
            out += "    {\"a\": ";
            out += std::to_string(a);
            out += ", \"b\": ";
            out += std::to_string(g.id_of(arc.to));
            out += ", \"len\": ";
            append_double(out, arc.len);
            ++emitted;
            out += emitted < total ? "},\n" : "}\n";
        }
    }
    out += "  ]\n}\n";
    return out;
}

SpaceGraph graph_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ParseError("graph document must be a JSON object");
        std::string family = j.at("family_tag").get<std::string>();
        double scale_h = j.at("scale_h").get<double>();
        std::vector<VertexSpec> vertices;
        for (const auto& v : j.at("vertices")) {
            VertexSpec spec;
            spec.id = v.at("id").get<VertexId>();
            bool has_x = v.contains("x"), has_y = v.contains("y");
            if (has_x != has_y) throw ParseError("vertex must carry both x and y or neither");
            if (has_x) {
                spec.has_xy = true;
                spec.x = v.at("x").get<double>();
                spec.y = v.at("y").get<double>();
            }
            vertices.push_back(spec);
        }
        std::vector<EdgeSpec> edges;
        for (const auto& e : j.at("edges"))
            edges.push_back({e.at("a").get<VertexId>(), e.at("b").get<VertexId>(),
                             e.at("len").get<double>()});
        return SpaceGraph::build(std::move(family), scale_h, std::move(vertices), edges);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph document: ") + e.what());
    }
}

SpaceGraph graph_from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("graph document is not valid JSON");
    return graph_from_json(j);
}

SpaceGraph load_graph(const std::string& file) { return graph_from_json_string(read_text_file(file)); }

void save_graph(const SpaceGraph& g, const std::string& file) {
    write_text_file(file, graph_to_json_string(g));
}

nlohmann::json path_to_json(const SpaceGraph& g, const PathInSpace& p) {
    nlohmann::json j;
    j["graph_ref"] = g.family();
    j["vertex_ids"] = std::vector<VertexId>(p.vertices().begin(), p.vertices().end());
    return j;
}

PathInSpace path_from_json(const SpaceGraph& g, const nlohmann::json& j) {
    try {
        std::string ref = j.at("graph_ref").get<std::string>();
        if (ref != g.family())
            throw InputError("path references graph '" + ref + "' but got '" + g.family() + "'");
        std::vector<VertexId> ids = j.at("vertex_ids").get<std::vector<VertexId>>();
        return PathInSpace::from_vertices(g, std::move(ids));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad path document: ") + e.what());
    }
}

PathInSpace load_path(const SpaceGraph& g, const std::string& file) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(file), nullptr, false);
    if (j.is_discarded()) throw ParseError("path document is not valid JSON");
    return path_from_json(g, j);
}

void save_path(const SpaceGraph& g, const PathInSpace& p, const std::string& file) {
    write_text_file(file, path_to_json(g, p).dump(2) + "\n");
}

std::string read_text_file(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + file);
    out << content;
    if (!out) throw IoError("short write to " + file);
}

} // namespace qgeo
