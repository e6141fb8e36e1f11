#include "kgraph/json_io.hpp"

#include "kgraph/errors.hpp"

#include <cstdint>
#include <cstdio>

namespace kgraph {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::string string_field(const json& obj, const char* key) {
    const auto& v = field(obj, key);
    if (!v.is_string()) throw InvalidInput(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

KGraph graph_from_json(const json& doc) {
    GraphSpec spec;
    const auto& k = field(doc, "k");
    if (!k.is_number_integer()) throw InvalidInput("field 'k' must be an integer");
    spec.k = k.get<int>();

    const auto& vertices = field(doc, "vertices");
    if (!vertices.is_array()) throw InvalidInput("field 'vertices' must be an array");
    for (const auto& v : vertices) {
        if (!v.is_string()) throw InvalidInput("vertex ids must be strings");
        spec.vertices.push_back(v.get<std::string>());
    }

    const auto& edges = field(doc, "edges");
    if (!edges.is_array()) throw InvalidInput("field 'edges' must be an array");
    for (const auto& e : edges) {
        const auto& color = field(e, "color");
        if (!color.is_number_integer()) throw InvalidInput("edge color must be an integer");
        spec.edges.push_back({string_field(e, "id"), color.get<int>(), string_field(e, "range"),
                              string_field(e, "source")});
    }

    if (doc.contains("squares")) {
        const auto& squares = doc.at("squares");
        if (!squares.is_array()) throw InvalidInput("field 'squares' must be an array");
        for (const auto& s : squares) {
            spec.squares.push_back({string_field(s, "blue"), string_field(s, "red"), string_field(s, "red2"),
                                    string_field(s, "blue2")});
        }
    }
    return KGraph(std::move(spec));
}

KGraph parse_graph(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw InvalidInput(std::string("graph document is not valid JSON: ") + err.what());
    }
    return graph_from_json(doc);
}

json graph_to_json(const KGraph& g) {
    auto spec = g.spec();
    json doc;
    doc["k"] = spec.k;
    doc["vertices"] = spec.vertices;
    doc["edges"] = json::array();
    for (const auto& e : spec.edges) {
        doc["edges"].push_back({{"id", e.id}, {"color", e.color}, {"range", e.range}, {"source", e.source}});
    }
    doc["squares"] = json::array();
    for (const auto& s : spec.squares) {
        doc["squares"].push_back({{"blue", s.blue}, {"red", s.red}, {"red2", s.red2}, {"blue2", s.blue2}});
    }
    return doc;
}

std::string serialize_graph(const KGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

std::string graph_hash(const KGraph& g) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : serialize_graph(g)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace kgraph
