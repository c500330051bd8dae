#include "cnet/io.hpp"

#include <algorithm>
#include <fstream>

namespace cnet {

namespace {

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& what) {
    if (!obj.is_object()) throw ParseError(what + ": expected a JSON object");
    for (const auto& [key, value] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParseError(what + ": unknown field \"" + key + "\"");
}

double number_field(const json& obj, const std::string& key, const std::string& what) {
    if (!obj.contains(key)) throw ParseError(what + ": missing field \"" + key + "\"");
    if (!obj.at(key).is_number()) throw ParseError(what + ": field \"" + key + "\" not a number");
    return obj.at(key).get<double>();
}

}  // namespace

int NamedNetwork::idOf(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("unknown vertex name: " + name);
    return static_cast<int>(it - names.begin());
}

NamedNetwork read_network(const json& doc) {
    require_keys(doc, {"vertices", "edges"}, "network");
    if (!doc.contains("vertices") || !doc.at("vertices").is_array())
        throw ParseError("network: \"vertices\" must be an array of names");
    if (!doc.contains("edges") || !doc.at("edges").is_array())
        throw ParseError("network: \"edges\" must be an array");

    std::vector<std::string> names;
    for (const json& v : doc.at("vertices")) {
        if (!v.is_string()) throw ParseError("network: vertex names must be strings");
        if (std::find(names.begin(), names.end(), v.get<std::string>()) != names.end())
            throw ParseError("network: duplicate vertex name " + v.get<std::string>());
        names.push_back(v.get<std::string>());
    }

    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
        require_keys(e, {"u", "v", "L", "R", "D"}, "edge");
        if (!e.contains("u") || !e.contains("v") || !e.at("u").is_string() ||
            !e.at("v").is_string())
            throw ParseError("edge: \"u\" and \"v\" must be vertex names");
        const auto find = [&](const std::string& name) {
            const auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) throw ParseError("edge: unknown vertex \"" + name + "\"");
            return static_cast<int>(it - names.begin());
        };
        Edge edge;
        edge.u = find(e.at("u").get<std::string>());
        edge.v = find(e.at("v").get<std::string>());
        try {
            edge.params = EdgeParams(number_field(e, "L", "edge"), number_field(e, "R", "edge"),
                                     number_field(e, "D", "edge"));
        } catch (const PreconditionError& err) {
            throw ParseError(std::string("edge: ") + err.what());
        }
        edges.push_back(edge);
    }

    try {
        return {names, FiniteNetwork(static_cast<int>(names.size()), std::move(edges))};
    } catch (const PreconditionError& err) {
        throw ParseError(std::string("network: ") + err.what());
    }
}

NamedNetwork read_network_file(const std::string& path) {
    return read_network(load_json_file(path));
}

json write_network(const NamedNetwork& nn) {
    json edges = json::array();
    for (const Edge& e : nn.net.edges())
        edges.push_back({{"u", nn.names[e.u]},
                         {"v", nn.names[e.v]},
                         {"L", e.params.L},
                         {"R", e.params.R},
                         {"D", e.params.D}});
    return {{"vertices", nn.names}, {"edges", edges}};
}

cplx read_complex(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    require_keys(j, {"re", "im"}, "complex");
    return {number_field(j, "re", "complex"), number_field(j, "im", "complex")};
}

json write_complex(cplx v) { return {{"re", v.real()}, {"im", v.imag()}}; }

TreeAddress read_address(const json& j) {
    if (!j.is_array()) throw ParseError("address: expected an array of child indices");
    std::vector<int> path;
    for (const json& step : j) {
        if (!step.is_number_integer() || step.get<int>() < 0)
            throw ParseError("address: child indices must be nonnegative integers");
        path.push_back(step.get<int>());
    }
    return TreeAddress(std::move(path));
}

json write_address(const TreeAddress& a) { return json(a.path); }

BoundaryDistribution read_distribution(const json& doc) {
    require_keys(doc, {"depth", "arcs"}, "distribution");
    BoundaryDistribution nu;
    nu.depth = static_cast<int>(number_field(doc, "depth", "distribution"));
    if (!doc.contains("arcs") || !doc.at("arcs").is_array())
        throw ParseError("distribution: \"arcs\" must be an array");
    for (const json& arc : doc.at("arcs")) {
        require_keys(arc, {"x", "value"}, "arc");
        if (!arc.contains("x") || !arc.contains("value"))
            throw ParseError("arc: needs \"x\" and \"value\"");
        nu.arcs[read_address(arc.at("x"))] = read_complex(arc.at("value"));
    }
    return nu;
}

json write_distribution(const BoundaryDistribution& nu) {
    json arcs = json::array();
    for (const auto& [x, value] : nu.arcs)
        arcs.push_back({{"x", write_address(x)}, {"value", write_complex(value)}});
    return {{"depth", nu.depth}, {"arcs", arcs}};
}

std::map<TreeAddress, cplx> read_vertex_function(const json& doc) {
    require_keys(doc, {"values"}, "vertex function");
    if (!doc.contains("values") || !doc.at("values").is_array())
        throw ParseError("vertex function: \"values\" must be an array");
    std::map<TreeAddress, cplx> h;
    for (const json& entry : doc.at("values")) {
        require_keys(entry, {"x", "value"}, "vertex value");
        if (!entry.contains("x") || !entry.contains("value"))
            throw ParseError("vertex value: needs \"x\" and \"value\"");
        h[read_address(entry.at("x"))] = read_complex(entry.at("value"));
    }
    return h;
}

json write_vertex_function(const std::map<TreeAddress, cplx>& h) {
    json values = json::array();
    for (const auto& [x, value] : h)
        values.push_back({{"x", write_address(x)}, {"value", write_complex(value)}});
    return {{"values", values}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + err.what());
    }
}

}  // namespace cnet
