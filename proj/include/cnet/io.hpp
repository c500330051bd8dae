#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cnet/network.hpp"
#include "cnet/treeboundary.hpp"

namespace cnet {

using json = nlohmann::json;

/// Raised on malformed input documents (bad JSON, unknown fields, missing
/// names); distinct from PreconditionError so the CLI can map it to its own
/// exit code.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite network together with its vertex names, as stored on disk:
/// { "vertices": ["a", "b", ...],
///   "edges": [{ "u": "a", "v": "b", "L": 0, "R": 1, "D": 0 }, ...] }
struct NamedNetwork {
    std::vector<std::string> names;
    FiniteNetwork net;

    int idOf(const std::string& name) const;
};

NamedNetwork read_network(const json& doc);
NamedNetwork read_network_file(const std::string& path);
json write_network(const NamedNetwork& net);

// complex values are encoded as { "re": x, "im": y } everywhere
cplx read_complex(const json& j);
json write_complex(cplx v);

// tree addresses are index paths: [] is the root, [1, 0] a grandchild
TreeAddress read_address(const json& j);
json write_address(const TreeAddress& a);

/// { "depth": d, "arcs": [{ "x": [..], "value": {re, im} }, ...] }
BoundaryDistribution read_distribution(const json& doc);
json write_distribution(const BoundaryDistribution& nu);

/// { "values": [{ "x": [..], "value": {re, im} }, ...] }
std::map<TreeAddress, cplx> read_vertex_function(const json& doc);
json write_vertex_function(const std::map<TreeAddress, cplx>& h);

json load_json_file(const std::string& path);

}  // namespace cnet
