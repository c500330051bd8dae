#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cnet/network.hpp"
#include "cnet/operators.hpp"

namespace cnet {

/// Lazy, locally finite, connected graph given by a neighbor function.
/// Neighbor lists must be deterministic and symmetric.
class GraphGenerator {
public:
    virtual ~GraphGenerator() = default;

    virtual std::string rootCode() const = 0;
    virtual std::vector<std::pair<std::string, EdgeParams>> neighbors(
        const std::string& code) const = 0;

    /// True when the graph is a tree; enables the memoized first-passage
    /// recursions used for deep exhaustions.
    virtual bool isTree() const { return false; }

    /// Memoization key for the directed edge (from -> to): equal keys must
    /// have isomorphic branch structure on the `from` side. The default is
    /// the concrete pair (always correct, never shared).
    virtual std::string directedEdgeKey(const std::string& from, const std::string& to) const {
        return from + "|" + to;
    }

    /// Exact spectral radius of the given stochastic comparison operator on
    /// the infinite graph, when known in closed form.
    virtual std::optional<double> stochasticSpectralRadius(const OperatorKind&) const {
        return std::nullopt;
    }
};

/// Finite ball around the root, with vertex codes and distances.
struct BallNetwork {
    std::vector<std::string> codes;                 // id -> code
    std::unordered_map<std::string, int> index;     // code -> id
    std::vector<int> dist;                          // id -> distance from root
    std::vector<Edge> edges;
    int radius = 0;
    bool exhausted = false;  // the generator has no vertices beyond this ball

    FiniteNetwork network() const;
    int idOf(const std::string& code) const;
};

/// Breadth-first ball of the given radius; stops early if vertexCap would be
/// exceeded (reporting the largest complete radius).
BallNetwork build_ball(const GraphGenerator& gen, int radius, size_t vertexCap = SIZE_MAX);

/// Homogeneous edge-parameter symbols used by generator URIs:
/// "1" = unit resistor, "s" = admittance s, "1/s" = admittance 1/s.
EdgeParams parse_edge_symbol(const std::string& symbol);

std::unique_ptr<GraphGenerator> make_line_generator(EdgeParams params = EdgeParams::resistor());
std::unique_ptr<GraphGenerator> make_grid2d_generator(EdgeParams params = EdgeParams::resistor());
/// Rooted tree where every vertex has b children (root degree b, others b+1).
std::unique_ptr<GraphGenerator> make_bary_tree_generator(int b,
                                                         EdgeParams params = EdgeParams::resistor());
/// (q+1)-regular tree.
std::unique_ptr<GraphGenerator> make_regular_tree_generator(int q,
                                                            EdgeParams params = EdgeParams::resistor());

/// Resolves a generator URI:
///   line[:edge=SYM]
///   grid2d[:edge=SYM]
///   tree:b=B[:edge=SYM]
///   regtree:q=Q[:edge=SYM]
///   freegroup:k=K:assign=SYM,SYM,...   (one symbol per free generator)
std::unique_ptr<GraphGenerator> make_generator(const std::string& uri);

}  // namespace cnet
