#pragma once

#include <set>
#include <vector>

#include "cnet/params.hpp"

namespace cnet {

struct Edge {
    int u;
    int v;
    EdgeParams params;
};

/// A finite connected graph without loops, each unordered edge carrying one
/// set of (L, R, D) parameters. Vertices are dense ids 0..n-1.
class FiniteNetwork {
public:
    FiniteNetwork(int vertexCount, std::vector<Edge> edges);

    int vertexCount() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbors of x as (y, index into edges()).
    const std::vector<std::pair<int, int>>& neighbors(int x) const { return adj_[x]; }

    bool adjacent(int x, int y) const;

    /// Edge index for the unordered pair {x, y}, or -1.
    int edgeIndex(int x, int y) const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// Grounded set and source vertex for a Dirichlet problem.
struct BoundarySpec {
    std::set<int> boundary;  // grounded vertices (the set dV)
    int source;              // the source vertex a

    void validate(const FiniteNetwork& net) const;

    /// Interior = V \ dV, in increasing vertex order.
    std::vector<int> interior(const FiniteNetwork& net) const;
    /// Reduced interior = interior \ {source}.
    std::vector<int> reducedInterior(const FiniteNetwork& net) const;
};

}  // namespace cnet
