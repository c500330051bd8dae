#include "cnet/network.hpp"

#include <algorithm>
#include <queue>

namespace cnet {

FiniteNetwork::FiniteNetwork(int vertexCount, std::vector<Edge> edges)
    : n_(vertexCount), edges_(std::move(edges)) {
    if (n_ <= 0) throw PreconditionError("FiniteNetwork: vertexCount must be positive");
    adj_.resize(n_);
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        Edge& e = edges_[i];
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw PreconditionError("FiniteNetwork: edge endpoint out of range");
        if (e.u == e.v) throw PreconditionError("FiniteNetwork: loops are not allowed");
        if (e.params.L < 0 || e.params.R < 0 || e.params.D < 0 ||
            e.params.L + e.params.R + e.params.D <= 0)
            throw PreconditionError("FiniteNetwork: invalid edge parameters");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw PreconditionError("FiniteNetwork: duplicate edge");
        adj_[e.u].emplace_back(e.v, i);
        adj_[e.v].emplace_back(e.u, i);
    }
    for (int x = 0; x < n_; ++x)
        if (adj_[x].empty())
            throw PreconditionError("FiniteNetwork: isolated vertex");
    // connectivity check
    std::vector<char> visited(n_, 0);
    std::queue<int> q;
    q.push(0);
    visited[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (auto [y, ei] : adj_[x])
            if (!visited[y]) {
                visited[y] = 1;
                ++count;
                q.push(y);
            }
    }
    if (count != n_) throw PreconditionError("FiniteNetwork: graph is not connected");
}

bool FiniteNetwork::adjacent(int x, int y) const { return edgeIndex(x, y) >= 0; }

int FiniteNetwork::edgeIndex(int x, int y) const {
    for (auto [z, ei] : adj_[x])
        if (z == y) return ei;
    return -1;
}

void BoundarySpec::validate(const FiniteNetwork& net) const {
    const int n = net.vertexCount();
    if (source < 0 || source >= n) throw PreconditionError("BoundarySpec: source out of range");
    if (boundary.count(source)) throw PreconditionError("BoundarySpec: source must not be grounded");
    for (int b : boundary)
        if (b < 0 || b >= n) throw PreconditionError("BoundarySpec: boundary vertex out of range");
    if (static_cast<int>(boundary.size()) >= n)
        throw PreconditionError("BoundarySpec: boundary must be a proper subset");
}

std::vector<int> BoundarySpec::interior(const FiniteNetwork& net) const {
    std::vector<int> out;
    for (int x = 0; x < net.vertexCount(); ++x)
        if (!boundary.count(x)) out.push_back(x);
    return out;
}

std::vector<int> BoundarySpec::reducedInterior(const FiniteNetwork& net) const {
    std::vector<int> out;
    for (int x = 0; x < net.vertexCount(); ++x)
        if (!boundary.count(x) && x != source) out.push_back(x);
    return out;
}

}  // namespace cnet
