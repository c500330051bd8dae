#include "cnet/treekernel.hpp"

#include "cnet/tailfit.hpp"

namespace cnet {

TreeKernels::TreeKernels(const GraphGenerator& gen, OperatorKind kind, cplx z)
    : gen_(gen), kind_(kind), z_(z) {
    if (!gen.isTree()) throw PreconditionError("TreeKernels: generator is not a tree");
}

cplx TreeKernels::rowMass(const std::string& x) const {
    auto it = massCache_.find(x);
    if (it != massCache_.end()) return it->second;
    cplx m = 0.0;
    for (const auto& [ncode, params] : gen_.neighbors(x)) m += edge_weight(params, kind_);
    massCache_.emplace(x, m);
    return m;
}

cplx TreeKernels::transition(const std::string& x, const std::string& y) const {
    for (const auto& [ncode, params] : gen_.neighbors(x))
        if (ncode == y) return edge_weight(params, kind_) / rowMass(x);
    throw PreconditionError("TreeKernels: " + x + " and " + y + " are not neighbors");
}

cplx TreeKernels::firstPassage(const std::string& from, const std::string& to, int horizon) {
    if (horizon <= 0) return 0.0;
    const std::string key = gen_.directedEdgeKey(from, to) + "#" + std::to_string(horizon);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    cplx returnMass = 0.0;
    for (const auto& [w, params] : gen_.neighbors(from)) {
        if (w == to) continue;
        const cplx p = edge_weight(params, kind_) / rowMass(from);
        returnMass += p * firstPassage(w, from, horizon - 1);
    }
    const cplx value = transition(from, to) * z_ / (1.0 - z_ * returnMass);
    memo_.emplace(key, value);
    return value;
}

cplx TreeKernels::firstPassagePath(const std::vector<std::string>& path, int horizon) {
    if (path.size() < 2) return 1.0;
    cplx prod = 1.0;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        prod *= firstPassage(path[i], path[i + 1], horizon);
    return prod;
}

cplx TreeKernels::firstPassageLimit(const std::string& from, const std::string& to, int depthFrom,
                                    int nMax) {
    std::vector<int> radii;
    std::vector<cplx> values;
    for (int n = depthFrom + 1; n <= nMax; ++n) {
        radii.push_back(n);
        values.push_back(firstPassage(from, to, n - depthFrom));
    }
    if (values.empty()) throw PreconditionError("firstPassageLimit: nMax too small for depth");
    return extrapolate_tail(radii, values).limit;
}

cplx TreeKernels::firstReturn(const std::string& a, int horizon) {
    cplx u = 0.0;
    for (const auto& [x, params] : gen_.neighbors(a)) {
        const cplx p = edge_weight(params, kind_) / rowMass(a);
        u += p * z_ * firstPassage(x, a, horizon);
    }
    return u;
}

}  // namespace cnet
