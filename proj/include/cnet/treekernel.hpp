#pragma once

#include <unordered_map>

#include "cnet/generator.hpp"

namespace cnet {

/// First-passage kernels on tree generators, by the directed-edge recursion
///
///   F_h(x -> y) = p(x,y) z / (1 - z sum_{w ~ x, w != y} p(x,w) F_{h-1}(w -> x)),
///   F_0 = 0,
///
/// memoized on (directedEdgeKey, h). F_h is the first-passage series on the
/// tree truncated h steps beyond x (grounded there), so for edges pointing
/// toward the root, F_{n - |x|} equals the ball-exhaustion value at radius n.
class TreeKernels {
public:
    TreeKernels(const GraphGenerator& gen, OperatorKind kind, cplx z = 1.0);

    /// F on the truncated tree; `from` and `to` must be neighbors.
    cplx firstPassage(const std::string& from, const std::string& to, int horizon);

    /// F along an arbitrary geodesic (product over its edges); the caller
    /// supplies the geodesic as a vertex path from `x` to `y`.
    cplx firstPassagePath(const std::vector<std::string>& path, int horizon);

    /// U_h(a,a) = sum_{x ~ a} p(a,x) z F_h(x -> a).
    cplx firstReturn(const std::string& a, int horizon);

    /// Extrapolated limit of the edge value over balls of radius up to nMax,
    /// where `depthFrom` is the distance of `from` to the root.
    cplx firstPassageLimit(const std::string& from, const std::string& to, int depthFrom,
                           int nMax);

    const GraphGenerator& generator() const { return gen_; }
    const OperatorKind& kind() const { return kind_; }

private:
    cplx transition(const std::string& x, const std::string& y) const;
    cplx rowMass(const std::string& x) const;

    const GraphGenerator& gen_;
    OperatorKind kind_;
    cplx z_;
    mutable std::unordered_map<std::string, cplx> massCache_;
    std::unordered_map<std::string, cplx> memo_;  // key: edgeKey + "#" + horizon
};

}  // namespace cnet
