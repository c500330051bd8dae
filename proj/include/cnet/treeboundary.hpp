#pragma once

#include <map>

#include "cnet/generator.hpp"
#include "cnet/treekernel.hpp"

namespace cnet {

/// Vertex of a rooted tree, addressed by the child indices along the
/// geodesic from the root o.
struct TreeAddress {
    std::vector<int> path;

    TreeAddress() = default;
    explicit TreeAddress(std::vector<int> p) : path(std::move(p)) {}

    int depth() const { return static_cast<int>(path.size()); }
    bool isRoot() const { return path.empty(); }
    TreeAddress parent() const;
    TreeAddress child(int i) const;
    bool isPrefixOf(const TreeAddress& other) const;
    std::string label() const;  // "o", "1", "1.0.2", ...

    auto operator<=>(const TreeAddress&) const = default;
};

TreeAddress common_prefix(const TreeAddress& a, const TreeAddress& b);

/// An end, represented by a ray prefix deep enough for the computation at
/// hand (every kernel below stabilizes once the prefix clears the relevant
/// confluent).
struct EndApprox {
    TreeAddress prefix;
};

/// theta(xi, eta) = 2^{-|xi ^ eta|} on represented ends.
double boundary_metric(const EndApprox& xi, const EndApprox& eta);

/// Finitely additive complex set function on boundary arcs, stored on every
/// address of a depth-d truncation (the empty address is the whole boundary).
struct BoundaryDistribution {
    int depth = 0;
    std::map<TreeAddress, cplx> arcs;

    cplx total() const { return arcs.at(TreeAddress{}); }
};

struct TreeBoundaryOptions {
    int nMax = 30;  // exhaustion depth backing the kernel limits
    double tol = 1e-6;
    double harmonicTol = 1e-8;
};

/// Boundary theory of a transient tree network at a fixed s (and optionally
/// a generating-function variable z). At z = 1 the constructor verifies
/// transience; at z != 1 it requires the comparison-constant range
/// certificate and refuses otherwise.
class TreeBoundary {
public:
    TreeBoundary(const GraphGenerator& gen, const ComplexFrequency& s, cplx z = 1.0,
                 const TreeBoundaryOptions& opts = {});

    std::string codeOf(const TreeAddress& x) const;
    int childCount(const TreeAddress& x) const;

    /// Full-kernel limit F(x,y|z), by geodesic factorization.
    cplx F(const TreeAddress& x, const TreeAddress& y);

    /// K(x, xi) = F(x, x^xi) / F(o, x^xi).
    cplx martinKernel(const TreeAddress& x, const EndApprox& xi);

    /// Residual of the neighbor identity
    /// p(x,y) z (1 - F(x,y)F(y,x)) = F(x,y)(1 - U(x,x)); also asserts
    /// F(x,y)F(y,x) != 1 and F(x,y) != 0.
    double identityResidual(const TreeAddress& x, const TreeAddress& y);

    /// nu^h from a harmonic function h given on a full depth-d truncation.
    BoundaryDistribution distributionFromHarmonic(const std::map<TreeAddress, cplx>& h);

    /// h(x) = integral of K(x, .) d nu, evaluated on the finest partition.
    cplx integrateKernel(const BoundaryDistribution& nu, const TreeAddress& x);

    /// sum |nu(arc)| over the depth-d partition; reported, never asserted.
    double summabilityProbe(const BoundaryDistribution& nu, int depth) const;

    const TreeBoundaryOptions& options() const { return opts_; }

private:
    cplx edgeLimit(const TreeAddress& from, const TreeAddress& to);
    std::vector<TreeAddress> geodesic(const TreeAddress& x, const TreeAddress& y) const;
    cplx transition(const TreeAddress& x, const TreeAddress& y) const;

    const GraphGenerator& gen_;
    ComplexFrequency s_;
    cplx z_;
    TreeBoundaryOptions opts_;
    std::unique_ptr<TreeKernels> kernels_;
    mutable std::map<TreeAddress, std::string> codeCache_;
    std::map<std::string, cplx> edgeCache_;
};

}  // namespace cnet
