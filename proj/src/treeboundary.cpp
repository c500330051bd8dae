#include "cnet/treeboundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cnet/exhaust.hpp"

namespace cnet {

TreeAddress TreeAddress::parent() const {
    if (path.empty()) throw PreconditionError("TreeAddress: the root has no predecessor");
    return TreeAddress(std::vector<int>(path.begin(), path.end() - 1));
}

TreeAddress TreeAddress::child(int i) const {
    std::vector<int> p = path;
    p.push_back(i);
    return TreeAddress(std::move(p));
}

bool TreeAddress::isPrefixOf(const TreeAddress& other) const {
    if (path.size() > other.path.size()) return false;
    return std::equal(path.begin(), path.end(), other.path.begin());
}

std::string TreeAddress::label() const {
    if (path.empty()) return "o";
    std::ostringstream out;
    for (size_t i = 0; i < path.size(); ++i) out << (i ? "." : "") << path[i];
    return out.str();
}

TreeAddress common_prefix(const TreeAddress& a, const TreeAddress& b) {
    std::vector<int> p;
    for (size_t i = 0; i < std::min(a.path.size(), b.path.size()); ++i) {
        if (a.path[i] != b.path[i]) break;
        p.push_back(a.path[i]);
    }
    return TreeAddress(std::move(p));
}

double boundary_metric(const EndApprox& xi, const EndApprox& eta) {
    const TreeAddress c = common_prefix(xi.prefix, eta.prefix);
    if (c.path == xi.prefix.path && c.path == eta.prefix.path) return 0.0;  // same as represented
    if (c.path == xi.prefix.path || c.path == eta.prefix.path)
        throw PreconditionError("boundary_metric: one prefix extends the other; deepen them");
    return std::pow(2.0, -c.depth());
}

TreeBoundary::TreeBoundary(const GraphGenerator& gen, const ComplexFrequency& s, cplx z,
                           const TreeBoundaryOptions& opts)
    : gen_(gen), s_(s), z_(z), opts_(opts) {
    if (!gen.isTree()) throw PreconditionError("TreeBoundary: generator is not a tree");
    const OperatorKind kind = OperatorKind::complexAt(s.s);

    if (z == cplx(1.0)) {
        ExhaustOptions exOpts;
        exOpts.tol = opts.tol;
        const ExhaustionTrace trace =
            exhaust_admittance(gen, gen.rootCode(), {}, kind, opts.nMax, exOpts);
        if (trace.status != TraceStatus::Converged || std::abs(*trace.limit) <= opts.tol)
            throw PreconditionError("TreeBoundary: network is not transient at this s");
    } else {
        // certify |1/z| > r * lambda for some stochastic comparison operator
        double best = std::numeric_limits<double>::infinity();
        for (double t : {1.0, std::abs(s.s)}) {
            const auto lam = gen.stochasticSpectralRadius(OperatorKind::stochasticAt(t));
            if (lam) best = std::min(best, comparison_constants(s, t).r_st * *lam);
        }
        for (const OperatorKind& k : {OperatorKind::tilde(s.s), OperatorKind::check(s.s)}) {
            const auto lam = gen.stochasticSpectralRadius(k);
            if (lam) best = std::min(best, comparison_constants(s, 1.0).r_s * *lam);
        }
        if (!(std::abs(1.0 / z) > best))
            throw PreconditionError(
                "TreeBoundary: |1/z| is not certified above the dominated spectral radius");
    }
    kernels_ = std::make_unique<TreeKernels>(gen_, kind, z_);
}

std::string TreeBoundary::codeOf(const TreeAddress& x) const {
    auto it = codeCache_.find(x);
    if (it != codeCache_.end()) return it->second;
    std::string code;
    std::string parentCode;
    if (x.isRoot())
        code = gen_.rootCode();
    else {
        parentCode = codeOf(x.parent());
        const std::string grand =
            x.depth() >= 2 ? codeOf(x.parent().parent()) : std::string();
        std::vector<std::string> children;
        for (const auto& [ncode, params] : gen_.neighbors(parentCode))
            if (x.depth() < 2 ? true : ncode != grand) children.push_back(ncode);
        // at the root every neighbor is a child
        const int i = x.path.back();
        if (i < 0 || i >= static_cast<int>(children.size()))
            throw PreconditionError("TreeAddress: child index out of range at " + x.label());
        code = children[i];
    }
    codeCache_.emplace(x, code);
    return code;
}

int TreeBoundary::childCount(const TreeAddress& x) const {
    const size_t deg = gen_.neighbors(codeOf(x)).size();
    return static_cast<int>(deg) - (x.isRoot() ? 0 : 1);
}

std::vector<TreeAddress> TreeBoundary::geodesic(const TreeAddress& x, const TreeAddress& y) const {
    const TreeAddress c = common_prefix(x, y);
    std::vector<TreeAddress> path;
    for (TreeAddress v = x; v.depth() > c.depth(); v = v.parent()) path.push_back(v);
    path.push_back(c);
    std::vector<TreeAddress> down;
    for (TreeAddress v = y; v.depth() > c.depth(); v = v.parent()) down.push_back(v);
    path.insert(path.end(), down.rbegin(), down.rend());
    return path;
}

cplx TreeBoundary::transition(const TreeAddress& x, const TreeAddress& y) const {
    const std::string cx = codeOf(x);
    const std::string cy = codeOf(y);
    cplx mass = 0.0, w = 0.0;
    for (const auto& [ncode, params] : gen_.neighbors(cx)) {
        const cplx ew = edge_weight(params, OperatorKind::complexAt(s_.s));
        mass += ew;
        if (ncode == cy) w = ew;
    }
    if (w == cplx(0.0)) throw PreconditionError("transition: vertices are not neighbors");
    return w / mass;
}

cplx TreeBoundary::edgeLimit(const TreeAddress& from, const TreeAddress& to) {
    const std::string key = from.label() + ">" + to.label();
    auto it = edgeCache_.find(key);
    if (it != edgeCache_.end()) return it->second;
    const cplx v =
        kernels_->firstPassageLimit(codeOf(from), codeOf(to), from.depth(), opts_.nMax);
    edgeCache_.emplace(key, v);
    return v;
}

cplx TreeBoundary::F(const TreeAddress& x, const TreeAddress& y) {
    const std::vector<TreeAddress> path = geodesic(x, y);
    cplx prod = 1.0;
    for (size_t i = 0; i + 1 < path.size(); ++i) prod *= edgeLimit(path[i], path[i + 1]);
    return prod;
}

cplx TreeBoundary::martinKernel(const TreeAddress& x, const EndApprox& xi) {
    if (xi.prefix.isPrefixOf(x) && xi.prefix.depth() < x.depth())
        throw PreconditionError("martinKernel: end prefix too shallow to fix the confluent");
    const TreeAddress c = common_prefix(x, xi.prefix);
    const cplx denom = F(TreeAddress{}, c);
    if (std::abs(denom) < 1e-12)
        throw ConsistencyError("martinKernel: F(o, confluent) vanished, contradicting theory");
    return F(x, c) / denom;
}

double TreeBoundary::identityResidual(const TreeAddress& x, const TreeAddress& y) {
    const bool adjacent = (y.depth() == x.depth() + 1 && x.isPrefixOf(y)) ||
                          (x.depth() == y.depth() + 1 && y.isPrefixOf(x));
    if (!adjacent) throw PreconditionError("identityResidual: x and y must be neighbors");
    const cplx Fxy = F(x, y);
    const cplx Fyx = F(y, x);
    if (std::abs(Fxy) <= opts_.tol)
        throw ConsistencyError("identityResidual: F(x,y) = 0, contradicting theory");
    if (std::abs(Fxy * Fyx - 1.0) <= opts_.tol)
        throw ConsistencyError("identityResidual: F(x,y)F(y,x) = 1, contradicting theory");

    cplx U = 0.0;
    std::vector<TreeAddress> nbrs;
    if (!x.isRoot()) nbrs.push_back(x.parent());
    for (int i = 0; i < childCount(x); ++i) nbrs.push_back(x.child(i));
    for (const TreeAddress& w : nbrs) U += transition(x, w) * z_ * F(w, x);

    const cplx lhs = transition(x, y) * z_ * (1.0 - Fxy * Fyx);
    const cplx rhs = Fxy * (1.0 - U);
    return std::abs(lhs - rhs);
}

BoundaryDistribution TreeBoundary::distributionFromHarmonic(
    const std::map<TreeAddress, cplx>& h) {
    if (!h.count(TreeAddress{}))
        throw PreconditionError("distributionFromHarmonic: h must include the root");
    int depth = 0;
    for (const auto& [x, value] : h) depth = std::max(depth, x.depth());

    // the truncation must be complete, and h harmonic strictly inside it
    for (const auto& [x, value] : h) {
        if (x.depth() >= depth) continue;
        cplx sum = 0.0;
        if (!x.isRoot()) sum += transition(x, x.parent()) * h.at(x.parent());
        for (int i = 0; i < childCount(x); ++i) {
            const TreeAddress c = x.child(i);
            if (!h.count(c))
                throw PreconditionError("distributionFromHarmonic: truncation incomplete at " +
                                        c.label());
            sum += transition(x, c) * h.at(c);
        }
        if (std::abs(value - sum) > opts_.harmonicTol)
            throw PreconditionError("distributionFromHarmonic: h is not harmonic at " + x.label() +
                                    " (residual " + std::to_string(std::abs(value - sum)) + ")");
    }

    BoundaryDistribution nu;
    nu.depth = depth;
    nu.arcs[TreeAddress{}] = h.at(TreeAddress{});
    for (const auto& [x, value] : h) {
        if (x.isRoot()) continue;
        const TreeAddress p = x.parent();
        const cplx Fup = edgeLimit(x, p);
        const cplx Fdown = edgeLimit(p, x);
        nu.arcs[x] = F(TreeAddress{}, x) * (value - Fup * h.at(p)) / (1.0 - Fup * Fdown);
    }

    for (const auto& [x, value] : nu.arcs) {
        if (x.depth() >= depth) continue;
        cplx sum = 0.0;
        for (int i = 0; i < childCount(x); ++i) sum += nu.arcs.at(x.child(i));
        if (std::abs(value - sum) > opts_.tol)
            throw ConsistencyError("distributionFromHarmonic: additivity failed at " + x.label());
    }
    return nu;
}

cplx TreeBoundary::integrateKernel(const BoundaryDistribution& nu, const TreeAddress& x) {
    if (nu.depth < x.depth())
        throw PreconditionError("integrateKernel: distribution depth is below |x|");
    cplx h = 0.0;
    for (const auto& [w, mass] : nu.arcs) {
        if (w.depth() != nu.depth) continue;
        h += martinKernel(x, EndApprox{w}) * mass;
    }
    return h;
}

double TreeBoundary::summabilityProbe(const BoundaryDistribution& nu, int depth) const {
    if (depth > nu.depth) throw PreconditionError("summabilityProbe: depth beyond truncation");
    double sum = 0.0;
    for (const auto& [w, mass] : nu.arcs)
        if (w.depth() == depth) sum += std::abs(mass);
    return sum;
}

}  // namespace cnet
