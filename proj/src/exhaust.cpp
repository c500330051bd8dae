#include "cnet/exhaust.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "cnet/tailfit.hpp"
#include "cnet/treekernel.hpp"

namespace cnet {

namespace {

using SparseMat = Eigen::SparseMatrix<cplx>;

/// Converged / recurrent-zero / undecided from the trace tail. Decay toward
/// zero is detected by log-log trend fits (a power decay is linear against
/// ln n, a 1/ln n decay against ln ln n); a clean A + B/n tail with A away
/// from zero vetoes the decay verdict.
void finalize_trace(ExhaustionTrace& trace, double tol, bool capped) {
    const size_t n = trace.values.size();
    trace.limit.reset();
    trace.status = TraceStatus::Undecided;
    if (capped || n < 4) return;

    bool converged = true;
    for (size_t i = n - 3; i < n; ++i)
        if (std::abs(trace.values[i] - trace.values[i - 1]) >=
            tol * (1.0 + std::abs(trace.values[i])))
            converged = false;

    const TailFit ex = extrapolate_tail(trace.radii, trace.values);

    bool decayTrend = false;
    {
        std::vector<double> lnn, lnlnn, lnv;
        const size_t tail = std::max<size_t>(6, n / 2);
        for (size_t i = n - std::min(tail, n); i < n; ++i) {
            const double a = std::abs(trace.values[i]);
            if (a <= 0 || trace.radii[i] < 2) continue;
            lnn.push_back(std::log(static_cast<double>(trace.radii[i])));
            lnlnn.push_back(std::log(std::log(static_cast<double>(trace.radii[i]))));
            lnv.push_back(std::log(a));
        }
        if (lnv.size() >= 6) {
            const LineFit f1 = fit_line(lnn, lnv);
            const LineFit f2 = fit_line(lnlnn, lnv);
            decayTrend = (f1.slope <= -0.2 && f1.r2 >= 0.98) ||
                         (f2.slope <= -0.45 && f2.r2 >= 0.98);
        }
        bool allZero = true;
        for (size_t i = n - 3; i < n; ++i)
            if (std::abs(trace.values[i]) > tol) allZero = false;
        if (allZero) decayTrend = true;  // the trace has already reached zero
        if (decayTrend && ex.maxResidual < 1e-6 * (1.0 + std::abs(ex.limit)) &&
            std::abs(ex.limit) > 1e-3)
            decayTrend = false;
    }

    if (decayTrend) {
        trace.status = TraceStatus::RecurrentZero;
        trace.limit = 0.0;
    } else if (converged) {
        trace.status = TraceStatus::Converged;
        trace.limit = ex.maxResidual <= 1e-3 * (1.0 + std::abs(ex.limit)) ? ex.limit
                                                                          : trace.values.back();
    }
}

/// Per-ball Dirichlet solves on an explicitly built ball, shared by the
/// generic trace, the kernel window, and the energy probe.
class BallSolver {
public:
    BallSolver(const GraphGenerator& gen, const std::string& source,
               const std::vector<std::string>& grounded, const OperatorKind& kind, int nMax,
               size_t vertexCap)
        : gen_(gen), kind_(kind), ball_(build_ball(gen, nMax, vertexCap)) {
        sourceId_ = ball_.idOf(source);
        grounded_.assign(ball_.codes.size(), false);
        for (const std::string& code : grounded) {
            auto it = ball_.index.find(code);
            if (it != ball_.index.end()) grounded_[it->second] = true;
        }
        if (grounded_[sourceId_])
            throw PreconditionError("exhaust: source is in the grounded set");
        const size_t m = ball_.codes.size();
        mass_.assign(m, 0.0);
        adj_.assign(m, {});
        for (const Edge& e : ball_.edges) {
            const cplx w = edge_weight(e.params, kind);
            adj_[e.u].push_back({e.v, w});
            adj_[e.v].push_back({e.u, w});
        }
        // full row masses, counting neighbors beyond the ball
        for (size_t i = 0; i < m; ++i)
            for (const auto& [ncode, params] : gen.neighbors(ball_.codes[i]))
                mass_[i] += edge_weight(params, kind);
    }

    const BallNetwork& ball() const { return ball_; }
    int sourceId() const { return sourceId_; }
    bool capped(int nMax) const { return ball_.radius < nMax && !ball_.exhausted; }
    int maxRadius(int nMax) const { return ball_.exhausted ? nMax : ball_.radius; }
    cplx sourceMass() const { return mass_[sourceId_]; }

    /// Voltages on V_n with v(a) = 1 and v = 0 on (V_{n-1} cap dV) cup S_n;
    /// entries for vertices outside V_n are meaningless.
    struct Solution {
        std::vector<cplx> v;
        cplx admittance = 0.0;
        bool hasBoundary = false;
    };

    Solution solve(int n) {
        const size_t m = ball_.codes.size();
        Solution sol;
        sol.v.assign(m, 0.0);
        sol.v[sourceId_] = 1.0;

        std::vector<int> interior;
        std::vector<int> slot(m, -1);
        bool hasBoundary = false;
        for (size_t i = 0; i < m; ++i) {
            if (ball_.dist[i] > n) continue;
            const bool bd = (ball_.dist[i] == n && !(ball_.exhausted && n > ball_.radius)) ||
                            (ball_.dist[i] <= n - 1 && grounded_[i]);
            if (ball_.dist[i] == n && n <= ball_.radius) hasBoundary = true;
            if (grounded_[i] && ball_.dist[i] <= n - 1) hasBoundary = true;
            if (bd || static_cast<int>(i) == sourceId_) continue;
            slot[i] = static_cast<int>(interior.size());
            interior.push_back(static_cast<int>(i));
        }
        sol.hasBoundary = hasBoundary;
        if (!hasBoundary) return sol;  // nothing grounded: v = 1, no current

        const int ni = static_cast<int>(interior.size());
        if (ni == 0) {
            for (const auto& [j, w] : adj_[sourceId_]) sol.admittance += w * (1.0 - sol.v[j]);
            return sol;
        }
        Vector rhs = Vector::Zero(ni);
        std::vector<Eigen::Triplet<cplx>> trips;
        for (int r = 0; r < ni; ++r) {
            const int i = interior[r];
            trips.emplace_back(r, r, 1.0);
            for (const auto& [j, w] : adj_[i]) {
                const cplx p = w / mass_[i];
                if (j == sourceId_)
                    rhs[r] += p;
                else if (slot[j] >= 0)
                    trips.emplace_back(r, slot[j], -p);
            }
        }
        SparseMat M(ni, ni);
        M.setFromTriplets(trips.begin(), trips.end());
        Eigen::SparseLU<SparseMat> lu(M);
        if (lu.info() != Eigen::Success)
            throw ConsistencyError("exhaust: sparse factorization failed");
        Vector v = lu.solve(rhs);
        Vector resid = rhs - M * v;
        if (resid.lpNorm<Eigen::Infinity>() > 1e-13 * (1.0 + v.lpNorm<Eigen::Infinity>()))
            v += lu.solve(resid);
        resid = rhs - M * v;
        if (resid.lpNorm<Eigen::Infinity>() > 1e-8)
            throw ConsistencyError("exhaust: Dirichlet solve residual too large");

        for (int r = 0; r < ni; ++r) sol.v[interior[r]] = v[r];
        for (const auto& [j, w] : adj_[sourceId_]) sol.admittance += w * (1.0 - sol.v[j]);
        return sol;
    }

    /// (1/2) sum |v(x) - v(y)|^2 rho(x,y) over the edges of V_n.
    cplx energy(const Solution& sol, int n) const {
        cplx e = 0.0;
        for (const Edge& edge : ball_.edges) {
            if (ball_.dist[edge.u] > n || ball_.dist[edge.v] > n) continue;
            const double dv = std::abs(sol.v[edge.u] - sol.v[edge.v]);
            e += dv * dv * edge_weight(edge.params, kind_);
        }
        return e;
    }

private:
    const GraphGenerator& gen_;
    OperatorKind kind_;
    BallNetwork ball_;
    int sourceId_;
    std::vector<bool> grounded_;
    std::vector<cplx> mass_;
    std::vector<std::vector<std::pair<int, cplx>>> adj_;
};

bool tree_fast_path(const GraphGenerator& gen, const std::string& source,
                    const std::vector<std::string>& grounded) {
    return gen.isTree() && grounded.empty() && source == gen.rootCode();
}

cplx root_mass(const GraphGenerator& gen, const OperatorKind& kind) {
    cplx m = 0.0;
    for (const auto& [ncode, params] : gen.neighbors(gen.rootCode()))
        m += edge_weight(params, kind);
    return m;
}

/// Root geodesics x -> ... -> root on a tree generator, found inside a ball
/// just deep enough to contain the window.
std::vector<std::vector<std::string>> root_geodesics(const GraphGenerator& gen,
                                                     const std::vector<std::string>& window,
                                                     size_t vertexCap) {
    int radius = 4;
    for (;;) {
        const BallNetwork ball = build_ball(gen, radius, vertexCap);
        bool allFound = true;
        for (const std::string& code : window)
            if (!ball.index.count(code)) allFound = false;
        if (!allFound) {
            if (ball.radius < radius || radius > 4096)
                throw PreconditionError("window vertex not reachable within the vertex cap");
            radius *= 2;
            continue;
        }
        std::vector<std::vector<std::string>> paths;
        for (const std::string& code : window) {
            std::vector<std::string> path = {code};
            int cur = ball.idOf(code);
            while (ball.dist[cur] > 0) {
                int parent = -1;
                for (const auto& [ncode, params] : gen.neighbors(ball.codes[cur])) {
                    auto it = ball.index.find(ncode);
                    if (it != ball.index.end() && ball.dist[it->second] == ball.dist[cur] - 1) {
                        parent = it->second;
                        break;
                    }
                }
                if (parent < 0) throw ConsistencyError("tree geodesic: no parent found");
                path.push_back(ball.codes[parent]);
                cur = parent;
            }
            paths.push_back(std::move(path));
        }
        return paths;
    }
}

}  // namespace

ExhaustionTrace exhaust_admittance(const GraphGenerator& gen, const std::string& source,
                                   const std::vector<std::string>& grounded,
                                   const OperatorKind& kind, int nMax,
                                   const ExhaustOptions& opts) {
    if (nMax < 1) throw PreconditionError("exhaust_admittance: nMax must be >= 1");
    ExhaustionTrace trace;

    if (tree_fast_path(gen, source, grounded)) {
        TreeKernels tk(gen, kind);
        const cplx mass = root_mass(gen, kind);
        for (int n = 1; n <= nMax; ++n) {
            trace.radii.push_back(n);
            trace.values.push_back(mass * (1.0 - tk.firstReturn(source, n - 1)));
        }
        finalize_trace(trace, opts.tol, false);
        return trace;
    }

    BallSolver solver(gen, source, grounded, kind, nMax, opts.vertexCap);
    const int sourceDist = solver.ball().dist[solver.sourceId()];
    for (int n = sourceDist + 1; n <= solver.maxRadius(nMax); ++n) {
        const BallSolver::Solution sol = solver.solve(n);
        trace.radii.push_back(n);
        trace.values.push_back(sol.hasBoundary ? sol.admittance : cplx(0.0));
    }
    finalize_trace(trace, opts.tol, solver.capped(nMax));
    return trace;
}

namespace {

Classification verdict(const ExhaustionTrace& trace, double tol) {
    switch (trace.status) {
        case TraceStatus::RecurrentZero:
            return Classification::Recurrent;
        case TraceStatus::Converged:
            return std::abs(*trace.limit) > std::max(tol, 1e-9) ? Classification::Transient
                                                                : Classification::Recurrent;
        default:
            return Classification::Undecided;
    }
}

}  // namespace

Classification classify(const GraphGenerator& gen, const std::string& source,
                        const std::vector<ComplexFrequency>& samples, int nMax,
                        const ExhaustOptions& opts, bool stochasticKinds) {
    if (samples.empty()) throw PreconditionError("classify: need at least one sample");
    std::optional<size_t> realIdx;
    for (size_t i = 0; i < samples.size(); ++i)
        if (samples[i].s.imag() == 0.0) realIdx = i;
    if (!realIdx) throw PreconditionError("classify: need at least one real positive sample");

    std::vector<OperatorKind> kinds;
    for (const ComplexFrequency& s : samples) kinds.push_back(OperatorKind::complexAt(s.s));
    if (stochasticKinds) {
        const cplx s0 = samples.front().s;
        kinds.push_back(OperatorKind::stochasticAt(1.0));
        kinds.push_back(OperatorKind::stochasticAt(std::abs(s0)));
        kinds.push_back(OperatorKind::tilde(s0));
        kinds.push_back(OperatorKind::check(s0));
    }

    std::vector<Classification> results;
    for (const OperatorKind& kind : kinds) {
        const ExhaustionTrace trace = exhaust_admittance(gen, source, {}, kind, nMax, opts);
        results.push_back(verdict(trace, opts.tol));
        if (results.back() == Classification::Undecided) return Classification::Undecided;
    }
    const Classification decided = results[*realIdx];
    for (Classification c : results)
        if (c != decided)
            throw ConsistencyError(
                "classify: samples disagree on transience, which the theory forbids");
    return decided;
}

InfiniteKernels infinite_kernels(const GraphGenerator& gen, const std::string& source,
                                 const ComplexFrequency& s, const std::vector<std::string>& window,
                                 int nMax, const ExhaustOptions& opts) {
    const OperatorKind kind = OperatorKind::complexAt(s.s);
    InfiniteKernels out;
    out.trace = exhaust_admittance(gen, source, {}, kind, nMax, opts);
    if (out.trace.status == TraceStatus::Undecided)
        throw ConsistencyError("infinite_kernels: exhaustion trace did not resolve");

    if (out.trace.status == TraceStatus::Converged && std::abs(*out.trace.limit) > opts.tol)
        out.Gdiag = root_mass(gen, kind) / *out.trace.limit;
    // recurrent (or zero-limit) case: the on-diagonal kernel diverges; leave it unset

    if (tree_fast_path(gen, source, {})) {
        TreeKernels tk(gen, kind);
        const auto paths = root_geodesics(gen, window, opts.vertexCap);
        for (size_t w = 0; w < window.size(); ++w) {
            const auto& path = paths[w];
            const int depth = static_cast<int>(path.size()) - 1;
            std::vector<int> radii;
            std::vector<cplx> values;
            for (int n = depth + 1; n <= nMax; ++n) {
                cplx prod = 1.0;
                for (int i = 0; i < depth; ++i)
                    prod *= tk.firstPassage(path[i], path[i + 1], n - (depth - i));
                radii.push_back(n);
                values.push_back(prod);
            }
            out.F[window[w]] = depth == 0 ? cplx(1.0) : extrapolate_tail(radii, values).limit;
        }
    } else {
        BallSolver solver(gen, source, {}, kind, nMax, opts.vertexCap);
        const int top = solver.maxRadius(nMax);
        std::vector<int> ids;
        for (const std::string& code : window) ids.push_back(solver.ball().idOf(code));
        std::map<std::string, std::pair<std::vector<int>, std::vector<cplx>>> seq;
        for (int n = 1; n <= top; ++n) {
            const BallSolver::Solution sol = solver.solve(n);
            for (size_t w = 0; w < window.size(); ++w)
                if (solver.ball().dist[ids[w]] < n) {
                    seq[window[w]].first.push_back(n);
                    seq[window[w]].second.push_back(sol.v[ids[w]]);
                }
        }
        for (size_t w = 0; w < window.size(); ++w) {
            if (ids[w] == solver.sourceId()) {
                out.F[window[w]] = 1.0;
                continue;
            }
            const auto& [radii, values] = seq.at(window[w]);
            out.F[window[w]] = extrapolate_tail(radii, values).limit;
        }
    }

    if (out.Gdiag)
        for (const auto& [code, f] : out.F) out.offDiag[code] = f * *out.Gdiag;
    return out;
}

KernelIdentityReport kernel_identities_check(const GraphGenerator& gen, const std::string& source,
                                             const ComplexFrequency& s,
                                             const std::vector<std::string>& window, int nMax,
                                             const ExhaustOptions& opts) {
    const OperatorKind kind = OperatorKind::complexAt(s.s);

    // extend the window by the source, its neighbors, and the neighbors of
    // every window vertex (the harmonicity check needs them)
    std::vector<std::string> extended = window;
    auto add = [&](const std::string& code) {
        if (std::find(extended.begin(), extended.end(), code) == extended.end())
            extended.push_back(code);
    };
    add(source);
    for (const auto& [ncode, params] : gen.neighbors(source)) add(ncode);
    for (const std::string& code : window)
        for (const auto& [ncode, params] : gen.neighbors(code)) add(ncode);

    const InfiniteKernels k = infinite_kernels(gen, source, s, extended, nMax, opts);
    if (!k.Gdiag)
        throw PreconditionError("kernel_identities_check: requires a transient network");

    KernelIdentityReport report;

    auto transition = [&](const std::string& x, const std::string& y) {
        cplx mass = 0.0, w = 0.0;
        for (const auto& [ncode, params] : gen.neighbors(x)) {
            mass += edge_weight(params, kind);
            if (ncode == y) w = edge_weight(params, kind);
        }
        return w / mass;
    };

    cplx U = 0.0;
    for (const auto& [ncode, params] : gen.neighbors(source))
        U += transition(source, ncode) * k.F.at(ncode);
    report.returnResidual = std::abs(*k.Gdiag * (1.0 - U) - 1.0);

    for (const std::string& x : window) {
        if (x == source) continue;
        cplx sum = 0.0;
        for (const auto& [ncode, params] : gen.neighbors(x))
            sum += transition(x, ncode) * k.F.at(ncode);
        report.harmonicResidual = std::max(report.harmonicResidual, std::abs(k.F.at(x) - sum));
    }

    if (tree_fast_path(gen, source, {})) {
        TreeKernels tk(gen, kind);
        const auto paths = root_geodesics(gen, window, opts.vertexCap);
        for (size_t w = 0; w < window.size(); ++w) {
            const auto& path = paths[w];
            const int depth = static_cast<int>(path.size()) - 1;
            if (depth < 2) continue;
            const int mid = depth / 2;  // an interior geodesic vertex: a cut vertex
            cplx head = 1.0, tailProd = 1.0;
            for (int i = 0; i < depth; ++i) {
                const cplx f = tk.firstPassageLimit(path[i], path[i + 1], depth - i, nMax);
                (i < mid ? head : tailProd) *= f;
            }
            report.cutResidual =
                std::max(report.cutResidual, std::abs(k.F.at(window[w]) - head * tailProd));
        }
    }
    return report;
}

LambdaEstimate pairwise_lambda_estimate(const GraphGenerator& gen, const OperatorKind& kind,
                                        const std::string& x, const std::string& y, int nMax,
                                        const ExhaustOptions& opts) {
    if (nMax < 1) throw PreconditionError("pairwise_lambda_estimate: nMax must be >= 1");
    const BallNetwork ball = build_ball(gen, 2 * nMax, opts.vertexCap);
    const int xi = ball.idOf(x);
    const int yi = ball.idOf(y);
    const size_t m = ball.codes.size();

    std::vector<cplx> mass(m, 0.0);
    for (size_t i = 0; i < m; ++i)
        for (const auto& [ncode, params] : gen.neighbors(ball.codes[i]))
            mass[i] += edge_weight(params, kind);

    std::vector<Eigen::Triplet<cplx>> trips;
    for (const Edge& e : ball.edges) {
        const cplx w = edge_weight(e.params, kind);
        trips.emplace_back(e.v, e.u, w / mass[e.u]);  // transposed: column = from
        trips.emplace_back(e.u, e.v, w / mass[e.v]);
    }
    SparseMat Pt(static_cast<int>(m), static_cast<int>(m));
    Pt.setFromTriplets(trips.begin(), trips.end());

    Vector v = Vector::Zero(static_cast<int>(m));
    v[xi] = 1.0;
    LambdaEstimate est;
    est.radiusUsed = ball.radius;
    for (int n = 1; n <= nMax; ++n) {
        v = Pt * v;
        const double a = std::abs(v[yi]);
        if (a > 0.0) {
            est.value = std::pow(a, 1.0 / n);
            est.stepsUsed = n;
            est.trend.push_back(est.value);
        }
    }
    return est;
}

std::vector<EnergyProbeRow> energy_probe(const GraphGenerator& gen, const std::string& source,
                                         const ComplexFrequency& s, int nMax,
                                         const ExhaustOptions& opts) {
    const OperatorKind kind = OperatorKind::complexAt(s.s);
    BallSolver solver(gen, source, {}, kind, nMax, opts.vertexCap);
    std::vector<EnergyProbeRow> rows;
    for (int n = 1; n <= solver.maxRadius(nMax); ++n) {
        const BallSolver::Solution sol = solver.solve(n);
        if (!sol.hasBoundary) continue;
        const cplx e = solver.energy(sol, n);
        rows.push_back({n, sol.admittance, e, std::abs(e - sol.admittance)});
    }
    return rows;
}

}  // namespace cnet
