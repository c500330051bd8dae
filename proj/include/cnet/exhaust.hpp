#pragma once

#include <map>
#include <optional>

#include "cnet/generator.hpp"

namespace cnet {

enum class TraceStatus { Converged, RecurrentZero, Undecided };

/// Effective admittances on the nested balls V_n, with the grounded set
/// (V_{n-1} intersect dV) union S_n.
struct ExhaustionTrace {
    std::vector<int> radii;
    std::vector<cplx> values;        // P_n, one per radius
    std::optional<cplx> limit;       // extrapolated tail limit when converged
    TraceStatus status = TraceStatus::Undecided;
};

struct ExhaustOptions {
    double tol = 1e-9;
    size_t vertexCap = 200000;
};

/// Effective admittance from `source` to (grounded union sphere) on each
/// ball, under the given operator kind. Trees rooted at the source (with no
/// extra grounded set) use the memoized first-passage recursion and scale to
/// depths far beyond what explicit balls allow.
ExhaustionTrace exhaust_admittance(const GraphGenerator& gen, const std::string& source,
                                   const std::vector<std::string>& grounded,
                                   const OperatorKind& kind, int nMax,
                                   const ExhaustOptions& opts = {});

enum class Classification { Transient, Recurrent, Undecided };

/// Classifies from the real sample, then requires every other sample (and,
/// when stochasticKinds is set, the four stochastic comparison kinds at the
/// first sample) to agree; disagreement throws ConsistencyError.
Classification classify(const GraphGenerator& gen, const std::string& source,
                        const std::vector<ComplexFrequency>& samples, int nMax,
                        const ExhaustOptions& opts = {}, bool stochasticKinds = false);

struct InfiniteKernels {
    std::optional<cplx> Gdiag;            // rho_s(a) / P-limit; absent when recurrent
    std::map<std::string, cplx> F;        // x -> F(x, a)
    std::map<std::string, cplx> offDiag;  // x -> G(x, a) = F(x, a) Gdiag
    ExhaustionTrace trace;
};

/// Limits of the ball kernels on a window of vertex codes. F(x,a) is the
/// limit of the Dirichlet voltages v_n(x); tails are extrapolated by a
/// least-squares A + B/n fit, so slowly (1/n) converging traces still
/// resolve their limits.
InfiniteKernels infinite_kernels(const GraphGenerator& gen, const std::string& source,
                                 const ComplexFrequency& s,
                                 const std::vector<std::string>& window, int nMax,
                                 const ExhaustOptions& opts = {});

struct KernelIdentityReport {
    double returnResidual = 0.0;    // |G(a,a)(1 - U(a,a)) - 1|
    double harmonicResidual = 0.0;  // max_x |F(x,a) - sum_y p(x,y) F(y,a)|
    double cutResidual = 0.0;       // max_x |F(x,a) - F(x,y)F(y,a)|, trees only
    bool pass(double tol = 1e-6) const {
        return returnResidual <= tol && harmonicResidual <= tol && cutResidual <= tol;
    }
};

KernelIdentityReport kernel_identities_check(const GraphGenerator& gen, const std::string& source,
                                             const ComplexFrequency& s,
                                             const std::vector<std::string>& window, int nMax,
                                             const ExhaustOptions& opts = {});

struct LambdaEstimate {
    double value = 0.0;          // |p^(n)(x,y)|^{1/n} at the last usable n
    int stepsUsed = 0;           // that n
    int radiusUsed = 0;          // truncation radius of the ball actually built
    std::vector<double> trend;   // the root sequence at each n where nonzero
};

/// Estimate of the pairwise spectral radius limsup |p^(n)(x,y)|^{1/n} by
/// matrix powers on a ball of radius 2*nMax (smaller if the vertex cap
/// bites). An estimate of a limsup, not an exact value.
LambdaEstimate pairwise_lambda_estimate(const GraphGenerator& gen, const OperatorKind& kind,
                                        const std::string& x, const std::string& y, int nMax,
                                        const ExhaustOptions& opts = {});

struct EnergyProbeRow {
    int radius;
    cplx admittance;  // P_n
    cplx energy;      // (1/2) sum |v(x)-v(y)|^2 rho(x,y) over ball edges
    double gap;       // |energy - P_n|
};

/// Reports the modulus-squared Dirichlet energy of the ball voltages against
/// P_n. The two need not agree for complex s; the gap trend is reported,
/// never asserted.
std::vector<EnergyProbeRow> energy_probe(const GraphGenerator& gen, const std::string& source,
                                         const ComplexFrequency& s, int nMax,
                                         const ExhaustOptions& opts = {});

}  // namespace cnet
