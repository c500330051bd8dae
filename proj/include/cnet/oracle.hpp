#pragma once

#include <cstdint>
#include <memory>

#include "cnet/operators.hpp"

namespace cnet {
namespace oracle {

/// Brute-force sum of z-weights over all length-k walks from x to y staying
/// inside U. Matches the (x,y) entry of the restricted matrix power times z^k.
cplx walk_weight_sum(const FiniteNetwork& net, const std::vector<int>& U, int x, int y, int k,
                     cplx z, const OperatorKind& kind);

/// Same, but over walks that meet the target only at their endpoint
/// (first-passage walks). Matches f^(k)(x, y) z^k.
cplx first_passage_walk_sum(const FiniteNetwork& net, const std::vector<int>& U, int x, int y,
                            int k, cplx z, const OperatorKind& kind);

/// Exact rational arithmetic over long long; throws on overflow-prone inputs
/// only implicitly (values here stay tiny).
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d = 1);
    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational inv() const;
    double toDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

/// Series/parallel resistor combinator tree; values are resistances.
struct SPNode {
    enum class Kind { Resistor, Series, Parallel };
    Kind kind;
    Rational resistance;  // for Resistor
    std::vector<SPNode> children;

    static SPNode resistor(Rational r) { return {Kind::Resistor, r, {}}; }
    static SPNode series(std::vector<SPNode> c) { return {Kind::Series, {}, std::move(c)}; }
    static SPNode parallel(std::vector<SPNode> c) { return {Kind::Parallel, {}, std::move(c)}; }
};

/// Total resistance of a series/parallel combination, exactly.
Rational series_parallel_reduce(const SPNode& node);

struct AbsorptionStats {
    double hitProbability;    // empirical F(x, a)
    double hitStdErr;
    double meanVisits;        // empirical visits to a before leaving the interior
    double visitsStdErr;
    std::int64_t walks;
};

/// Monte Carlo estimate of the first-passage probability from x to a before
/// leaving the interior, for a stochastic kind.
AbsorptionStats monte_carlo_absorption(const FiniteNetwork& net, const BoundarySpec& spec, int x,
                                       const OperatorKind& kind, std::int64_t walks,
                                       std::uint64_t seed);

}  // namespace oracle
}  // namespace cnet
