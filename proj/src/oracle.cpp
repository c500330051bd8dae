#include "cnet/oracle.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace cnet {
namespace oracle {

namespace {

constexpr int kMaxWalkLen = 10;
constexpr size_t kMaxEnumVertices = 8;

void check_caps(const std::vector<int>& U, int k) {
    if (k > kMaxWalkLen) throw PreconditionError("walk oracle: length cap exceeded");
    if (U.size() > kMaxEnumVertices) throw PreconditionError("walk oracle: vertex cap exceeded");
}

bool inSet(const std::vector<int>& U, int v) {
    return std::find(U.begin(), U.end(), v) != U.end();
}

// Depth-first enumeration; firstPassage forbids visiting y before step k.
cplx enumerate(const FiniteNetwork& net, const Matrix& P, const std::vector<int>& U, int cur,
               int y, int stepsLeft, cplx z, bool firstPassage) {
    if (stepsLeft == 0) return cur == y ? cplx(1.0) : cplx(0.0);
    cplx total = 0.0;
    for (auto [w, ei] : net.neighbors(cur)) {
        if (!inSet(U, w)) continue;
        if (firstPassage && w == y && stepsLeft > 1) continue;
        total += P(cur, w) * z * enumerate(net, P, U, w, y, stepsLeft - 1, z, firstPassage);
    }
    return total;
}

}  // namespace

cplx walk_weight_sum(const FiniteNetwork& net, const std::vector<int>& U, int x, int y, int k,
                     cplx z, const OperatorKind& kind) {
    check_caps(U, k);
    if (!inSet(U, x) || !inSet(U, y)) throw PreconditionError("walk oracle: endpoint not in U");
    const AdmittanceOperator op = build_operator(net, kind);
    return enumerate(net, op.entries, U, x, y, k, z, false);
}

cplx first_passage_walk_sum(const FiniteNetwork& net, const std::vector<int>& U, int x, int y,
                            int k, cplx z, const OperatorKind& kind) {
    check_caps(U, k);
    if (!inSet(U, x) || !inSet(U, y)) throw PreconditionError("walk oracle: endpoint not in U");
    if (k == 0) return x == y ? cplx(1.0) : cplx(0.0);
    if (x == y) return 0.0;  // first return excluded: walks meet y only at the end
    const AdmittanceOperator op = build_operator(net, kind);
    return enumerate(net, op.entries, U, x, y, k, z, true);
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw PreconditionError("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(std::abs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

Rational Rational::inv() const {
    if (num == 0) throw PreconditionError("Rational: division by zero");
    return Rational(den, num);
}

Rational series_parallel_reduce(const SPNode& node) {
    switch (node.kind) {
        case SPNode::Kind::Resistor:
            return node.resistance;
        case SPNode::Kind::Series: {
            if (node.children.empty())
                throw PreconditionError("series_parallel_reduce: empty series block");
            Rational total(0);
            for (const SPNode& c : node.children) total = total + series_parallel_reduce(c);
            return total;
        }
        case SPNode::Kind::Parallel: {
            if (node.children.empty())
                throw PreconditionError("series_parallel_reduce: empty parallel block");
            Rational conductance(0);
            for (const SPNode& c : node.children)
                conductance = conductance + series_parallel_reduce(c).inv();
            return conductance.inv();
        }
    }
    throw PreconditionError("series_parallel_reduce: malformed node");
}

AbsorptionStats monte_carlo_absorption(const FiniteNetwork& net, const BoundarySpec& spec, int x,
                                       const OperatorKind& kind, std::int64_t walks,
                                       std::uint64_t seed) {
    if (!kind.stochastic())
        throw PreconditionError("monte_carlo_absorption: stochastic kinds only");
    spec.validate(net);
    const AdmittanceOperator op = build_operator(net, kind);
    const int a = spec.source;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::int64_t hits = 0;
    double visitSum = 0.0, visitSqSum = 0.0;
    constexpr int kStepCap = 1 << 22;
    for (std::int64_t w = 0; w < walks; ++w) {
        int cur = x;
        int visits = (cur == a) ? 1 : 0;
        bool hit = (cur == a);
        for (int step = 0; step < kStepCap; ++step) {
            if (spec.boundary.count(cur)) break;
            double u = unif(rng);
            int next = cur;
            for (auto [y, ei] : net.neighbors(cur)) {
                u -= op.entries(cur, y).real();
                next = y;
                if (u <= 0) break;
            }
            cur = next;
            if (cur == a) {
                hit = true;
                ++visits;
            }
        }
        hits += hit ? 1 : 0;
        visitSum += visits;
        visitSqSum += static_cast<double>(visits) * visits;
    }
    const double n = static_cast<double>(walks);
    const double p = hits / n;
    const double meanV = visitSum / n;
    const double varV = std::max(0.0, visitSqSum / n - meanV * meanV);
    return {p, std::sqrt(p * (1 - p) / n), meanV, std::sqrt(varV / n), walks};
}

}  // namespace oracle
}  // namespace cnet
