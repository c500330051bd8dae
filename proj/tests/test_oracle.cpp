#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cnet/finsolve.hpp"
#include "cnet/oracle.hpp"
#include "testutil.hpp"

using namespace cnet;
using testutil::random_network;
using testutil::random_s;

namespace {

std::vector<FiniteNetwork> small_fixtures() {
    std::vector<FiniteNetwork> nets;
    // triangle with a tail
    nets.push_back(FiniteNetwork(4, {{0, 1, EdgeParams::resistor()},
                                     {1, 2, EdgeParams::capacitorLike()},
                                     {2, 0, EdgeParams::inductorLike()},
                                     {2, 3, EdgeParams(0.5, 1.0, 0.2)}}));
    // K4 minus one edge, mixed elements
    nets.push_back(FiniteNetwork(4, {{0, 1, EdgeParams::resistor(2.0)},
                                     {0, 2, EdgeParams::capacitorLike()},
                                     {1, 2, EdgeParams::resistor()},
                                     {1, 3, EdgeParams::inductorLike()},
                                     {2, 3, EdgeParams(1.0, 0.5, 1.0)}}));
    // path of five
    nets.push_back(FiniteNetwork(5, {{0, 1, EdgeParams::resistor()},
                                     {1, 2, EdgeParams::capacitorLike()},
                                     {2, 3, EdgeParams::resistor(0.5)},
                                     {3, 4, EdgeParams::inductorLike()}}));
    return nets;
}

std::vector<OperatorKind> all_kinds(cplx s) {
    return {OperatorKind::complexAt(s), OperatorKind::stochasticAt(std::abs(s)),
            OperatorKind::tilde(s), OperatorKind::check(s)};
}

}  // namespace

TEST_CASE("walk enumeration equals restricted matrix powers") {
    const cplx s(0.9, 0.6);
    const std::vector<cplx> zs = {1.0, cplx(0.3, -1.1), cplx(-2.0, 0.0), cplx(1.2, 1.6)};
    for (const FiniteNetwork& net : small_fixtures()) {
        std::vector<int> all(net.vertexCount());
        for (int i = 0; i < net.vertexCount(); ++i) all[i] = i;
        // a proper subset too: drop the last vertex
        std::vector<int> sub(all.begin(), all.end() - 1);

        for (const OperatorKind& kind : all_kinds(s)) {
            const AdmittanceOperator op = build_operator(net, kind);
            for (const std::vector<int>& U : {all, sub}) {
                Matrix M = restrict_operator(op.entries, U);
                for (const cplx z : zs) {
                    Matrix power = Matrix::Identity(U.size(), U.size());
                    for (int k = 0; k <= 8; ++k) {
                        for (size_t i = 0; i < U.size(); ++i)
                            for (size_t j = 0; j < U.size(); ++j) {
                                const cplx walked =
                                    oracle::walk_weight_sum(net, U, U[i], U[j], k, z, kind);
                                const cplx expect = power(i, j) * std::pow(z, k);
                                CHECK(std::abs(walked - expect) <= 1e-12);
                            }
                        power = power * M;
                    }
                }
            }
        }
    }
}

TEST_CASE("first-passage walks equal the restricted-power recursion") {
    // f^(k)(x, y) = (P restricted to U \ {y})^{k-1} p(., y), summed over the
    // penultimate vertex
    const cplx s(1.1, -0.4);
    const cplx z(0.7, 0.2);
    for (const FiniteNetwork& net : small_fixtures()) {
        std::vector<int> U(net.vertexCount());
        for (int i = 0; i < net.vertexCount(); ++i) U[i] = i;
        for (const OperatorKind& kind : all_kinds(s)) {
            const AdmittanceOperator op = build_operator(net, kind);
            for (int y = 0; y < net.vertexCount(); ++y) {
                std::vector<int> Uy;
                for (int v : U)
                    if (v != y) Uy.push_back(v);
                Matrix M = restrict_operator(op.entries, Uy);
                Vector col(Uy.size());
                for (size_t i = 0; i < Uy.size(); ++i) col(i) = op.entries(Uy[i], y);
                for (int k = 1; k <= 7; ++k) {
                    for (size_t i = 0; i < Uy.size(); ++i) {
                        const cplx walked =
                            oracle::first_passage_walk_sum(net, U, Uy[i], y, k, z, kind);
                        CHECK(std::abs(walked - col(i) * std::pow(z, k)) <= 1e-12);
                    }
                    col = M * col;
                }
            }
        }
    }
}

TEST_CASE("rational arithmetic") {
    using oracle::Rational;
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(3, 7).inv() == Rational(7, 3));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(1, -2).toDouble() == doctest::Approx(-0.5));
}

TEST_CASE("series/parallel reduction is exact") {
    using oracle::Rational;
    using oracle::SPNode;
    // ((1 series 2) parallel 3) series 1/2
    const SPNode tree = SPNode::series(
        {SPNode::parallel({SPNode::series({SPNode::resistor({1}), SPNode::resistor({2})}),
                           SPNode::resistor({3})}),
         SPNode::resistor({1, 2})});
    // 3*3/(3+3) = 3/2; plus 1/2 gives 2
    CHECK(series_parallel_reduce(tree) == Rational(2));

    // a wheatstone-style balanced bridge collapses to series/parallel
    const SPNode bridge = SPNode::parallel(
        {SPNode::series({SPNode::resistor({1}), SPNode::resistor({2})}),
         SPNode::series({SPNode::resistor({2}), SPNode::resistor({4})})});
    CHECK(series_parallel_reduce(bridge) == Rational(2));
}

TEST_CASE("Monte Carlo on a fair coin gap") {
    // path 0 - 1 - 2 with grounded end: from the middle, the chain hits the
    // source first with probability exactly 1/2
    const FiniteNetwork net(3, {{0, 1, EdgeParams::resistor()}, {1, 2, EdgeParams::resistor()}});
    const BoundarySpec spec{{2}, 0};
    const oracle::AbsorptionStats stats = oracle::monte_carlo_absorption(
        net, spec, 1, OperatorKind::stochasticAt(1.0), 100000, 99);
    CHECK(std::abs(stats.hitProbability - 0.5) < 4.0 * stats.hitStdErr);
    CHECK(stats.walks == 100000);
}

TEST_CASE("Monte Carlo is deterministic under a fixed seed") {
    const FiniteNetwork net(3, {{0, 1, EdgeParams::resistor()}, {1, 2, EdgeParams::resistor()}});
    const BoundarySpec spec{{2}, 0};
    const auto a = oracle::monte_carlo_absorption(net, spec, 1,
                                                  OperatorKind::stochasticAt(1.0), 20000, 7);
    const auto b = oracle::monte_carlo_absorption(net, spec, 1,
                                                  OperatorKind::stochasticAt(1.0), 20000, 7);
    CHECK(a.hitProbability == b.hitProbability);
    CHECK(a.meanVisits == b.meanVisits);
}
