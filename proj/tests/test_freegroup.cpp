#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "cnet/freegroup.hpp"
#include "cnet/generator.hpp"
#include "testutil.hpp"

using namespace cnet;
using testutil::random_params;
using testutil::random_s;

TEST_CASE("spec construction and symbol counting") {
    const FreeGroupSpec spec = FreeGroupSpec::fromSymbols(2, {"s", "1/s"});
    CHECK(spec.k == 2);
    CHECK(spec.l1() == 1);
    CHECK(spec.l2() == 1);
    CHECK(spec.l3() == 0);
    CHECK(spec.symbolic());
    CHECK_THROWS_AS(FreeGroupSpec::fromSymbols(2, {"s"}), PreconditionError);
    CHECK_THROWS_AS(FreeGroupSpec(0, {}), PreconditionError);

    const FreeGroupSpec mixed(2, {EdgeParams(0.3, 0.2, 0.0), EdgeParams::resistor()});
    CHECK(!mixed.symbolic());
}

TEST_CASE("norm on the unit circle for the s, 1/s assignment") {
    const FreeGroupSpec spec = FreeGroupSpec::fromSymbols(2, {"s", "1/s"});
    for (int i = 0; i < 41; ++i) {
        const double alpha = -M_PI / 2 + (i + 0.5) * M_PI / 41;
        const ComplexFrequency s(std::cos(alpha), std::sin(alpha));
        const double expect = std::sqrt(3.0) / (2.0 * std::cos(alpha));
        CHECK(std::abs(closed_form_norm(spec, s) - expect) <= 1e-12);
        const double numeric = akemann_ostrand_norm(convolution_measure(spec, s));
        CHECK(std::abs(numeric - expect) <= 1e-10);
    }
}

TEST_CASE("threshold angle pi/6 by bisection") {
    const FreeGroupSpec spec = FreeGroupSpec::fromSymbols(2, {"s", "1/s"});
    auto normAt = [&](double alpha) {
        const ComplexFrequency s(std::cos(alpha), std::sin(alpha));
        return akemann_ostrand_norm(convolution_measure(spec, s));
    };
    // norm < 1 iff cos(alpha) > sqrt(3)/2, i.e. |alpha| < pi/6
    double lo = 0.0, hi = 1.5;
    REQUIRE(normAt(lo) < 1.0);
    REQUIRE(normAt(hi) > 1.0);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (normAt(mid) < 1.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(M_PI / 6).epsilon(1e-9));

    // the sweep report sees the same flip
    const std::vector<double> grid = {0.0, M_PI / 6 - 1e-4, M_PI / 6 + 1e-4, 1.0};
    const std::vector<NormReportRow> rows = norm_threshold_report(spec, grid);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].belowOne);
    CHECK(rows[1].belowOne);
    CHECK(!rows[2].belowOne);
    CHECK(!rows[3].belowOne);
    CHECK(rows[0].norm == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("equidistributed resistive assignment") {
    // all generators carry unit resistors: the norm is that of simple random
    // walk on the free group, sqrt(2k-1)/k
    for (int k = 2; k <= 6; ++k) {
        const FreeGroupSpec spec =
            FreeGroupSpec::fromSymbols(k, std::vector<std::string>(k, "1"));
        const double numeric =
            akemann_ostrand_norm(convolution_measure(spec, ComplexFrequency(1.0, 0.0)));
        CHECK(std::abs(numeric - std::sqrt(2.0 * k - 1.0) / k) <= 1e-12);
    }
}

TEST_CASE("total variation bound on the convolution measure") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> kk(2, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = kk(rng);
        std::vector<EdgeParams> assign;
        for (int j = 0; j < k; ++j) assign.push_back(random_params(rng));
        const FreeGroupSpec spec(k, std::move(assign));
        const ComplexFrequency s = random_s(rng);
        const ConvolutionMeasure mu = convolution_measure(spec, s);
        CHECK(mu.totalAbs <= s.abs() / s.re() + 1e-12);
        // the measure is a probability when s is real
        cplx total = 0.0;
        for (const cplx v : mu.values) total += 2.0 * v;
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("return series of simple random walk") {
    const FreeGroupSpec spec = FreeGroupSpec::fromSymbols(2, {"1", "1"});
    const std::vector<cplx> g =
        convolution_return_series(spec, ComplexFrequency(1.0, 0.0), 6);
    REQUIRE(g.size() == 7);
    CHECK(std::abs(g[0] - 1.0) < 1e-15);
    CHECK(std::abs(g[1]) < 1e-15);
    CHECK(std::abs(g[3]) < 1e-15);  // odd steps cannot return
    // 4 closed 2-step walks of probability 1/16 each
    CHECK(std::abs(g[2] - 0.25) < 1e-14);
    // n = 4: 4 * 7 walks of probability 1/256 (three neighbors to stray to)
    CHECK(std::abs(g[4] - 28.0 / 256.0) < 1e-13);
}

TEST_CASE("return series growth rate stays under the norm") {
    const int nMax = 200;
    std::mt19937 rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const int k = 2 + trial % 3;
        std::vector<EdgeParams> assign;
        for (int j = 0; j < k; ++j) assign.push_back(random_params(rng));
        const FreeGroupSpec spec(k, std::move(assign));
        const ComplexFrequency s = random_s(rng);
        const double norm = akemann_ostrand_norm(convolution_measure(spec, s));
        const std::vector<cplx> g = convolution_return_series(spec, s, nMax);
        const double rate = std::pow(std::abs(g[nMax]), 1.0 / nMax);
        CHECK(rate <= norm + 0.05);
    }
}

TEST_CASE("cayley graph generator") {
    const FreeGroupSpec spec = FreeGroupSpec::fromSymbols(2, {"s", "1/s"});
    auto gen = make_free_group_generator(spec);
    CHECK(gen->isTree());
    CHECK(gen->neighbors(gen->rootCode()).size() == 4);
    // reduced words: spheres have sizes 2k (2k-1)^{n-1}
    const BallNetwork ball = build_ball(*gen, 3);
    std::map<int, int> sphere;
    for (int d : ball.dist) ++sphere[d];
    CHECK(sphere[0] == 1);
    CHECK(sphere[1] == 4);
    CHECK(sphere[2] == 12);
    CHECK(sphere[3] == 36);
    // neighbors never backtrack into the same generator twice
    for (const auto& [code, params] : gen->neighbors(gen->rootCode()))
        CHECK(gen->neighbors(code).size() == 4);
}

TEST_CASE("generator uri integration") {
    auto gen = make_generator("freegroup:k=2:assign=s,1/s");
    CHECK(gen->neighbors(gen->rootCode()).size() == 4);
    CHECK_THROWS_AS(make_generator("freegroup:k=2:assign=s"), PreconditionError);
}
