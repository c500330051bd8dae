#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cnet/exhaust.hpp"
#include "cnet/finsolve.hpp"
#include "cnet/generator.hpp"
#include "cnet/treekernel.hpp"

using namespace cnet;

TEST_CASE("line exhaustion: admittance 2/n, classified recurrent") {
    auto gen = make_line_generator();
    const ExhaustionTrace trace =
        exhaust_admittance(*gen, gen->rootCode(), {}, OperatorKind::complexAt(1.0), 50);
    REQUIRE(trace.radii.size() == 50);
    for (size_t i = 0; i < trace.radii.size(); ++i) {
        const int n = trace.radii[i];
        CHECK(std::abs(trace.values[i] - 2.0 / n) <= 1e-9);
    }
    CHECK(trace.status == TraceStatus::RecurrentZero);
    CHECK(classify(*gen, gen->rootCode(), {ComplexFrequency(1.0, 0.0)}, 50) ==
          Classification::Recurrent);
}

TEST_CASE("binary tree exhaustion: admittance 1, classified transient") {
    auto gen = make_bary_tree_generator(2);
    ExhaustOptions opts;
    opts.tol = 1e-6;
    const ExhaustionTrace trace =
        exhaust_admittance(*gen, gen->rootCode(), {}, OperatorKind::complexAt(1.0), 40, opts);
    REQUIRE(trace.status == TraceStatus::Converged);
    CHECK(std::abs(*trace.limit - 1.0) <= 1e-6);
    CHECK(classify(*gen, gen->rootCode(), {ComplexFrequency(1.0, 0.0)}, 40, opts) ==
          Classification::Transient);
}

TEST_CASE("tree fast path agrees with explicit balls") {
    const OperatorKind kind = OperatorKind::complexAt(cplx(1.2, 0.5));
    for (const auto& [branching, nMax] : std::vector<std::pair<int, int>>{{2, 7}, {3, 5}}) {
        auto gen = make_bary_tree_generator(branching);
        // tree recursion (root, no grounded set)
        const ExhaustionTrace fast = exhaust_admittance(*gen, gen->rootCode(), {}, kind, nMax);
        // explicit Dirichlet solve on each ball
        for (size_t i = 0; i < fast.radii.size(); ++i) {
            const int n = fast.radii[i];
            const BallNetwork ball = build_ball(*gen, n);
            const FiniteNetwork net = ball.network();
            BoundarySpec spec;
            spec.source = ball.idOf(gen->rootCode());
            for (size_t v = 0; v < ball.codes.size(); ++v)
                if (ball.dist[v] == n) spec.boundary.insert(static_cast<int>(v));
            const cplx direct = effective_admittance(net, spec, kind);
            CHECK(std::abs(fast.values[i] - direct) < 1e-10);
        }
    }
}

TEST_CASE("square grid is recurrent") {
    auto gen = make_grid2d_generator();
    CHECK(classify(*gen, gen->rootCode(), {ComplexFrequency(1.0, 0.0)}, 40) ==
          Classification::Recurrent);
}

TEST_CASE("classification is frequency and kind independent") {
    const std::vector<ComplexFrequency> samples = {
        {1.0, 0.0},
        {std::cos(M_PI / 6), std::sin(M_PI / 6)},
        {2.0, 1.0},
        {0.5, 0.2},
    };
    ExhaustOptions opts;
    opts.tol = 1e-6;

    auto line = make_line_generator();
    CHECK(classify(*line, line->rootCode(), samples, 50, opts, true) ==
          Classification::Recurrent);

    auto tree = make_bary_tree_generator(2);
    CHECK(classify(*tree, tree->rootCode(), samples, 40, opts, true) ==
          Classification::Transient);
}

TEST_CASE("monotone admittance for resistive networks") {
    for (const char* uri : {"line", "tree:b=2", "grid2d"}) {
        auto gen = make_generator(uri);
        const ExhaustionTrace trace =
            exhaust_admittance(*gen, gen->rootCode(), {}, OperatorKind::complexAt(1.0), 20);
        for (size_t i = 0; i < trace.values.size(); ++i) {
            CHECK(std::abs(trace.values[i].imag()) < 1e-12);
            if (i > 0) CHECK(trace.values[i].real() <= trace.values[i - 1].real() + 1e-12);
        }
    }
}

TEST_CASE("line kernels: F tends to 1 at every finite distance") {
    auto gen = make_line_generator();
    const ComplexFrequency s(1.0, 0.0);
    const std::vector<std::string> window = {"1", "2", "3", "-1"};
    const InfiniteKernels k = infinite_kernels(*gen, gen->rootCode(), s, window, 200);
    CHECK(k.trace.status == TraceStatus::RecurrentZero);
    CHECK(!k.Gdiag.has_value());
    for (const auto& [code, value] : k.F) CHECK(std::abs(value - 1.0) <= 1e-3);
}

TEST_CASE("binary tree kernel identities at a complex frequency") {
    auto gen = make_bary_tree_generator(2);
    const ComplexFrequency s(std::cos(M_PI / 8), std::sin(M_PI / 8));
    ExhaustOptions opts;
    opts.tol = 1e-6;
    const std::vector<std::string> window = {"0", "1", "00", "01", "011"};
    const KernelIdentityReport report =
        kernel_identities_check(*gen, gen->rootCode(), s, window, 30, opts);
    CHECK(report.returnResidual <= 1e-6);
    CHECK(report.harmonicResidual <= 1e-6);
    CHECK(report.cutResidual <= 1e-6);
    CHECK(report.pass());
}

TEST_CASE("regular tree kernels: geometric first passage") {
    // on the (q+1)-regular resistive tree, F(x, root) = q^{-|x|}
    auto gen = make_regular_tree_generator(2);
    ExhaustOptions opts;
    opts.tol = 1e-6;
    const std::vector<std::string> window = {"0", "00", "000", "21"};
    const InfiniteKernels k =
        infinite_kernels(*gen, gen->rootCode(), ComplexFrequency(1.0, 0.0), window, 40, opts);
    REQUIRE(k.Gdiag.has_value());
    for (const auto& [code, value] : k.F) {
        const double expect = std::pow(0.5, static_cast<double>(code.size()));
        CHECK(std::abs(value - expect) <= 1e-6);
    }
    // G(x, a) = F(x, a) G(a, a)
    for (const auto& [code, value] : k.offDiag)
        CHECK(std::abs(value - k.F.at(code) * *k.Gdiag) <= 1e-9);
}

TEST_CASE("pairwise spectral radius estimates") {
    // (q+1)-regular tree: the stochastic radius is 2 sqrt(q) / (q+1)
    auto gen = make_regular_tree_generator(2);
    const LambdaEstimate est = pairwise_lambda_estimate(
        *gen, OperatorKind::stochasticAt(1.0), gen->rootCode(), "0", 24);
    const double lam = 2.0 * std::sqrt(2.0) / 3.0;
    CHECK(est.value <= lam + 0.02);
    CHECK(est.value >= lam - 0.2);
    CHECK(est.stepsUsed > 0);
    // the closed form exposed by the generator matches
    CHECK(*gen->stochasticSpectralRadius(OperatorKind::stochasticAt(1.0)) ==
          doctest::Approx(lam).epsilon(1e-12));
}

TEST_CASE("energy probe on the line at a real frequency") {
    auto gen = make_line_generator();
    const std::vector<EnergyProbeRow> rows =
        energy_probe(*gen, gen->rootCode(), ComplexFrequency(1.0, 0.0), 15);
    REQUIRE(!rows.empty());
    for (const EnergyProbeRow& row : rows) {
        // real voltages: the modulus-squared energy equals the admittance
        CHECK(row.gap < 1e-8);
        CHECK(std::abs(row.admittance - 2.0 / row.radius) < 1e-9);
    }
}

TEST_CASE("transient admittance does not vanish on a frequency grid") {
    auto gen = make_bary_tree_generator(2);
    ExhaustOptions opts;
    opts.tol = 1e-6;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const ComplexFrequency s(0.3 + i * (2.0 - 0.3) / 4, -1.0 + j * 0.5);
            const ExhaustionTrace trace = exhaust_admittance(
                *gen, gen->rootCode(), {}, OperatorKind::complexAt(s.s), 40, opts);
            REQUIRE(trace.status == TraceStatus::Converged);
            CHECK(std::abs(*trace.limit) > 0.05);
        }
}

TEST_CASE("grounded sets combine with the sphere") {
    // grounding the two line neighbors of the root turns the exhaustion
    // stationary at the two-resistor parallel value
    auto gen = make_line_generator();
    const ExhaustionTrace trace = exhaust_admittance(
        *gen, gen->rootCode(), {"1", "-1"}, OperatorKind::complexAt(1.0), 10);
    for (const cplx v : trace.values) CHECK(std::abs(v - 2.0) < 1e-10);
    REQUIRE(trace.status == TraceStatus::Converged);
    CHECK(std::abs(*trace.limit - 2.0) < 1e-9);
}
