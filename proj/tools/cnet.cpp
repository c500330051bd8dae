#include <CLI11.hpp>
#include <iostream>

#include "cnet/exhaust.hpp"
#include "cnet/finsolve.hpp"
#include "cnet/freegroup.hpp"
#include "cnet/io.hpp"
#include "cnet/series.hpp"
#include "cnet/treeboundary.hpp"

namespace {

using cnet::cplx;
using cnet::json;

cplx parse_complex(const std::string& text) {
    try {
        const auto comma = text.find(',');
        if (comma == std::string::npos) return cplx(std::stod(text), 0.0);
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw cnet::ParseError("cannot parse complex number: " + text);
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    return out;
}

cnet::OperatorKind parse_kind(const std::string& text, cplx s) {
    if (text == "complex") return cnet::OperatorKind::complexAt(s);
    if (text == "tilde") return cnet::OperatorKind::tilde(s);
    if (text == "check") return cnet::OperatorKind::check(s);
    if (text.rfind("t=", 0) == 0) {
        try {
            return cnet::OperatorKind::stochasticAt(std::stod(text.substr(2)));
        } catch (const std::exception&) {
        }
    }
    throw cnet::ParseError("unknown kind: " + text + " (use complex, t=T, tilde, check)");
}

cnet::TreeAddress parse_address(const std::string& text) {
    if (text.empty() || text == "o") return cnet::TreeAddress{};
    std::vector<int> path;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, '.')) {
        try {
            path.push_back(std::stoi(cur));
        } catch (const std::exception&) {
            throw cnet::ParseError("cannot parse tree address: " + text);
        }
    }
    return cnet::TreeAddress(std::move(path));
}

json series_json(const cnet::SeriesResult& r, double tailTol) {
    json j = {{"value", cnet::write_complex(r.value)},
              {"termsUsed", r.termsUsed},
              {"tolerance", tailTol}};
    switch (r.status) {
        case cnet::SeriesStatus::Converged: j["status"] = "converged"; break;
        case cnet::SeriesStatus::Diverged: j["status"] = "diverged"; break;
        default: j["status"] = "undecided"; break;
    }
    if (r.dominationBound) j["dominationBound"] = *r.dominationBound;
    return j;
}

const char* status_name(cnet::TraceStatus s) {
    switch (s) {
        case cnet::TraceStatus::Converged: return "converged";
        case cnet::TraceStatus::RecurrentZero: return "recurrent-zero";
        default: return "undecided";
    }
}

json trace_json(const cnet::ExhaustionTrace& trace, double tol) {
    json values = json::array();
    for (size_t i = 0; i < trace.values.size(); ++i)
        values.push_back({{"n", trace.radii[i]}, {"value", cnet::write_complex(trace.values[i])}});
    json j = {{"values", values},
              {"status", status_name(trace.status)},
              {"method", "exhaustion"},
              {"tolerance", tol}};
    if (trace.limit) j["limit"] = cnet::write_complex(*trace.limit);
    return j;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

int cmd_finite(const std::string& file, const std::string& source,
               const std::string& boundaryList, const std::string& sText,
               const std::string& kindText, const std::string& zText, bool withSeries) {
    const cnet::NamedNetwork nn = cnet::read_network_file(file);
    const cnet::ComplexFrequency s(parse_complex(sText));
    const cnet::OperatorKind kind = parse_kind(kindText, s.s);
    const cplx z = parse_complex(zText);

    cnet::BoundarySpec spec;
    spec.source = nn.idOf(source);
    for (const std::string& name : split_list(boundaryList)) spec.boundary.insert(nn.idOf(name));

    json report = {{"command", "finite"},
                   {"network", file},
                   {"source", source},
                   {"s", cnet::write_complex(s.s)},
                   {"kind", kindText}};

    const cnet::DirichletSolution sol = cnet::solve_dirichlet(nn.net, spec, kind);
    json voltages;
    for (int i = 0; i < nn.net.vertexCount(); ++i)
        voltages[nn.names[i]] = cnet::write_complex(sol.v[i]);
    report["voltages"] = voltages;
    report["voltagesTolerance"] = 1e-10;

    const cnet::EffectiveAdmittance eff = cnet::effective_admittance_full(nn.net, spec, kind);
    report["effectiveAdmittance"] = {{"source", cnet::write_complex(eff.value)},
                                     {"boundary", cnet::write_complex(eff.boundaryFormula)},
                                     {"energy", cnet::write_complex(eff.energyFormula)},
                                     {"green", cnet::write_complex(eff.greenIdentity)},
                                     {"maxResidual", eff.maxResidual},
                                     {"tolerance", 1e-9},
                                     {"method", "direct"}};

    const auto interior = spec.interior(nn.net);
    const cnet::GreenMatrix g = cnet::green_finite(nn.net, interior, kind);
    report["greenDiagonal"] = cnet::write_complex(g(spec.source, spec.source));

    const auto reduced = spec.reducedInterior(nn.net);
    const double t1 = 1.0, ta = std::abs(s.s);
    report["restrictedSpectralRadii"] = {
        {"complex", cnet::restricted_spectral_radius(nn.net, reduced, kind).radius},
        {"t1",
         cnet::restricted_spectral_radius(nn.net, reduced, cnet::OperatorKind::stochasticAt(t1))
             .radius},
        {"tAbsS",
         cnet::restricted_spectral_radius(nn.net, reduced, cnet::OperatorKind::stochasticAt(ta))
             .radius},
        {"tilde",
         cnet::restricted_spectral_radius(nn.net, reduced, cnet::OperatorKind::tilde(s.s)).radius},
        {"check",
         cnet::restricted_spectral_radius(nn.net, reduced, cnet::OperatorKind::check(s.s)).radius}};

    const cnet::ComparisonConstants c1 = cnet::comparison_constants(s, 1.0);
    const cnet::ComparisonConstants ca = cnet::comparison_constants(s, ta);
    report["comparisonConstants"] = {{"r_s", c1.r_s}, {"r_s1", c1.r_st}, {"r_sAbsS", ca.r_st}};
    report["stochastic"] = kind.stochastic() || s.s.imag() == 0.0;

    if (withSeries) {
        const cnet::SeriesOptions opt;
        json sj = {{"return", series_json(cnet::series_return(nn.net, spec, s, z, opt), opt.tailTol)},
                   {"method", "series"}};
        if (!reduced.empty()) {
            const int x = reduced.front();
            json fp = series_json(cnet::series_first_passage(nn.net, spec, x, s, z, opt),
                                  opt.tailTol);
            fp["x"] = nn.names[x];
            sj["firstPassage"] = fp;
        }
        report["series"] = sj;
    }
    emit(report);
    return 0;
}

int cmd_infinite(const std::string& uri, std::string source, const std::vector<std::string>& sList,
                 int nMax, double tol, bool doClassify, bool doKernels,
                 const std::string& windowList) {
    const auto gen = cnet::make_generator(uri);
    if (source.empty()) source = gen->rootCode();
    if (sList.empty()) throw cnet::ParseError("infinite: need at least one --s sample");
    cnet::ExhaustOptions opts;
    opts.tol = tol;

    json report = {{"command", "infinite"},
                   {"generator", uri},
                   {"source", source},
                   {"nMax", nMax},
                   {"tolerance", tol}};

    std::vector<cnet::ComplexFrequency> samples;
    json traces = json::array();
    for (const std::string& sText : sList) {
        const cnet::ComplexFrequency s(parse_complex(sText));
        samples.push_back(s);
        const cnet::ExhaustionTrace trace = cnet::exhaust_admittance(
            *gen, source, {}, cnet::OperatorKind::complexAt(s.s), nMax, opts);
        json t = trace_json(trace, tol);
        t["s"] = cnet::write_complex(s.s);
        traces.push_back(t);
    }
    report["traces"] = traces;

    if (doClassify) {
        switch (cnet::classify(*gen, source, samples, nMax, opts)) {
            case cnet::Classification::Transient: report["classification"] = "transient"; break;
            case cnet::Classification::Recurrent: report["classification"] = "recurrent"; break;
            default: report["classification"] = "undecided"; break;
        }
    }

    if (doKernels) {
        const cnet::InfiniteKernels k =
            cnet::infinite_kernels(*gen, source, samples.front(), split_list(windowList), nMax, opts);
        json kj = {{"method", "exhaustion"}, {"tolerance", 1e-6}};
        if (k.Gdiag) kj["Gdiag"] = cnet::write_complex(*k.Gdiag);
        json f, od;
        for (const auto& [code, value] : k.F) f[code] = cnet::write_complex(value);
        for (const auto& [code, value] : k.offDiag) od[code] = cnet::write_complex(value);
        kj["F"] = f;
        kj["offDiag"] = od;
        if (k.Gdiag) {
            const cnet::KernelIdentityReport idr = cnet::kernel_identities_check(
                *gen, source, samples.front(), split_list(windowList), nMax, opts);
            kj["identities"] = {{"returnResidual", idr.returnResidual},
                                {"harmonicResidual", idr.harmonicResidual},
                                {"cutResidual", idr.cutResidual},
                                {"tolerance", 1e-6}};
        }
        report["kernels"] = kj;
    }
    emit(report);
    return 0;
}

struct TreeArgs {
    std::string uri;
    std::string sText = "1";
    std::string zText = "1";
    int depth = 3;
    std::string x, xi, hFile, nuFile;
};

int cmd_tree(const TreeArgs& a, const std::string& mode) {
    const auto gen = cnet::make_generator(a.uri);
    const cnet::ComplexFrequency s(parse_complex(a.sText));
    cnet::TreeBoundaryOptions opts;
    opts.nMax = std::max(30, a.depth + 20);
    cnet::TreeBoundary tb(*gen, s, parse_complex(a.zText), opts);

    json report = {{"command", "tree"},
                   {"mode", mode},
                   {"generator", a.uri},
                   {"s", cnet::write_complex(s.s)},
                   {"depth", a.depth},
                   {"tolerance", opts.tol},
                   {"method", "exhaustion"}};

    if (mode == "martin") {
        const cnet::TreeAddress x = parse_address(a.x);
        const cnet::EndApprox xi{parse_address(a.xi)};
        report["x"] = cnet::write_address(x);
        report["xi"] = cnet::write_address(xi.prefix);
        report["kernel"] = cnet::write_complex(tb.martinKernel(x, xi));
    } else if (mode == "represent") {
        const auto h = cnet::read_vertex_function(cnet::load_json_file(a.hFile));
        const cnet::BoundaryDistribution nu = tb.distributionFromHarmonic(h);
        report["distribution"] = cnet::write_distribution(nu);
        report["totalMass"] = cnet::write_complex(nu.total());
        double roundTrip = 0.0;
        for (const auto& [x, value] : h)
            roundTrip = std::max(roundTrip, std::abs(tb.integrateKernel(nu, x) - value));
        report["roundTripResidual"] = roundTrip;
    } else {  // integrate
        const cnet::BoundaryDistribution nu =
            cnet::read_distribution(cnet::load_json_file(a.nuFile));
        const cnet::TreeAddress x = parse_address(a.x);
        report["x"] = cnet::write_address(x);
        report["value"] = cnet::write_complex(tb.integrateKernel(nu, x));
        report["summability"] = tb.summabilityProbe(nu, nu.depth);
    }
    emit(report);
    return 0;
}

int cmd_freegroup(int k, const std::string& assignList, const std::string& gridText) {
    std::vector<std::string> symbols = split_list(assignList);
    if (symbols.empty()) symbols.assign(k, "1");
    const cnet::FreeGroupSpec spec = cnet::FreeGroupSpec::fromSymbols(k, symbols);

    double a0 = -1.4, a1 = 1.4, step = 0.1;
    if (!gridText.empty()) {
        const auto parts = split_list(gridText);
        std::vector<std::string> cparts;
        std::string cur;
        std::istringstream in(gridText);
        cparts.clear();
        while (std::getline(in, cur, ':')) cparts.push_back(cur);
        if (cparts.size() != 3) throw cnet::ParseError("alpha grid must be A0:A1:STEP");
        try {
            a0 = std::stod(cparts[0]);
            a1 = std::stod(cparts[1]);
            step = std::stod(cparts[2]);
        } catch (const std::exception&) {
            throw cnet::ParseError("alpha grid must be numeric A0:A1:STEP");
        }
        if (step <= 0) throw cnet::ParseError("alpha grid step must be positive");
    }
    std::vector<double> grid;
    for (double a = a0; a <= a1 + 1e-12; a += step) grid.push_back(a);

    const auto rows = cnet::norm_threshold_report(spec, grid);
    json table = json::array();
    for (const auto& row : rows) {
        json r = {{"alpha", row.alpha},
                  {"norm", row.norm},
                  {"belowOne", row.belowOne},
                  {"massBound", row.massBound},
                  {"totalMass", row.totalAbs}};
        if (spec.symbolic())
            r["closedForm"] = cnet::closed_form_norm(spec, cnet::ComplexFrequency(
                                                               std::cos(row.alpha),
                                                               std::sin(row.alpha)));
        table.push_back(r);
    }

    // bisect the sign changes of (norm - 1) over the grid
    json thresholds = json::array();
    auto normAt = [&](double alpha) {
        return cnet::akemann_ostrand_norm(
            cnet::convolution_measure(spec, cnet::ComplexFrequency(std::cos(alpha), std::sin(alpha))));
    };
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i - 1].belowOne != rows[i].belowOne) {
            double lo = rows[i - 1].alpha, hi = rows[i].alpha;
            for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
                const double mid = 0.5 * (lo + hi);
                ((normAt(mid) < 1.0) == rows[i - 1].belowOne ? lo : hi) = mid;
            }
            thresholds.push_back(0.5 * (lo + hi));
        }

    emit(json{{"command", "freegroup"},
              {"k", k},
              {"assign", symbols},
              {"rows", table},
              {"thresholds", thresholds},
              {"tolerance", 1e-10},
              {"method", "direct"}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis of networks with complex admittances"};
    app.require_subcommand(1);
    std::uint64_t seed = 12345;
    app.add_option("--seed", seed, "seed for randomized oracles");

    auto* finite = app.add_subcommand("finite", "finite network analysis");
    std::string file, source, boundary, sText, kindText = "complex", zText = "1";
    bool withSeries = false;
    finite->add_option("--network", file, "network JSON file")->required();
    finite->add_option("--source", source, "source vertex name")->required();
    finite->add_option("--boundary", boundary, "comma list of grounded vertex names")->required();
    finite->add_option("--s", sText, "complex frequency RE[,IM]")->required();
    finite->add_option("--kind", kindText, "operator kind: complex, t=T, tilde, check");
    finite->add_option("--z", zText, "series variable RE[,IM]");
    finite->add_flag("--series", withSeries, "also evaluate power-series kernels");

    auto* infinite = app.add_subcommand("infinite", "infinite network by exhaustion");
    std::string uri, icode, windowList;
    std::vector<std::string> sList;
    int nMax = 50;
    double tol = 1e-9;
    bool doClassify = false, doKernels = false;
    infinite->add_option("--generator", uri, "generator URI, e.g. line, grid2d, tree:b=2")
        ->required();
    infinite->add_option("--source", icode, "source vertex code (default: root)");
    infinite->add_option("--s", sList, "complex frequency RE[,IM] (repeatable)")->required();
    infinite->add_option("--n-max", nMax, "largest exhaustion radius");
    infinite->add_option("--tol", tol, "convergence tolerance");
    infinite->add_flag("--classify", doClassify, "classify transient/recurrent");
    infinite->add_flag("--kernels", doKernels, "compute infinite kernels on --window");
    infinite->add_option("--window", windowList, "comma list of vertex codes");

    auto* tree = app.add_subcommand("tree", "tree boundary theory");
    TreeArgs ta;
    tree->add_option("--generator", ta.uri, "tree generator URI")->required();
    tree->add_option("--s", ta.sText, "complex frequency RE[,IM]");
    tree->add_option("--z", ta.zText, "generating variable RE[,IM]");
    tree->add_option("--depth", ta.depth, "truncation depth");
    tree->require_subcommand(1);
    auto* martin = tree->add_subcommand("martin", "Martin kernel K(x, xi)");
    martin->add_option("--x", ta.x, "vertex address, dotted (o for root)")->required();
    martin->add_option("--xi", ta.xi, "end prefix address, dotted")->required();
    auto* represent = tree->add_subcommand("represent", "distribution of a harmonic function");
    represent->set_help_flag("--help", "print help");  // frees the short name for --h
    represent->add_option("--h", ta.hFile, "vertex function JSON file")->required();
    auto* integrate = tree->add_subcommand("integrate", "integrate Martin kernel against nu");
    integrate->add_option("--nu", ta.nuFile, "distribution JSON file")->required();
    integrate->add_option("--x", ta.x, "vertex address, dotted")->required();

    auto* freegroup = app.add_subcommand("freegroup", "free-group convolution norms");
    int k = 2;
    std::string assignList, gridText;
    freegroup->add_option("--k", k, "number of free generators")->required();
    freegroup->add_option("--assign", assignList, "comma list of edge symbols (1, s, 1/s)");
    freegroup->add_option("--alpha-grid", gridText, "grid A0:A1:STEP for s = e^{i alpha}");

    try {
        app.parse(argc, argv);
        if (*finite)
            return cmd_finite(file, source, boundary, sText, kindText, zText, withSeries);
        if (*infinite)
            return cmd_infinite(uri, icode, sList, nMax, tol, doClassify, doKernels, windowList);
        if (*tree)
            return cmd_tree(ta, martin->parsed() ? "martin"
                                                 : (represent->parsed() ? "represent" : "integrate"));
        if (*freegroup) return cmd_freegroup(k, assignList, gridText);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const cnet::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const cnet::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const cnet::ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 4;
    }
}
