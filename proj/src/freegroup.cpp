#include "cnet/freegroup.hpp"

#include <cmath>

#include "cnet/generator.hpp"

namespace cnet {

FreeGroupSpec::FreeGroupSpec(int k_, std::vector<EdgeParams> assign_)
    : k(k_), assign(std::move(assign_)) {
    if (k < 2) throw PreconditionError("FreeGroupSpec: k must be >= 2");
    if (static_cast<int>(assign.size()) != k)
        throw PreconditionError("FreeGroupSpec: need one assignment per generator");
}

FreeGroupSpec FreeGroupSpec::fromSymbols(int k, const std::vector<std::string>& symbols) {
    std::vector<EdgeParams> assign;
    for (const std::string& sym : symbols) assign.push_back(parse_edge_symbol(sym));
    return FreeGroupSpec(k, std::move(assign));
}

namespace {
int countSymbol(const FreeGroupSpec& spec, const EdgeParams& sym) {
    int n = 0;
    for (const EdgeParams& p : spec.assign)
        if (p == sym) ++n;
    return n;
}
}  // namespace

int FreeGroupSpec::l1() const { return countSymbol(*this, EdgeParams::capacitorLike()); }
int FreeGroupSpec::l2() const { return countSymbol(*this, EdgeParams::inductorLike()); }
int FreeGroupSpec::l3() const { return countSymbol(*this, EdgeParams::resistor()); }
bool FreeGroupSpec::symbolic() const { return l1() + l2() + l3() == k; }

ConvolutionMeasure convolution_measure(const FreeGroupSpec& spec, const ComplexFrequency& s) {
    std::vector<cplx> rho;
    cplx total = 0.0;
    for (const EdgeParams& p : spec.assign) {
        rho.push_back(edge_admittance(p, s));
        total += 2.0 * rho.back();  // a_j and a_j^{-1}
    }
    ConvolutionMeasure mu{{}, 0.0};
    for (cplx r : rho) {
        mu.values.push_back(r / total);
        mu.totalAbs += 2.0 * std::abs(r / total);
    }
    return mu;
}

double akemann_ostrand_norm(const std::vector<double>& c) {
    const int k = static_cast<int>(c.size());
    if (k < 2) throw PreconditionError("akemann_ostrand_norm: need k >= 2");
    const auto phi = [&](double t) {
        double v = t;
        for (double cj : c) v += std::sqrt(t * t + cj * cj) - t;
        return v;
    };
    const auto dphi = [&](double t) {
        double v = 1.0 - k;
        for (double cj : c) v += (t == 0.0 && cj == 0.0) ? 1.0 : t / std::sqrt(t * t + cj * cj);
        return v;
    };
    double lo = 0.0;
    double hi = *std::max_element(c.begin(), c.end()) * k;
    if (hi == 0.0) return 0.0;
    if (dphi(hi) <= 0.0)
        throw ConsistencyError("akemann_ostrand_norm: bisection bracket failed");
    while (hi - lo > 1e-13 * (1.0 + hi)) {
        const double mid = 0.5 * (lo + hi);
        (dphi(mid) < 0.0 ? lo : hi) = mid;
    }
    return 2.0 * phi(0.5 * (lo + hi));
}

double closed_form_norm(const FreeGroupSpec& spec, const ComplexFrequency& s) {
    if (!spec.symbolic())
        throw PreconditionError("closed_form_norm: assignment is not symbolic");
    const cplx denom = static_cast<double>(spec.l1()) * s.s +
                       static_cast<double>(spec.l2()) / s.s + static_cast<double>(spec.l3());
    return std::sqrt(2.0 * spec.k - 1.0) / std::abs(denom);
}

std::vector<NormReportRow> norm_threshold_report(const FreeGroupSpec& spec,
                                                 const std::vector<double>& alphaGrid) {
    std::vector<NormReportRow> rows;
    for (double alpha : alphaGrid) {
        if (!(std::abs(alpha) < M_PI / 2))
            throw PreconditionError("norm_threshold_report: |alpha| must be < pi/2");
        const ComplexFrequency s(std::cos(alpha), std::sin(alpha));
        const ConvolutionMeasure mu = convolution_measure(spec, s);
        const double norm = akemann_ostrand_norm(mu);
        rows.push_back({alpha, norm, norm < 1.0, s.abs() / s.re(), mu.totalAbs});
    }
    return rows;
}

std::vector<cplx> convolution_return_series(const FreeGroupSpec& spec, const ComplexFrequency& s,
                                            int nMax) {
    const ConvolutionMeasure mu = convolution_measure(spec, s);
    const int k = spec.k;
    const int N = nMax + 1;
    using Series = std::vector<cplx>;  // coefficients 0..nMax

    auto mulInto = [&](const Series& a, const Series& b, Series& out) {
        std::fill(out.begin(), out.end(), cplx(0.0));
        for (int i = 0; i < N; ++i) {
            if (a[i] == 0.0) continue;
            for (int j = 0; i + j < N; ++j) out[i + j] += a[i] * b[j];
        }
    };

    // First-passage series F_j(z) (e -> a_j), from
    //   F_j = z mu_j + (U - z mu_j F_j) F_j,  U = 2 z sum_j mu_j F_j.
    // Each sweep fixes one more coefficient, so nMax sweeps suffice.
    std::vector<Series> F(k, Series(N, 0.0));
    Series U(N, 0.0), tmp(N, 0.0), tmp2(N, 0.0);
    for (int sweep = 0; sweep < N; ++sweep) {
        std::fill(U.begin(), U.end(), cplx(0.0));
        for (int j = 0; j < k; ++j)
            for (int i = 0; i + 1 < N; ++i) U[i + 1] += 2.0 * mu.values[j] * F[j][i];
        for (int j = 0; j < k; ++j) {
            // tmp = U - z mu_j F_j
            tmp = U;
            for (int i = 0; i + 1 < N; ++i) tmp[i + 1] -= mu.values[j] * F[j][i];
            mulInto(tmp, F[j], tmp2);
            tmp2[1] += mu.values[j];
            F[j] = tmp2;
        }
    }
    std::fill(U.begin(), U.end(), cplx(0.0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i + 1 < N; ++i) U[i + 1] += 2.0 * mu.values[j] * F[j][i];

    // G = 1 / (1 - U): g_n = sum_{m>=1} U_m g_{n-m}, g_0 = 1.
    Series g(N, 0.0);
    g[0] = 1.0;
    for (int n = 1; n < N; ++n)
        for (int m = 1; m <= n; ++m) g[n] += U[m] * g[n - m];
    return g;
}

namespace {

// Reduced words over letters 'a'..'j' (generators) and 'A'..'J' (inverses).
class FreeGroupGenerator : public GraphGenerator {
public:
    explicit FreeGroupGenerator(FreeGroupSpec spec) : spec_(std::move(spec)) {}

    std::string rootCode() const override { return ""; }

    std::vector<std::pair<std::string, EdgeParams>> neighbors(const std::string& code) const override {
        std::vector<std::pair<std::string, EdgeParams>> out;
        for (int j = 0; j < spec_.k; ++j) {
            out.emplace_back(apply(code, static_cast<char>('a' + j)), spec_.assign[j]);
            out.emplace_back(apply(code, static_cast<char>('A' + j)), spec_.assign[j]);
        }
        return out;
    }

    bool isTree() const override { return true; }

    std::string directedEdgeKey(const std::string& from, const std::string& to) const override {
        // homogeneous: the branch structure depends only on the letter color
        const char c = to.size() > from.size() ? to.back() : from.back();
        return std::string(1, static_cast<char>(std::tolower(c)));
    }

    std::optional<double> stochasticSpectralRadius(const OperatorKind& kind) const override {
        // every stochastic comparison operator is a symmetric probability
        // measure on the generators; its norm is the variational formula
        std::vector<double> c;
        double total = 0.0;
        for (const EdgeParams& p : spec_.assign) {
            c.push_back(std::abs(edge_weight(p, kind)));
            total += 2.0 * c.back();
        }
        for (double& cj : c) cj /= total;
        return akemann_ostrand_norm(c);
    }

private:
    static std::string apply(const std::string& code, char letter) {
        if (!code.empty() && code.back() == inverseOf(letter)) return code.substr(0, code.size() - 1);
        return code + letter;
    }
    static char inverseOf(char letter) {
        return std::isupper(letter) ? static_cast<char>(std::tolower(letter))
                                    : static_cast<char>(std::toupper(letter));
    }

    FreeGroupSpec spec_;
};

}  // namespace

std::unique_ptr<GraphGenerator> make_free_group_generator(const FreeGroupSpec& spec) {
    return std::make_unique<FreeGroupGenerator>(spec);
}

}  // namespace cnet
