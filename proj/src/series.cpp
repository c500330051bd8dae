#include "cnet/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cnet {

namespace {

struct Dominator {
    Matrix M;     // dominating stochastic matrix on V^a
    Vector rhs;   // dominating transition weights into a from V^a
    Vector rowA;  // dominating transition weights a -> V^a
    double w;     // dominating argument r * |z|
};

// Unconjugated row * column product.
cplx rowdot(const Vector& a, const Vector& b) { return (a.transpose() * b)(0); }

// Picks the tightest applicable domination among P_1, P_|s|, tilde and check
// (the one giving the smallest dominating argument).
std::optional<Dominator> pick_dominator(const FiniteNetwork& net, const BoundarySpec& spec,
                                        const std::vector<int>& reduced,
                                        const ComplexFrequency& s, cplx z) {
    std::optional<Dominator> best;
    const std::vector<std::pair<OperatorKind, double>> candidates = {
        {OperatorKind::stochasticAt(1.0), comparison_constants(s, 1.0).r_st},
        {OperatorKind::stochasticAt(s.abs()), comparison_constants(s, s.abs()).r_st},
        {OperatorKind::tilde(s.s), comparison_constants(s, 1.0).r_s},
        {OperatorKind::check(s.s), comparison_constants(s, 1.0).r_s},
    };
    for (const auto& [kind, r] : candidates) {
        const double w = r * std::abs(z);
        if (best && best->w <= w) continue;
        const AdmittanceOperator op = build_operator(net, kind);
        Matrix M = restrict_operator(op.entries, reduced);
        if (w * matrix_spectral_radius(M).radius >= 1.0) continue;
        Vector rhs(reduced.size()), rowA(reduced.size());
        for (size_t i = 0; i < reduced.size(); ++i) {
            rhs(i) = op.entries(reduced[i], spec.source);
            rowA(i) = op.entries(spec.source, reduced[i]);
        }
        best = Dominator{std::move(M), std::move(rhs), std::move(rowA), w};
    }
    return best;
}

struct Restricted {
    Matrix M;     // P_s on V^a
    Vector rhs;   // p_s(., a) on V^a
    Vector rowA;  // p_s(a, .) on V^a
    std::vector<int> reduced;
    double lambda;  // spectral radius of M

    int indexOf(int x) const {
        auto it = std::find(reduced.begin(), reduced.end(), x);
        if (it == reduced.end()) throw PreconditionError("series: vertex not in reduced interior");
        return static_cast<int>(it - reduced.begin());
    }
};

Restricted restrict_all(const FiniteNetwork& net, const BoundarySpec& spec,
                        const ComplexFrequency& s) {
    spec.validate(net);
    const AdmittanceOperator op = build_operator(net, s);
    std::vector<int> reduced = spec.reducedInterior(net);
    Matrix M = restrict_operator(op.entries, reduced);
    Vector rhs(reduced.size()), rowA(reduced.size());
    for (size_t i = 0; i < reduced.size(); ++i) {
        rhs(i) = op.entries(reduced[i], spec.source);
        rowA(i) = op.entries(spec.source, reduced[i]);
    }
    const double lambda = matrix_spectral_radius(M).radius;
    return {std::move(M), std::move(rhs), std::move(rowA), std::move(reduced), lambda};
}

// Accumulates terms from index `first`. nextTerm(k) must return the k-th
// complex term; nextDomTerm(k), when provided, the k-th term of the
// dominating nonnegative series whose full value is domTotal.
SeriesResult run_series(int first, const SeriesOptions& opt,
                        const std::function<cplx(int)>& nextTerm,
                        const std::function<double(int)>& nextDomTerm, double domTotal) {
    SeriesResult res;
    cplx sum = 0.0;
    double domPartial = 0.0;
    int quiet = 0;
    for (int k = first; k <= opt.maxTerms; ++k) {
        const cplx t = nextTerm(k);
        sum += t;
        res.termsUsed = k - first + 1;
        if (nextDomTerm) {
            domPartial += nextDomTerm(k);
            const double tail = std::max(0.0, domTotal - domPartial);
            res.dominationBound = tail;
            if (tail < opt.tailTol) {
                res.value = sum;
                res.status = SeriesStatus::Converged;
                return res;
            }
        }
        quiet = (std::abs(t) < opt.termTol) ? quiet + 1 : 0;
        if (quiet >= opt.quietTerms) {
            res.value = sum;
            res.status = SeriesStatus::Converged;
            return res;
        }
    }
    res.value = sum;
    res.status = SeriesStatus::Undecided;
    return res;
}

Vector geometric_resolvent(const Matrix& M, double w, const Vector& rhs) {
    const int m = M.rows();
    return (Matrix::Identity(m, m) - w * M).partialPivLu().solve(rhs);
}

}  // namespace

SeriesResult series_first_passage(const FiniteNetwork& net, const BoundarySpec& spec, int x,
                                  const ComplexFrequency& s, cplx z, const SeriesOptions& opt) {
    if (x == spec.source) return {1.0, 1, std::nullopt, SeriesStatus::Converged};
    Restricted r = restrict_all(net, spec, s);
    if (std::abs(z) * r.lambda >= 1.0) return {0.0, 0, std::nullopt, SeriesStatus::Diverged};
    const int ix = r.indexOf(x);
    if (z == 0.0) return {0.0, 1, 0.0, SeriesStatus::Converged};

    auto dom = pick_dominator(net, spec, r.reduced, s, z);
    double domTotal = 0.0;
    Vector domCol;
    double wPow = 0.0;
    if (dom) {
        domTotal = geometric_resolvent(dom->M, dom->w, dom->w * dom->rhs)(ix).real();
        domCol = dom->rhs;
        wPow = dom->w;
    }

    // f^(k)(x,a) z^k with f^(k) = P_{V^a}^{k-1} p(., a); terms start at k = 1.
    Vector col = r.rhs;
    cplx zPow = z;
    std::function<cplx(int)> term = [&](int) {
        const cplx t = zPow * col(ix);
        col = r.M * col;
        zPow *= z;
        return t;
    };
    std::function<double(int)> domTerm;
    if (dom)
        domTerm = [&](int) {
            const double d = wPow * domCol(ix).real();
            domCol = dom->M * domCol;
            wPow *= dom->w;
            return d;
        };
    return run_series(1, opt, term, domTerm, domTotal);
}

SeriesResult series_green(const FiniteNetwork& net, const BoundarySpec& spec, int x, int y,
                          const ComplexFrequency& s, cplx z, const SeriesOptions& opt) {
    Restricted r = restrict_all(net, spec, s);
    if (std::abs(z) * r.lambda >= 1.0) return {0.0, 0, std::nullopt, SeriesStatus::Diverged};
    const int ix = r.indexOf(x);
    const int iy = r.indexOf(y);
    const int m = r.M.rows();
    Vector ey = Vector::Zero(m);
    ey(iy) = 1.0;
    if (z == 0.0) return {ix == iy ? 1.0 : 0.0, 1, 0.0, SeriesStatus::Converged};

    auto dom = pick_dominator(net, spec, r.reduced, s, z);
    double domTotal = 0.0;
    Vector domCol;
    double wPow = 1.0;
    if (dom) {
        domTotal = geometric_resolvent(dom->M, dom->w, ey)(ix).real();
        domCol = ey;
    }

    Vector col = ey;
    cplx zPow = 1.0;
    std::function<cplx(int)> term = [&](int) {
        const cplx t = zPow * col(ix);
        col = r.M * col;
        zPow *= z;
        return t;
    };
    std::function<double(int)> domTerm;
    if (dom)
        domTerm = [&](int) {
            const double d = wPow * domCol(ix).real();
            domCol = dom->M * domCol;
            wPow *= dom->w;
            return d;
        };
    return run_series(0, opt, term, domTerm, domTotal);
}

SeriesResult series_return(const FiniteNetwork& net, const BoundarySpec& spec,
                           const ComplexFrequency& s, cplx z, const SeriesOptions& opt) {
    Restricted r = restrict_all(net, spec, s);
    if (std::abs(z) * r.lambda >= 1.0) return {0.0, 0, std::nullopt, SeriesStatus::Diverged};
    if (z == 0.0) return {0.0, 1, 0.0, SeriesStatus::Converged};

    auto dom = pick_dominator(net, spec, r.reduced, s, z);
    double domTotal = 0.0;
    Vector domCol;
    double wPow = 0.0;
    if (dom) {
        const Vector closedF = geometric_resolvent(dom->M, dom->w, dom->w * dom->rhs);
        domTotal = dom->w * rowdot(dom->rowA, closedF).real();
        domCol = dom->rhs;
        wPow = dom->w * dom->w;
    }

    // u^(k) = rowA . (M^{k-2} rhs), k >= 2; u^(1) = 0 since there are no loops.
    Vector col = r.rhs;
    cplx zPow = z * z;
    std::function<cplx(int)> term = [&](int) {
        const cplx t = zPow * rowdot(r.rowA, col);
        col = r.M * col;
        zPow *= z;
        return t;
    };
    std::function<double(int)> domTerm;
    if (dom)
        domTerm = [&](int) {
            const double d = wPow * rowdot(dom->rowA, domCol).real();
            domCol = dom->M * domCol;
            wPow *= dom->w;
            return d;
        };
    return run_series(2, opt, term, domTerm, domTotal);
}

}  // namespace cnet
