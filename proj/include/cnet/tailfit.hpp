#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cnet/params.hpp"

namespace cnet {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    LineFit f;
    const double vx = n * sxx - sx * sx;
    const double vy = n * syy - sy * sy;
    if (vx <= 0) return f;
    f.slope = (n * sxy - sx * sy) / vx;
    f.intercept = (sy - f.slope * sx) / n;
    if (vy <= 0)
        f.r2 = 1.0;  // constant data: the fit is exact
    else
        f.r2 = (n * sxy - sx * sy) * (n * sxy - sx * sy) / (vx * vy);
    return f;
}

struct TailFit {
    cplx limit = 0.0;
    double maxResidual = 0.0;
};

/// Least-squares fit of values ~ A + B/n over a tail window; A estimates
/// the limit and absorbs O(1/n) convergence error.
inline TailFit extrapolate_tail(const std::vector<int>& radii, const std::vector<cplx>& values) {
    const size_t n = values.size();
    const size_t tail = std::min<size_t>(std::max<size_t>(5, n / 2), 50);
    if (n < 3) return {n ? values.back() : cplx(0.0), 0.0};
    const size_t from = n - std::min(tail, n);
    std::vector<double> xs, re, im;
    for (size_t i = from; i < n; ++i) {
        xs.push_back(1.0 / radii[i]);
        re.push_back(values[i].real());
        im.push_back(values[i].imag());
    }
    const LineFit fr = fit_line(xs, re);
    const LineFit fi = fit_line(xs, im);
    TailFit t;
    t.limit = cplx(fr.intercept, fi.intercept);
    for (size_t i = 0; i < xs.size(); ++i) {
        const cplx model(fr.intercept + fr.slope * xs[i], fi.intercept + fi.slope * xs[i]);
        t.maxResidual = std::max(t.maxResidual, std::abs(values[from + i] - model));
    }
    // sequences that converge faster than 1/n (e.g. geometrically) are
    // served better by their last value than by the fitted intercept
    double constResidual = 0.0;
    for (size_t i = n - std::min<size_t>(5, n); i < n; ++i)
        constResidual = std::max(constResidual, std::abs(values[i] - values[n - 1]));
    if (constResidual < t.maxResidual) {
        t.limit = values[n - 1];
        t.maxResidual = constResidual;
    }
    return t;
}

}  // namespace cnet
