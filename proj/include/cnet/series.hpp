#pragma once

#include <optional>

#include "cnet/finsolve.hpp"

namespace cnet {

enum class SeriesStatus { Converged, Diverged, Undecided };

/// Partial-sum evaluation of a power-series kernel together with the
/// certificate that justified stopping.
struct SeriesResult {
    cplx value = 0.0;
    int termsUsed = 0;
    std::optional<double> dominationBound;  // final tail bound, when a dominating series applied
    SeriesStatus status = SeriesStatus::Undecided;

    bool converged() const { return status == SeriesStatus::Converged; }
};

struct SeriesOptions {
    int maxTerms = 200000;
    double tailTol = 1e-12;
    double termTol = 1e-15;
    int quietTerms = 10;  // consecutive tiny terms required
};

/// F_{V^o}(x, a | z): first-passage generating series for the complex kind.
/// At z = 1 this is the power-series solution of the Dirichlet problem at x.
SeriesResult series_first_passage(const FiniteNetwork& net, const BoundarySpec& spec, int x,
                                  const ComplexFrequency& s, cplx z,
                                  const SeriesOptions& opt = {});

/// G_{V^a}(x, y | z): restricted Green generating series.
SeriesResult series_green(const FiniteNetwork& net, const BoundarySpec& spec, int x, int y,
                          const ComplexFrequency& s, cplx z, const SeriesOptions& opt = {});

/// U(a, a | z): first-return generating series at the source.
SeriesResult series_return(const FiniteNetwork& net, const BoundarySpec& spec,
                           const ComplexFrequency& s, cplx z, const SeriesOptions& opt = {});

}  // namespace cnet
