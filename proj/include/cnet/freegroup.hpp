#pragma once

#include <memory>
#include <vector>

#include "cnet/operators.hpp"

namespace cnet {

class GraphGenerator;

/// A free group on k generators with one admittance assignment per generator
/// (shared by the generator and its inverse).
struct FreeGroupSpec {
    int k;
    std::vector<EdgeParams> assign;  // size k

    FreeGroupSpec(int k_, std::vector<EdgeParams> assign_);
    static FreeGroupSpec fromSymbols(int k, const std::vector<std::string>& symbols);

    /// Counts of symbolic assignments (admittance s, 1/s, 1); all three are
    /// meaningful only when every assignment is one of the three symbols.
    int l1() const;  // admittance s   (D = 1)
    int l2() const;  // admittance 1/s (L = 1)
    int l3() const;  // admittance 1   (R = 1)
    bool symbolic() const;
};

/// The convolution measure mu_s on the generating set, mu_s(a_j) =
/// rho_s(e, a_j) / rho_s(e). Symmetric: mu(a_j) = mu(a_j^{-1}).
struct ConvolutionMeasure {
    std::vector<cplx> values;  // mu_s(a_j), j = 1..k
    double totalAbs;           // 2 sum |mu_s(a_j)|
};

ConvolutionMeasure convolution_measure(const FreeGroupSpec& spec, const ComplexFrequency& s);

/// l^2 convolution-operator norm of a symmetric measure on the free group,
/// from the one-dimensional variational formula: 2 min_{t>=0} (t +
/// sum_j (sqrt(t^2 + c_j^2) - t)) with c_j = |mu(a_j)|. The derivative is
/// strictly increasing from 1-k to 1, so the minimizer is its unique root.
double akemann_ostrand_norm(const std::vector<double>& c);

inline double akemann_ostrand_norm(const ConvolutionMeasure& mu) {
    std::vector<double> c;
    for (cplx v : mu.values) c.push_back(std::abs(v));
    return akemann_ostrand_norm(c);
}

/// sqrt(2k-1) / |l1 s + l2/s + l3|, valid for symbolic assignments.
double closed_form_norm(const FreeGroupSpec& spec, const ComplexFrequency& s);

struct NormReportRow {
    double alpha;
    double norm;
    bool belowOne;       // Green series at z=1 certified by the norm
    double massBound;    // |s| / Re s upper bound on the total mass
    double totalAbs;
};

/// Norm sweep over s = e^{i alpha} for the given alpha grid.
std::vector<NormReportRow> norm_threshold_report(const FreeGroupSpec& spec,
                                                 const std::vector<double>& alphaGrid);

/// Exact convolution powers mu_s^(n)(e, e) for n = 0..nMax, via the
/// first-passage generating-function recursion on the tree (no truncation
/// error: the Cayley graph is a tree).
std::vector<cplx> convolution_return_series(const FreeGroupSpec& spec, const ComplexFrequency& s,
                                            int nMax);

std::unique_ptr<GraphGenerator> make_free_group_generator(const FreeGroupSpec& spec);

}  // namespace cnet
