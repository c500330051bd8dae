#pragma once

#include "cnet/operators.hpp"

namespace cnet {

/// Solution of the grounded Dirichlet problem: v(a) = 1, v = 0 on the
/// boundary, harmonic on the reduced interior.
struct DirichletSolution {
    Vector v;  // full vector over all vertices
    BoundarySpec spec;
};

/// Inverse of (I - P) restricted to a vertex subset.
struct GreenMatrix {
    Matrix G;
    std::vector<int> restriction;  // vertex ids indexing rows/columns

    int indexOf(int vertex) const;
    cplx operator()(int x, int y) const { return G(indexOf(x), indexOf(y)); }
};

GreenMatrix green_finite(const FiniteNetwork& net, const std::vector<int>& interior,
                         const OperatorKind& kind);

inline GreenMatrix green_finite(const FiniteNetwork& net, const std::vector<int>& interior,
                                const ComplexFrequency& s) {
    return green_finite(net, interior, OperatorKind::complexAt(s.s));
}

/// Solves the Dirichlet problem by both routes (linear solve on the reduced
/// interior, and the Green-column ratio) and cross-checks them.
DirichletSolution solve_dirichlet(const FiniteNetwork& net, const BoundarySpec& spec,
                                  const OperatorKind& kind);

inline DirichletSolution solve_dirichlet(const FiniteNetwork& net, const BoundarySpec& spec,
                                         const ComplexFrequency& s) {
    return solve_dirichlet(net, spec, OperatorKind::complexAt(s.s));
}

struct EffectiveAdmittance {
    cplx value;            // the source-side formula
    cplx boundaryFormula;  // current collected at the grounded set
    cplx energyFormula;    // (1/2) sum (v(x)-v(y))^2 rho(x,y)
    cplx greenIdentity;    // rho(a) / G(a,a)
    double maxResidual;    // worst pairwise disagreement
};

EffectiveAdmittance effective_admittance_full(const FiniteNetwork& net, const BoundarySpec& spec,
                                              const OperatorKind& kind);

cplx effective_admittance(const FiniteNetwork& net, const BoundarySpec& spec,
                          const OperatorKind& kind);

inline cplx effective_admittance(const FiniteNetwork& net, const BoundarySpec& spec,
                                 const ComplexFrequency& s) {
    return effective_admittance(net, spec, OperatorKind::complexAt(s.s));
}

struct SpectralRadius {
    double radius;
    cplx witness;  // an eigenvalue attaining the radius
};

/// Largest-modulus eigenvalue of the operator restricted to `interior`.
SpectralRadius restricted_spectral_radius(const FiniteNetwork& net,
                                          const std::vector<int>& interior,
                                          const OperatorKind& kind);

SpectralRadius matrix_spectral_radius(const Matrix& m);

}  // namespace cnet
