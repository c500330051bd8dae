#include "cnet/finsolve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace cnet {

namespace {

constexpr double kDirichletTol = 1e-10;
constexpr double kAdmittanceTol = 1e-9;

double relErr(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); }

}  // namespace

int GreenMatrix::indexOf(int vertex) const {
    auto it = std::find(restriction.begin(), restriction.end(), vertex);
    if (it == restriction.end())
        throw PreconditionError("GreenMatrix: vertex not in restriction");
    return static_cast<int>(it - restriction.begin());
}

GreenMatrix green_finite(const FiniteNetwork& net, const std::vector<int>& interior,
                         const OperatorKind& kind) {
    if (interior.empty()) throw PreconditionError("green_finite: empty interior");
    if (static_cast<int>(interior.size()) >= net.vertexCount())
        throw PreconditionError("green_finite: interior must be a proper subset");
    const AdmittanceOperator op = build_operator(net, kind);
    const Matrix P = restrict_operator(op.entries, interior);
    const int m = P.rows();
    const Matrix A = Matrix::Identity(m, m) - P;
    Eigen::PartialPivLU<Matrix> lu(A);
    Matrix G = lu.solve(Matrix::Identity(m, m));
    // one step of iterative refinement
    G += lu.solve(Matrix::Identity(m, m) - A * G);
    const double residual = (A * G - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > kDirichletTol)
        throw ConsistencyError("green_finite: restricted system is numerically singular");
    return {std::move(G), interior};
}

DirichletSolution solve_dirichlet(const FiniteNetwork& net, const BoundarySpec& spec,
                                  const OperatorKind& kind) {
    spec.validate(net);
    if (spec.boundary.empty())
        throw PreconditionError("solve_dirichlet: boundary must be nonempty");
    const int n = net.vertexCount();
    const int a = spec.source;
    const AdmittanceOperator op = build_operator(net, kind);
    const std::vector<int> interior = spec.interior(net);
    const std::vector<int> reduced = spec.reducedInterior(net);

    Vector v = Vector::Zero(n);
    v(a) = 1.0;
    if (!reduced.empty()) {
        // route 1: v|_{V^a} = G_{V^a} P_{V^a, boundary+a} v|_{boundary+a},
        // which collapses to the column of transition weights into a.
        const GreenMatrix Gred = green_finite(net, reduced, kind);
        Vector rhs(reduced.size());
        for (size_t i = 0; i < reduced.size(); ++i) rhs(i) = op.entries(reduced[i], a);
        const Vector vr = Gred.G * rhs;
        for (size_t i = 0; i < reduced.size(); ++i) v(reduced[i]) = vr(i);
    }

    // route 2: ratio of Green columns on the full interior
    const GreenMatrix Gint = green_finite(net, interior, kind);
    const int ia = Gint.indexOf(a);
    double worst = 0.0;
    for (size_t i = 0; i < interior.size(); ++i) {
        const cplx alt = Gint.G(i, ia) / Gint.G(ia, ia);
        worst = std::max(worst, std::abs(alt - v(interior[i])));
    }
    if (worst > kDirichletTol)
        throw ConsistencyError("solve_dirichlet: the two solution formulas disagree (" +
                               std::to_string(worst) + ")");
    return {std::move(v), spec};
}

EffectiveAdmittance effective_admittance_full(const FiniteNetwork& net, const BoundarySpec& spec,
                                              const OperatorKind& kind) {
    const DirichletSolution sol = solve_dirichlet(net, spec, kind);
    const Vector& v = sol.v;
    const int a = spec.source;

    cplx source = 0.0;
    for (auto [x, ei] : net.neighbors(a))
        source += (1.0 - v(x)) * edge_weight(net.edges()[ei].params, kind);

    cplx boundarySide = 0.0;
    for (int b : spec.boundary)
        for (auto [y, ei] : net.neighbors(b))
            boundarySide += v(y) * edge_weight(net.edges()[ei].params, kind);

    cplx energy = 0.0;
    for (const Edge& e : net.edges()) {
        const cplx d = v(e.u) - v(e.v);
        energy += d * d * edge_weight(e.params, kind);
    }

    const GreenMatrix Gint = green_finite(net, spec.interior(net), kind);
    cplx mass = 0.0;
    for (auto [x, ei] : net.neighbors(a)) mass += edge_weight(net.edges()[ei].params, kind);
    const cplx viaGreen = mass / Gint(a, a);

    double worst = std::max({relErr(source, boundarySide), relErr(source, energy),
                             relErr(source, viaGreen)});
    if (worst > kAdmittanceTol)
        throw ConsistencyError("effective_admittance: formulas disagree (" +
                               std::to_string(worst) + ")");
    return {source, boundarySide, energy, viaGreen, worst};
}

cplx effective_admittance(const FiniteNetwork& net, const BoundarySpec& spec,
                          const OperatorKind& kind) {
    return effective_admittance_full(net, spec, kind).value;
}

SpectralRadius matrix_spectral_radius(const Matrix& m) {
    if (m.rows() == 0) return {0.0, 0.0};
    Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw ConsistencyError("matrix_spectral_radius: eigen iteration failed to converge");
    SpectralRadius out{0.0, 0.0};
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx lam = es.eigenvalues()(i);
        if (std::abs(lam) > out.radius) out = {std::abs(lam), lam};
    }
    return out;
}

SpectralRadius restricted_spectral_radius(const FiniteNetwork& net,
                                          const std::vector<int>& interior,
                                          const OperatorKind& kind) {
    if (interior.empty()) throw PreconditionError("restricted_spectral_radius: empty interior");
    const AdmittanceOperator op = build_operator(net, kind);
    return matrix_spectral_radius(restrict_operator(op.entries, interior));
}

}  // namespace cnet
