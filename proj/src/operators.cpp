#include "cnet/operators.hpp"

namespace cnet {

cplx edge_weight(const EdgeParams& p, const OperatorKind& kind) {
    switch (kind.tag) {
        case OperatorKind::Tag::Complex:
            return edge_admittance(p, ComplexFrequency(kind.s));
        case OperatorKind::Tag::StochasticAtT: {
            if (!(kind.t > 0.0)) throw PreconditionError("edge_weight: t must be positive");
            return edge_admittance(p, ComplexFrequency(kind.t, 0.0));
        }
        case OperatorKind::Tag::Tilde:
            return edge_admittance(p, ComplexFrequency(kind.s)).real();
        case OperatorKind::Tag::Check:
            return std::abs(edge_admittance(p, ComplexFrequency(kind.s)));
    }
    throw PreconditionError("edge_weight: unknown kind");
}

AdmittanceOperator build_operator(const FiniteNetwork& net, const OperatorKind& kind) {
    const int n = net.vertexCount();
    Matrix w = Matrix::Zero(n, n);
    for (const Edge& e : net.edges()) {
        const cplx rho = edge_weight(e.params, kind);
        w(e.u, e.v) = rho;
        w(e.v, e.u) = rho;
    }
    Vector mass(n);
    for (int x = 0; x < n; ++x) {
        mass(x) = w.row(x).sum();
        w.row(x) /= mass(x);
    }
    return {std::move(w), std::move(mass), kind};
}

Matrix restrict_operator(const Matrix& entries, const std::vector<int>& subset) {
    const int m = static_cast<int>(subset.size());
    Matrix out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = entries(subset[i], subset[j]);
    return out;
}

}  // namespace cnet
