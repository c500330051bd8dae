#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>

#include "cnet/network.hpp"

namespace cnet {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Which row-normalization of the edge weights to use.
///
///   Complex       p(x,y) = rho_s(x,y) / rho_s(x)          (complex entries)
///   StochasticAtT p(x,y) evaluated at real frequency t     (stochastic)
///   Tilde         p(x,y) = Re rho_s(x,y) / Re rho_s(x)     (stochastic)
///   Check         p(x,y) = |rho_s(x,y)| / sum |rho_s(x,.)| (stochastic)
struct OperatorKind {
    enum class Tag { Complex, StochasticAtT, Tilde, Check };
    Tag tag;
    cplx s = 1.0;    // for Complex / Tilde / Check
    double t = 1.0;  // for StochasticAtT

    static OperatorKind complexAt(cplx s) { return {Tag::Complex, s, 0.0}; }
    static OperatorKind stochasticAt(double t) { return {Tag::StochasticAtT, cplx(t), t}; }
    static OperatorKind tilde(cplx s) { return {Tag::Tilde, s, 0.0}; }
    static OperatorKind check(cplx s) { return {Tag::Check, s, 0.0}; }

    bool stochastic() const { return tag != Tag::Complex; }
};

/// Unnormalized weight of a single edge under the given kind:
/// rho_s, rho_t, Re rho_s or |rho_s|. Row-normalizing these yields the
/// corresponding transition operator.
cplx edge_weight(const EdgeParams& p, const OperatorKind& kind);

/// Row-normalized transition matrix together with the row masses that
/// normalized it.
struct AdmittanceOperator {
    Matrix entries;   // p(x,y), vertexCount x vertexCount
    Vector rowMass;   // rho_s(x) (or its stochastic analogue)
    OperatorKind kind;
};

AdmittanceOperator build_operator(const FiniteNetwork& net, const OperatorKind& kind);

inline AdmittanceOperator build_operator(const FiniteNetwork& net, const ComplexFrequency& s) {
    return build_operator(net, OperatorKind::complexAt(s.s));
}

/// Submatrix of op.entries restricted to the given vertex subset (in order).
Matrix restrict_operator(const Matrix& entries, const std::vector<int>& subset);

}  // namespace cnet
