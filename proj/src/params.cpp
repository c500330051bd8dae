#include "cnet/params.hpp"

#include <algorithm>
#include <cmath>

namespace cnet {

cplx edge_admittance(const EdgeParams& p, const ComplexFrequency& s) {
    const cplx z = p.L * s.s * s.s + p.R * s.s + p.D;
    return s.s / z;
}

ComparisonConstants comparison_constants(const ComplexFrequency& s, double t) {
    if (!(t > 0.0)) throw PreconditionError("comparison_constants: t must be positive");
    const double a = s.abs();
    const double re = s.re();
    const double r_st = std::max(a * a * a * a / (t * t), t * t) / (re * re);
    return {r_st, a / re};
}

}  // namespace cnet
