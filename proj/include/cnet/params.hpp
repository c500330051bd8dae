#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cnet {

using cplx = std::complex<double>;

/// Raised when an input violates a documented precondition.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when two independent computation routes disagree beyond tolerance.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-edge circuit parameters. The edge admittance at frequency s is
/// s / (L s^2 + R s + D).
struct EdgeParams {
    double L = 0.0;  // inductance
    double R = 0.0;  // resistance
    double D = 0.0;  // capacitance parameter

    EdgeParams() = default;
    EdgeParams(double L_, double R_, double D_) : L(L_), R(R_), D(D_) {
        if (L < 0 || R < 0 || D < 0)
            throw PreconditionError("EdgeParams: L, R, D must be nonnegative");
        if (L + R + D <= 0)
            throw PreconditionError("EdgeParams: L + R + D must be positive");
    }

    static EdgeParams resistor(double R_ = 1.0) { return {0.0, R_, 0.0}; }
    static EdgeParams capacitorLike() { return {0.0, 0.0, 1.0}; }  // admittance = s
    static EdgeParams inductorLike() { return {1.0, 0.0, 0.0}; }   // admittance = 1/s

    bool operator==(const EdgeParams&) const = default;
};

/// A complex frequency point, constrained to the right half plane.
struct ComplexFrequency {
    cplx s;

    ComplexFrequency(cplx s_) : s(s_) {
        if (!(s.real() > 0.0))
            throw PreconditionError("ComplexFrequency: Re s must be positive");
    }
    ComplexFrequency(double re, double im) : ComplexFrequency(cplx(re, im)) {}

    double re() const { return s.real(); }
    double abs() const { return std::abs(s); }
};

/// Edge admittance rho_s = s / (L s^2 + R s + D). Always has positive real
/// part for Re s > 0 (positive-real function).
cplx edge_admittance(const EdgeParams& p, const ComplexFrequency& s);

struct ComparisonConstants {
    double r_st;  // max(|s|^4/t^2, t^2) / (Re s)^2
    double r_s;   // |s| / Re s
};

ComparisonConstants comparison_constants(const ComplexFrequency& s, double t);

}  // namespace cnet
