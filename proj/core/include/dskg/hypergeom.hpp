// Gauss hypergeometric function 2F1(a,b;c;z) for real z in [0,1), for the
// parameter families used by the kernel formulas: complex a,b with c=1 and
// real-parameter cases with c=3/2. Includes the z-derivative, the z -> 1-z
// connection formula (Abramowitz & Stegun 15.3.6), and a Lanczos complex
// gamma function.
#pragma once

#include <complex>

namespace dskg::hypergeom {

using cdouble = std::complex<double>;

struct HypergeomParams {
    cdouble a;
    cdouble b;
    cdouble c;
    double z = 0.0;  // must lie in [0,1)
};

struct HypergeomValue {
    cdouble value;
    double abs_error_estimate = 0.0;  // upper bound on truncation error
    int terms_used = 0;
};

inline constexpr double kDefaultTol = 1e-12;
inline constexpr int kTermBudget = 20000;
// Below this distance of c-a-b from the nearest integer the connection
// formula loses all significance (Gamma poles); callers fall back to the
// compensated direct series.
inline constexpr double kConnectionGap = 0.05;

// Series/transformation dispatch: direct series for z <= 0.5, connection
// formula for z > 0.5 away from integer c-a-b, double-double compensated
// series otherwise (the near-logarithmic cases, including a=b=1/2, c=1).
HypergeomValue gauss_2f1(const HypergeomParams& p, double tol = kDefaultTol);

// dF/dz evaluated as (ab/c) 2F1(a+1,b+1;c+1;z); finite at z=0 where it
// equals ab/c.
HypergeomValue gauss_2f1_dz(const HypergeomParams& p, double tol = kDefaultTol);

// A&S 15.3.6 applied at argument 1-z. Throws IllConditioned when c-a-b is
// within kConnectionGap of an integer.
HypergeomValue connection_15_3_6(cdouble a, cdouble b, cdouble c, double z,
                                 double tol = kDefaultTol);

// (2F1(g,g;1;z) - 2F1(g-1,g;1;z)) / z as a single series with coefficients
// (g)_k (g)_{k-1} / (k! (k-1)!). Removes the subtractive cancellation that
// dominates the difference as z -> 0.
HypergeomValue gauss_2f1_contiguous_diff(cdouble g, double z, double tol = kDefaultTol);

// |Gamma(1/2 + iM)|^2 = pi / cosh(pi M).
double abs_gamma_half_plus_iM_sq(double M);

// Lanczos approximation (g=7, 9 coefficients), reflection for Re z < 0.5.
cdouble cgamma(cdouble z);

}  // namespace dskg::hypergeom
