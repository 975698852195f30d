#pragma once

#include "oscatlas/types.hpp"

namespace oscatlas {

// Generalized Fresnel integral
//   I(p, q, s) = p^{-1} e^{s i (pi/2) (q/p)} Gamma(q/p),   s = +/-1,
// the value of the half-line oscillatory integral of e^{s i x^p} x^{q-1}.
// q may be complex (meromorphic continuation); poles at q = -p j, j in N0,
// reported via PoleError.
Complex fresnel_general(double p, Complex q, Sign sign);

// Reflected-half-line variant: m^{-1} e^{s (-1)^m i (pi/2) (k+1)/m} Gamma((k+1)/m).
// Equals fresnel_general(m, k+1, sign) for even m and the sign-flipped value
// for odd m.
Complex fresnel_reflected(int m, int k, Sign sign);

// Full-line coefficient c_{m,k} = I(m, k+1, s) + (-1)^k * reflected.
// Parity cancellations return exact zero (no floating subtraction).
Complex coeff_full_line(int m, int k, Sign sign);

// Minus combination c^{-}_{m,k} = I(m, k+1, s) - (-1)^k * reflected,
// the coefficient arising for analytic phases on the full line.
Complex coeff_minus(int m, int k, Sign sign);

// Extended Beta function
//   B(p, q; s) = e^{-s i (pi/2) (q1/p1 + q2/p2 - q3/p3)} (p1 p2 / p3)
//                * I(p1,q1,s) I(p2,q2,s) / I(p3,q3,s).
// Reduces to the Euler Beta function at p1 = p2 = p3 = 1, q3 = q1 + q2.
Complex beta_extended(double p1, double p2, double p3, Complex q1, Complex q2,
                      Complex q3, Sign sign);

}  // namespace oscatlas
