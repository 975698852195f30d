#pragma once

#include "oscatlas/types.hpp"

namespace oscatlas {

// Gamma function on the complex plane, Lanczos approximation with reflection
// for Re z < 1/2.  Relative accuracy better than 1e-13 for |z| <= 50.
// Throws PoleError when z is within 1e-12 of a non-positive integer.
Complex gamma(Complex z);

// Distance from z to the nearest non-positive integer (the pole set of gamma).
double gamma_pole_distance(Complex z);

// Principal branch W0 of the Lambert W function: the solution x >= -1 of
// x e^x = y for y >= -1/e.  Residual |W e^W - y| <= 1e-14 * max(1, |y|).
// Throws DomainError for y < -1/e - 1e-15.
double lambert_w0(double y);

// dW0/dY.  Equals W / (Y (1 + W)) away from Y = 0, and 1 at Y = 0.
double lambert_w0_deriv(double y);

}  // namespace oscatlas
