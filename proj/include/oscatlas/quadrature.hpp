#pragma once

#include <functional>
#include <vector>

#include "oscatlas/types.hpp"

namespace oscatlas {

struct QuadResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    long evals = 0;
};

// Globally adaptive Gauss-Kronrod 7/15 over [a, b] for a complex integrand.
// `max_len(x)` (optional) caps the admissible segment length around x; used to
// keep oscillatory integrands resolved independently of the error estimate.
QuadResult integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                              double abs_tol, double rel_tol,
                              const std::function<double(double)>& max_len = {},
                              long max_segments = 400000);

// Wynn epsilon acceleration of a sequence of (complex) partial sums.
class WynnEpsilon {
public:
    void push(Complex s);
    int count() const { return static_cast<int>(history_.size()); }
    // Best available even-column estimate and a stability-based error bound.
    Complex estimate() const { return estimate_; }
    double error() const { return error_; }

private:
    std::vector<Complex> history_;
    std::vector<Complex> row_;  // last anti-diagonal of the epsilon table
    Complex estimate_{0.0, 0.0};
    double error_ = 0.0;
};

struct TailResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    long evals = 0;
    int chunks = 0;
    bool accelerated = false;
};

// Integral over [x0, infinity) of e^{s i lambda x^p} w(x) for a smooth,
// eventually decaying weight w.  Chunks between half-period boundaries of the
// phase and sums with epsilon-algorithm acceleration; converges for weights
// that are absolutely integrable or of eventual power-law decay.
TailResult integrate_oscillatory_tail(const std::function<Complex(double)>& w, double p,
                                      double lambda, Sign sign, double x0, double tol,
                                      int max_chunks = 4000);

// Chebyshev interpolant of a smooth complex function on [a, b]; adaptive
// degree doubling until the coefficient tail drops below tol.
class ChebInterp {
public:
    static ChebInterp build(const std::function<Complex(double)>& f, double a, double b,
                            double tol, int max_pts, double* err_out, long* evals_out);
    Complex eval(double x) const;
    int size() const { return static_cast<int>(coef_.size()); }

private:
    double a_ = -1.0, b_ = 1.0;
    std::vector<Complex> coef_;
};

}  // namespace oscatlas
