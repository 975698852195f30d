#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oscatlas/amplitude.hpp"
#include "oscatlas/regularizer.hpp"
#include "oscatlas/types.hpp"

namespace oscatlas {

enum class OracleMethod { eps_extrapolation, ibp_regularized, both_crosscheck };

enum class ChiKind { gaussian, sech };

// Geometric sequence of damping parameters for the convergence-factor route.
struct EpsSequence {
    double eps0 = 0.5;
    double ratio = 0.5;
    int count = 9;
};

struct OracleConfig {
    OracleMethod method = OracleMethod::both_crosscheck;
    double quad_tol = 1e-10;
    EpsSequence eps;
    ChiKind chi = ChiKind::gaussian;
    // 0 = choose automatically from damping/amplitude decay.
    double truncation_radius = 0.0;
    // Cut-off radii and IBP order for the regularized route; unset = automatic
    // (r0 = max(1, support hint), r1 = r0 + 1, l = l_min + 1).
    std::optional<SplitConfig> split;
    // Segment length cap, as a fraction of the local phase period.
    double period_fraction = 0.5;
    long max_segments = 400000;
    // Half-period chunks for the accelerated tail summation.
    int max_chunks = 1200;
    // Largest admissible phase range lambda * R^p per damped quadrature;
    // damping parameters whose truncation radius exceeds it are not used.
    double u_budget = 8.0e5;
};

struct OracleResult {
    Complex value{0.0, 0.0};
    double err_estimate = 0.0;
    OracleMethod method = OracleMethod::eps_extrapolation;
    std::map<std::string, double> diagnostics;
};

// Os-integral over (0, inf) of e^{s i lambda x^p} x^{q-1} a(x).
//   eps_extrapolation: damped integrals with factor chi(eps x), Richardson
//     extrapolation in eps^2 over the usable part of the sequence.
//   ibp_regularized: mollifier split at (r0, r1); inner piece integrated
//     directly (substitution u = x^q removes the x^{q-1} singularity when
//     q < 1), tail integrated after l >= l_min applications of the formal
//     adjoint, with accelerated summation over phase half-periods.
OracleResult oscillatory_half_line(double p, double q, Sign sign, double lambda,
                                   const Amplitude& a, const OracleConfig& cfg);

// Os-integral over the whole line of e^{s i lambda x^m} a(x): the half-line
// value plus the reflected half-line with amplitude a(-y) and sign s*(-1)^m.
OracleResult oscillatory_full_line(int m, Sign sign, double lambda, const Amplitude& a,
                                   const OracleConfig& cfg);

// Iterated integral of e^{i lambda sum_j s_j x_j^{p_j}} a(x) over the positive
// orthant (full_space = false) or all of R^n (full_space = true; integer
// powers only).  Compactly supported amplitudes; inner levels are interpolated
// by Chebyshev polynomials between quadratures of the outer level.  n <= 3.
OracleResult oscillatory_nd(const std::vector<double>& p, const std::vector<Sign>& signs,
                            double lambda, const AmplitudeND& a, bool full_space,
                            const OracleConfig& cfg);

// Proper integral of e^{s i lambda phi(x)} a(x) for a compactly supported
// amplitude and a smooth phase given with its derivative (used to verify
// analytic-phase expansions).  full_line selects (-R, R) vs (0, R).
OracleResult oscillatory_compact_1d(const std::function<double(double)>& phi,
                                    const std::function<double(double)>& phi_deriv,
                                    Sign sign, double lambda, const Amplitude& a,
                                    bool full_line, const OracleConfig& cfg);

}  // namespace oscatlas
