#pragma once

#include <string>
#include <vector>

#include "oscatlas/amplitude.hpp"
#include "oscatlas/jet.hpp"
#include "oscatlas/types.hpp"

namespace oscatlas {

struct ExpansionTerm {
    double exponent = 0.0;  // the term is coeff * lambda^{-exponent}
    Complex coeff{0.0, 0.0};
    std::vector<int> index;  // k (one entry) or the multi-index alpha
};

struct ExpansionMeta {
    std::string form;  // half_line, full_line, parity_odd, ... (see producers)
    double power = 0.0;
    int N = 0;
    Sign sign = Sign::plus;
};

// Ordered term list plus the guaranteed decay order of the truncation error.
// Zero coefficients are kept so term positions line up with the index k.
struct Expansion {
    std::vector<ExpansionTerm> terms;
    double remainder_exponent = 0.0;
    ExpansionMeta meta;
};

// Half-line expansion of Os-int_0^inf e^{s i lambda x^p} a(x) dx:
// term k has coefficient I(p, k+1, s) a^(k)(0)/k! and exponent (k+1)/p;
// remainder exponent (N + 1 - (p - [p])) / p.
Expansion expand_half_line(double p, Sign sign, const Amplitude& a, int N);

// Full-line expansion for integer power m with coefficients c_{m,k};
// remainder exponent (N + 1) / m.
Expansion expand_full_line(int m, Sign sign, const Amplitude& a, int N);

enum class ParityForm { odd_power, even_power };

// The explicit cosine/sine (m = 2l-1) and single-exponential (m = 2l) forms.
// Termwise equal to expand_full_line at the matching term count.
Expansion expand_parity_forms(int l, Sign sign, const Amplitude& a, int N, ParityForm form);

// Monomial-times-power-series phase x^p (1 + sum a_j x^j), given by the
// coefficient prefix.  growth_bound = max |a_j|^{1/j}; the substitution is a
// diffeomorphism on (-R0, R0) with R0 = 1/(2 growth_bound).
struct PhaseSeries {
    double p = 1.0;
    std::vector<double> coeffs;  // a_1, a_2, ... (finite prefix)

    double growth_bound() const;
    double r0() const;  // +inf when all coefficients vanish

    // Phase value/derivative with the prefix treated as exact.
    double phase(double x) const;
    double phase_deriv(double x) const;
};

// Jet of a(Phi(y)) Phi'(y) at y = 0, where Phi inverts x (1 + sum a_j x^j)^{1/p}.
Jet analytic_composite_jet(const PhaseSeries& phase, const Amplitude& a, int order);

enum class LineKind { half, full };

// Expansion for the analytic phase: coefficients I(p, k+1, s) (half line) or
// c^-_{m,k} (full line, integer p) times the composite-jet coefficient k.
Expansion expand_analytic_phase(const PhaseSeries& phase, Sign sign, const Amplitude& a,
                                int N, LineKind line);

// sum of coeff * lambda^{-exponent} over the terms.
Complex evaluate_expansion(const Expansion& e, double lambda);

}  // namespace oscatlas
