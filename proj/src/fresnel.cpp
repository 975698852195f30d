#include "oscatlas/fresnel.hpp"

#include <cmath>

#include "oscatlas/special.hpp"

namespace oscatlas {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

constexpr Complex kI{0.0, 1.0};

// True when (k+1)/m is an integer of the given parity (0 = even, 1 = odd),
// the exact-cancellation test for cos/sin at rational multiples of pi/2.
bool ratio_is_integer_with_parity(int k, int m, int parity) {
    if ((k + 1) % m != 0) return false;
    return ((k + 1) / m) % 2 == parity;
}

}  // namespace

Complex fresnel_general(double p, Complex q, Sign sign) {
    if (!(p > 0.0)) throw DomainError("fresnel_general: need p > 0");
    Complex z = q / p;
    Complex g = gamma(z);  // PoleError propagates for q = -p j
    double s = sign_value(sign);
    Complex phase = std::exp(kI * (s * kPi / 2.0) * z);
    return phase * g / p;
}

Complex fresnel_reflected(int m, int k, Sign sign) {
    if (m < 1) throw DomainError("fresnel_reflected: need m >= 1");
    if (k < 0) throw DomainError("fresnel_reflected: need k >= 0");
    Sign eff = (m % 2 == 0) ? sign : flip(sign);
    return fresnel_general(static_cast<double>(m), Complex(k + 1, 0.0), eff);
}

namespace {

// Shared parity-aware evaluation of I +- (-1)^k I_reflected.  `minus_combo`
// selects the minus combination.  Even m collapses to 0 or 2I symbolically;
// odd m reduces to cosine/sine forms whose exact zeros are detected from the
// rationality of (k+1)/m.
Complex parity_combination(int m, int k, Sign sign, bool minus_combo) {
    if (m < 1) throw DomainError("coefficient: need m >= 1");
    if (k < 0) throw DomainError("coefficient: need k >= 0");
    double md = static_cast<double>(m);
    double r = (k + 1) / md;
    double s = sign_value(sign);
    // Weight on the reflected term: (-1)^k, negated for the minus combination.
    double w = (k % 2 == 0) ? 1.0 : -1.0;
    if (minus_combo) w = -w;
    if (m % 2 == 0) {
        // Reflected value equals the direct one.
        if (w < 0.0) return Complex(0.0, 0.0);
        return 2.0 * fresnel_general(md, Complex(k + 1, 0.0), sign);
    }
    // Odd m: direct phase e^{s i pi r / 2}, reflected phase e^{-s i pi r / 2}.
    double gr = gamma(Complex(r, 0.0)).real();
    if (w > 0.0) {
        // 2 cos(pi r / 2): exact zero iff r is an odd integer.
        if (ratio_is_integer_with_parity(k, m, 1)) return Complex(0.0, 0.0);
        return Complex(2.0 * std::cos(kPi * r / 2.0) * gr / md, 0.0);
    }
    // s * 2 i sin(pi r / 2): exact zero iff r is an even integer.
    if (ratio_is_integer_with_parity(k, m, 0)) return Complex(0.0, 0.0);
    return kI * (s * 2.0 * std::sin(kPi * r / 2.0) * gr / md);
}

}  // namespace

Complex coeff_full_line(int m, int k, Sign sign) {
    return parity_combination(m, k, sign, false);
}

Complex coeff_minus(int m, int k, Sign sign) {
    return parity_combination(m, k, sign, true);
}

Complex beta_extended(double p1, double p2, double p3, Complex q1, Complex q2,
                      Complex q3, Sign sign) {
    Complex i1 = fresnel_general(p1, q1, sign);
    Complex i2 = fresnel_general(p2, q2, sign);
    Complex i3 = fresnel_general(p3, q3, sign);
    if (i3 == Complex(0.0, 0.0))
        throw DivisionByZero("beta_extended: denominator integral vanished");
    double s = sign_value(sign);
    Complex expo = -kI * (s * kPi / 2.0) * (q1 / p1 + q2 / p2 - q3 / p3);
    return std::exp(expo) * (p1 * p2 / p3) * i1 * i2 / i3;
}

}  // namespace oscatlas
