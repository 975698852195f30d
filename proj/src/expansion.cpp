#include "oscatlas/expansion.hpp"

#include <cmath>
#include <limits>

#include "oscatlas/fresnel.hpp"
#include "oscatlas/special.hpp"

namespace oscatlas {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr Complex kI{0.0, 1.0};

void check_admissible(double p, const Amplitude& a) {
    if (!(a.delta() < p - 1.0))
        throw InadmissibleClass("expansion: delta >= p - 1");
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

bool ratio_is_integer_with_parity(int num, int den, int parity) {
    if (num % den != 0) return false;
    return (num / den) % 2 == parity;
}

}  // namespace

Expansion expand_half_line(double p, Sign sign, const Amplitude& a, int N) {
    if (!(p > 0.0)) throw DomainError("expand_half_line: need p > 0");
    if (N < 1) throw BadParams("expand_half_line: need N >= 1");
    check_admissible(p, a);
    Expansion e;
    e.meta = {"half_line", p, N, sign};
    for (int k = 0; k < N; ++k) {
        Complex coeff = a.derivative(k, 0.0) == 0.0
                            ? Complex(0.0, 0.0)
                            : fresnel_general(p, Complex(k + 1, 0.0), sign) *
                                  (a.derivative(k, 0.0) / factorial(k));
        e.terms.push_back({(k + 1) / p, coeff, {k}});
    }
    e.remainder_exponent = (N + 1 - (p - gauss_floor(p))) / p;
    return e;
}

Expansion expand_full_line(int m, Sign sign, const Amplitude& a, int N) {
    if (m < 1) throw DomainError("expand_full_line: need m >= 1");
    if (N < 1) throw BadParams("expand_full_line: need N >= 1");
    check_admissible(static_cast<double>(m), a);
    Expansion e;
    e.meta = {"full_line", static_cast<double>(m), N, sign};
    for (int k = 0; k < N; ++k) {
        double ak = a.derivative(k, 0.0);
        Complex c = coeff_full_line(m, k, sign);
        Complex coeff = (ak == 0.0 || c == Complex(0.0, 0.0))
                            ? Complex(0.0, 0.0)
                            : c * (ak / factorial(k));
        e.terms.push_back({static_cast<double>(k + 1) / m, coeff, {k}});
    }
    e.remainder_exponent = static_cast<double>(N + 1) / m;
    return e;
}

Expansion expand_parity_forms(int l, Sign sign, const Amplitude& a, int N,
                              ParityForm form) {
    if (l < 1) throw BadParams("expand_parity_forms: need l >= 1");
    if (N < 1) throw BadParams("expand_parity_forms: need N >= 1");
    const int m = (form == ParityForm::odd_power) ? 2 * l - 1 : 2 * l;
    check_admissible(static_cast<double>(m), a);
    const double s = sign_value(sign);
    Expansion e;
    e.meta = {form == ParityForm::odd_power ? "parity_odd" : "parity_even",
              static_cast<double>(m), N, sign};

    if (form == ParityForm::odd_power) {
        for (int k = 0; k < N; ++k) {
            // cos term at exponent (2k+1)/m.
            double g1 = std::real(gamma(Complex((2.0 * k + 1) / m, 0.0)));
            Complex c1(0.0, 0.0);
            if (!ratio_is_integer_with_parity(2 * k + 1, m, 1)) {
                double cosv = std::cos(kPi * (2 * k + 1) / (2.0 * m));
                c1 = Complex(2.0 / m * cosv * g1 * a.derivative(2 * k, 0.0) /
                                 factorial(2 * k),
                             0.0);
            }
            e.terms.push_back({(2.0 * k + 1) / m, c1, {2 * k}});
            // sin term at exponent (2k+2)/m.
            double g2 = std::real(gamma(Complex((2.0 * k + 2) / m, 0.0)));
            Complex c2(0.0, 0.0);
            if (!ratio_is_integer_with_parity(2 * k + 2, m, 0)) {
                double sinv = std::sin(kPi * (2 * k + 2) / (2.0 * m));
                c2 = kI * (s * 2.0 / m * sinv * g2 * a.derivative(2 * k + 1, 0.0) /
                           factorial(2 * k + 1));
            }
            e.terms.push_back({(2.0 * k + 2) / m, c2, {2 * k + 1}});
        }
        // Termwise equal to the unified form with 2N terms.
        e.remainder_exponent = (2.0 * N + 1) / m;
        return e;
    }

    for (int k = 0; k < N; ++k) {
        double g = std::real(gamma(Complex((2.0 * k + 1) / m, 0.0)));
        Complex phase = std::exp(kI * (s * kPi / 2.0 * (2 * k + 1) / m));
        Complex c = (1.0 / l) * phase * g * (a.derivative(2 * k, 0.0) / factorial(2 * k));
        e.terms.push_back({(2.0 * k + 1) / m, c, {2 * k}});
    }
    e.remainder_exponent = 2.0 * N / m;
    return e;
}

double PhaseSeries::growth_bound() const {
    double b = 0.0;
    for (size_t j = 0; j < coeffs.size(); ++j)
        b = std::max(b, std::pow(std::abs(coeffs[j]), 1.0 / static_cast<double>(j + 1)));
    return b;
}

double PhaseSeries::r0() const {
    double b = growth_bound();
    if (b == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (2.0 * b);
}

double PhaseSeries::phase(double x) const {
    // Negative x only occurs for integer p (full-line phases), where
    // std::pow handles the signed base exactly.
    double series = 0.0;
    for (size_t j = coeffs.size(); j-- > 0;) series = (series + coeffs[j]) * x;
    return std::pow(x, p) * (1.0 + series);
}

double PhaseSeries::phase_deriv(double x) const {
    // d/dx [ x^p (1 + sum a_j x^j) ] = p x^{p-1} (1 + sum a_j x^j)
    //                                 + x^p sum j a_j x^{j-1}.
    double series = 0.0, dseries = 0.0;
    for (size_t j = coeffs.size(); j-- > 0;) {
        series = (series + coeffs[j]) * x;
        dseries = dseries * x + (j + 1) * coeffs[j];
    }
    return p * std::pow(x, p - 1.0) * (1.0 + series) + std::pow(x, p) * dseries;
}

Jet analytic_composite_jet(const PhaseSeries& phase, const Amplitude& a, int order) {
    // f(x) = x (1 + sum a_j x^j)^{1/p}; Phi = f^{-1}; return jet of a(Phi) Phi'.
    Jet inner(order);
    inner[0] = 1.0;
    for (size_t j = 0; j < phase.coeffs.size() && static_cast<int>(j) + 1 <= order; ++j)
        inner[static_cast<int>(j) + 1] = phase.coeffs[j];
    Jet root = jet_powf(inner, 1.0 / phase.p);
    Jet f(order);
    for (int k = 1; k <= order; ++k) f[k] = root[k - 1];  // multiply by x
    Jet phi = jet_revert(f);
    Jet composite = jet_mul(jet_compose(a.jet_at(0.0, order), phi), jet_derivative(phi));
    return composite;
}

Expansion expand_analytic_phase(const PhaseSeries& phase, Sign sign, const Amplitude& a,
                                int N, LineKind line) {
    if (N < 1) throw BadParams("expand_analytic_phase: need N >= 1");
    if (!(phase.p > 0.0)) throw InadmissiblePhase("expand_analytic_phase: need p > 0");
    double r0 = phase.r0();
    if (!a.support_radius())
        throw SupportTooWide(
            "expand_analytic_phase: amplitude needs a declared support radius");
    if (!(*a.support_radius() < r0))
        throw SupportTooWide("expand_analytic_phase: support reaches the substitution "
                             "radius 1/(2 sup |a_j|^{1/j})");
    long m = std::llround(phase.p);
    if (line == LineKind::full && std::abs(phase.p - m) > 1e-12)
        throw DomainPowerMismatch("expand_analytic_phase: full line needs integer power");

    const int jet_order = N + 4;
    Jet composite = analytic_composite_jet(phase, a, jet_order);

    Expansion e;
    e.meta = {line == LineKind::half ? "analytic_half" : "analytic_full", phase.p, N, sign};
    for (int k = 0; k < N; ++k) {
        Complex base = (line == LineKind::half)
                           ? fresnel_general(phase.p, Complex(k + 1, 0.0), sign)
                           : coeff_minus(static_cast<int>(m), k, sign);
        Complex coeff = (composite[k] == 0.0 || base == Complex(0.0, 0.0))
                            ? Complex(0.0, 0.0)
                            : base * composite[k];
        e.terms.push_back({(k + 1) / phase.p, coeff, {k}});
    }
    e.remainder_exponent =
        (line == LineKind::half)
            ? (N + 1 - (phase.p - gauss_floor(phase.p))) / phase.p
            : static_cast<double>(N + 1) / static_cast<double>(m);
    return e;
}

Complex evaluate_expansion(const Expansion& e, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("evaluate_expansion: need lambda > 0");
    Complex sum(0.0, 0.0);
    for (const auto& t : e.terms) sum += t.coeff * std::pow(lambda, -t.exponent);
    return sum;
}

}  // namespace oscatlas
