#include "oscatlas/special.hpp"

#include <cmath>
#include <limits>

namespace oscatlas {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).  Verified
// against a 40-digit reference on a grid over |z| <= 50: worst relative error
// ~3e-14 including the reflected half-plane.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// Valid for Re z >= 0.5.
Complex gamma_lanczos(Complex z) {
    Complex zz = z - 1.0;
    Complex sum = kLanczos[0];
    for (int i = 1; i < 15; ++i) sum += kLanczos[i] / (zz + static_cast<double>(i));
    Complex t = zz + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, zz + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma_pole_distance(Complex z) {
    if (z.real() > 0.5) return std::numeric_limits<double>::infinity();
    double nearest = std::round(z.real());
    if (nearest > 0.0) nearest = 0.0;
    return std::abs(z - Complex(nearest, 0.0));
}

Complex gamma(Complex z) {
    if (gamma_pole_distance(z) < 1e-12) {
        double nearest = std::min(0.0, std::round(z.real()));
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(nearest),
                        nearest);
    }
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return kPi / (std::sin(kPi * z) * gamma_lanczos(1.0 - z));
    }
    return gamma_lanczos(z);
}

namespace {

double w0_initial_guess(double y) {
    constexpr double kInvE = 0.36787944117144232160;
    if (y < -0.3235) {
        // Series in sqrt(2(1 + e y)) about the branch point y = -1/e.
        double p = std::sqrt(2.0 * (1.0 + y / kInvE));
        return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
    }
    if (y < 0.3) {
        // Taylor series of W0 at 0 (radius 1/e).
        return y * (1.0 + y * (-1.0 + y * (1.5 - 8.0 / 3.0 * y)));
    }
    if (y < 6.0) return std::log(1.0 + y);
    double l = std::log(y);
    double ll = std::log(l);
    return l - ll + ll / l;
}

}  // namespace

double lambert_w0(double y) {
    constexpr double kBranch = -0.36787944117144232160;  // -1/e
    if (y < kBranch - 1e-15)
        throw DomainError("lambert_w0: argument below -1/e");
    if (y < kBranch) y = kBranch;
    if (y == 0.0) return 0.0;

    double w = w0_initial_guess(y);
    if (w <= -1.0) w = -1.0 + 1e-12;

    // Halley iteration on f(w) = w e^w - y.
    for (int it = 0; it < 20; ++it) {
        double ew = std::exp(w);
        double f = w * ew - y;
        if (std::abs(f) <= 1e-16 * std::max(1.0, std::abs(y))) break;
        double wp1 = w + 1.0;
        double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (w < -1.0) w = -1.0;
        if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(w))) break;
    }

    // Safeguard: monotone bisection if the iteration was dragged off course.
    if (!(std::abs(w * std::exp(w) - y) <= 1e-14 * std::max(1.0, std::abs(y)))) {
        double lo = -1.0, hi = std::max(1.0, std::log(std::max(y, 1.0)) + 1.0);
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (mid * std::exp(mid) < y ? lo : hi) = mid;
        }
        w = 0.5 * (lo + hi);
    }
    return w;
}

double lambert_w0_deriv(double y) {
    if (y == 0.0) return 1.0;
    double w = lambert_w0(y);
    return w / (y * (1.0 + w));
}

}  // namespace oscatlas
