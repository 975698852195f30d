#include "oscatlas/expansion_nd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "oscatlas/fresnel.hpp"

namespace oscatlas {

namespace {

// Small-denominator rational reconstruction; the boundary comparison of the
// index set is done exactly when every power admits one.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool ok = false;
};

Rational to_rational(double x, std::int64_t max_den = 64) {
    for (std::int64_t d = 1; d <= max_den; ++d) {
        double n = x * static_cast<double>(d);
        double r = std::round(n);
        if (std::abs(n - r) < 1e-12 * std::max(1.0, std::abs(n)) && std::abs(r) < 1e15)
            return {static_cast<std::int64_t>(r), d, true};
    }
    return {};
}

double fractional_part_of_power(double p) {
    return p - static_cast<double>(gauss_floor(p));
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

IndexSet omega_set(const std::vector<double>& p, int N) {
    const int n = static_cast<int>(p.size());
    if (n < 1) throw BadDimension("omega_set: empty power vector");
    if (N < 1) throw BadParams("omega_set: need N >= 1");
    for (double pj : p)
        if (!(pj > 0.0)) throw DomainError("omega_set: powers must be positive");

    double max_p = *std::max_element(p.begin(), p.end());
    double max_frac = 0.0;
    for (double pj : p) max_frac = std::max(max_frac, fractional_part_of_power(pj));
    double threshold = (N + 1 - max_frac) / max_p;

    // Exact comparison when all powers are rational: with p_j = n_j/d_j the
    // condition sum (alpha_j + 1) d_j / n_j < T_num/T_den clears denominators
    // to 64-bit integer arithmetic.
    std::vector<Rational> rp(p.size());
    bool all_rational = true;
    for (size_t j = 0; j < p.size(); ++j) {
        rp[j] = to_rational(p[j]);
        all_rational = all_rational && rp[j].ok;
    }
    Rational rthresh;
    if (all_rational) {
        Rational rmaxp = to_rational(max_p);
        // max_frac = max_p - [max over j of ...]; recompute exactly per axis.
        // threshold = (N + 1 - max_frac) / max_p with
        // max_frac = max_j (n_j/d_j - floor(n_j/d_j)) = F_num/F_den.
        std::int64_t fn = 0, fd = 1;
        for (auto& r : rp) {
            std::int64_t fl = r.num / r.den;  // powers positive
            std::int64_t rn = r.num - fl * r.den;
            if (rn * fd > fn * r.den) {
                fn = rn;
                fd = r.den;
            }
        }
        // threshold = ((N+1) fd - fn) / (fd * max_p)
        rthresh.num = (static_cast<std::int64_t>(N) + 1) * fd - fn;
        rthresh.den = fd * rmaxp.num;
        rthresh.num *= rmaxp.den;
        rthresh.ok = true;
    }

    auto member = [&](const std::vector<int>& alpha) {
        if (all_rational && rthresh.ok) {
            // sum (alpha_j+1) d_j/n_j < num/den  <=>
            // den * sum (alpha_j+1) d_j * prod_{k!=j} n_k < num * prod n_k
            std::int64_t prod_n = 1;
            for (auto& r : rp) prod_n *= r.num;
            std::int64_t lhs = 0;
            for (size_t j = 0; j < rp.size(); ++j) {
                std::int64_t other = prod_n / rp[j].num;
                lhs += (alpha[j] + 1) * rp[j].den * other;
            }
            return lhs * rthresh.den < rthresh.num * prod_n;
        }
        double s = 0.0;
        for (size_t j = 0; j < p.size(); ++j) s += (alpha[j] + 1) / p[j];
        return s < threshold;
    };

    // Component-wise bound alpha_j < p_j * threshold - 1.
    std::vector<int> bound(p.size());
    for (size_t j = 0; j < p.size(); ++j)
        bound[j] = std::max(0, static_cast<int>(std::ceil(p[j] * threshold)));

    IndexSet set;
    set.threshold = threshold;
    std::vector<int> alpha(p.size(), 0);
    while (true) {
        if (member(alpha)) set.members.push_back(alpha);
        int j = 0;
        for (; j < n; ++j) {
            if (alpha[static_cast<size_t>(j)] < bound[static_cast<size_t>(j)]) {
                ++alpha[static_cast<size_t>(j)];
                break;
            }
            alpha[static_cast<size_t>(j)] = 0;
        }
        if (j == n) break;
    }

    auto exponent = [&](const std::vector<int>& a) {
        double s = 0.0;
        for (size_t j = 0; j < p.size(); ++j) s += (a[j] + 1) / p[j];
        return s;
    };
    std::sort(set.members.begin(), set.members.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  double ea = exponent(a), eb = exponent(b);
                  if (ea != eb) return ea < eb;
                  return a < b;
              });
    return set;
}

Expansion expand_nd(const PhaseND& phase, const AmplitudeND& a, int N) {
    const int n = static_cast<int>(phase.powers.size());
    if (n < 1 || phase.signs.size() != phase.powers.size() || a.dim() != n)
        throw BadDimension("expand_nd: inconsistent dimensions");
    std::vector<long> m(phase.powers.size());
    if (phase.full_space) {
        for (size_t j = 0; j < phase.powers.size(); ++j) {
            m[j] = std::llround(phase.powers[j]);
            if (std::abs(phase.powers[j] - static_cast<double>(m[j])) > 1e-12)
                throw DomainPowerMismatch("expand_nd: full space needs integer powers");
        }
    }

    IndexSet omega = omega_set(phase.powers, N);
    Expansion e;
    e.meta = {phase.full_space ? "full_space_nd" : "orthant_nd",
              *std::max_element(phase.powers.begin(), phase.powers.end()), N,
              phase.signs[0]};

    for (const auto& alpha : omega.members) {
        double expo = 0.0;
        for (size_t j = 0; j < phase.powers.size(); ++j)
            expo += (alpha[j] + 1) / phase.powers[j];
        Complex prod(1.0, 0.0);
        for (size_t j = 0; j < phase.powers.size(); ++j) {
            Complex axis =
                phase.full_space
                    ? coeff_full_line(static_cast<int>(m[j]), alpha[j], phase.signs[j])
                    : fresnel_general(phase.powers[j], Complex(alpha[j] + 1, 0.0),
                                      phase.signs[j]);
            if (axis == Complex(0.0, 0.0)) {
                prod = Complex(0.0, 0.0);
                break;
            }
            prod *= axis;
        }
        if (prod != Complex(0.0, 0.0)) {
            double da = a.partial_at_zero(alpha);
            double fac = 1.0;
            for (int aj : alpha) fac *= factorial(aj);
            prod = (da == 0.0) ? Complex(0.0, 0.0) : prod * (da / fac);
        }
        e.terms.push_back({expo, prod, alpha});
    }

    if (phase.full_space) {
        long max_m = *std::max_element(m.begin(), m.end());
        e.remainder_exponent = static_cast<double>(N + 1) / static_cast<double>(max_m);
    } else {
        e.remainder_exponent = omega.threshold;
    }
    return e;
}

PhaseND preset_phase(PresetKind kind, int k, int n, std::vector<Sign> signs) {
    if (static_cast<int>(signs.size()) != n)
        throw BadDimension("preset_phase: signs length must equal n");
    PhaseND phase;
    phase.signs = std::move(signs);
    phase.full_space = true;
    switch (kind) {
        case PresetKind::A: {
            if (n < 1) throw BadDimension("preset_phase: A_k needs n >= 1");
            if (k < 1) throw BadParams("preset_phase: A_k needs k >= 1");
            phase.powers.assign(static_cast<size_t>(n), 2.0);
            phase.powers[0] = static_cast<double>(k + 1);
            break;
        }
        case PresetKind::E6: {
            if (n < 2) throw BadDimension("preset_phase: E6 needs n >= 2");
            if (phase.signs[0] != Sign::plus)
                throw SignConstraintViolation("preset_phase: E6 fixes sign_1 = +");
            phase.powers.assign(static_cast<size_t>(n), 2.0);
            phase.powers[0] = 3.0;
            phase.powers[1] = 4.0;
            break;
        }
        case PresetKind::E8: {
            if (n < 2) throw BadDimension("preset_phase: E8 needs n >= 2");
            if (phase.signs[0] != Sign::plus || phase.signs[1] != Sign::plus)
                throw SignConstraintViolation("preset_phase: E8 fixes sign_1 = sign_2 = +");
            phase.powers.assign(static_cast<size_t>(n), 2.0);
            phase.powers[0] = 3.0;
            phase.powers[1] = 5.0;
            break;
        }
    }
    return phase;
}

}  // namespace oscatlas
