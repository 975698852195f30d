#include "oscatlas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oscatlas/quadrature.hpp"

namespace oscatlas {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr Complex kI{0.0, 1.0};

double chi_value(ChiKind chi, double t) {
    switch (chi) {
        case ChiKind::gaussian:
            return std::exp(-t * t);
        case ChiKind::sech:
            return 1.0 / std::cosh(t);
    }
    return 0.0;
}

// Radius R with  max(R,1)^g * chi_tail(eps R) below tol, found by doubling.
double chi_radius(ChiKind chi, double eps, double g, double tol) {
    double r = 1.0 / eps;
    for (int it = 0; it < 200; ++it) {
        double t = eps * r;
        double tail = (chi == ChiKind::gaussian)
                          ? std::exp(-t * t) / (2.0 * t * eps)
                          : 2.0 * std::exp(-t) / eps;
        double bound = std::pow(std::max(r, 1.0), std::max(g, 0.0)) * tail;
        if (bound < tol) break;
        r *= 1.2;
    }
    return r;
}

// Length of one full phase period of lambda x^p starting at x (exact, stable
// for p < 1 near the origin).
double period_length(double lambda, double p, double x) {
    double u = lambda * std::pow(std::max(x, 0.0), p);
    return std::pow((u + 2.0 * kPi) / lambda, 1.0 / p) - x;
}

std::function<double(double)> monomial_cap(double lambda, double p, double frac) {
    return [=](double x) { return std::max(frac * period_length(lambda, p, x), 1e-14); };
}

// Integral over [0, b] of e^{s i lambda x^p} x^{q-1} w(x); substitutes
// x = u^{1/q} on [0, min(1,b)] when q < 1 so the integrand stays bounded.
QuadResult weighted_piece(double p, double q, Sign sign, double lambda,
                          const std::function<double(double)>& w, double b,
                          const OracleConfig& cfg, double tol) {
    const double s = sign_value(sign);
    QuadResult total;
    double split = std::min(1.0, b);
    if (q < 1.0) {
        double pq = p / q;
        auto f = [&](double u) -> Complex {
            double x = std::pow(u, 1.0 / q);
            double ph = s * lambda * std::pow(u, pq);
            return std::exp(Complex(0.0, ph)) * w(x) / q;
        };
        QuadResult r = integrate_adaptive(f, 0.0, std::pow(split, q), 0.5 * tol, 1e-15,
                                          monomial_cap(lambda, pq, cfg.period_fraction),
                                          cfg.max_segments);
        total.value += r.value;
        total.err += r.err;
        total.evals += r.evals;
    } else {
        auto f = [&](double x) -> Complex {
            double ph = s * lambda * std::pow(x, p);
            return std::exp(Complex(0.0, ph)) * std::pow(x, q - 1.0) * w(x);
        };
        QuadResult r = integrate_adaptive(f, 0.0, split, 0.5 * tol, 1e-15,
                                          monomial_cap(lambda, p, cfg.period_fraction),
                                          cfg.max_segments);
        total.value += r.value;
        total.err += r.err;
        total.evals += r.evals;
    }
    if (b > split) {
        auto f = [&](double x) -> Complex {
            double ph = s * lambda * std::pow(x, p);
            return std::exp(Complex(0.0, ph)) * std::pow(x, q - 1.0) * w(x);
        };
        QuadResult r = integrate_adaptive(f, split, b, 0.5 * tol, 1e-15,
                                          monomial_cap(lambda, p, cfg.period_fraction),
                                          cfg.max_segments);
        total.value += r.value;
        total.err += r.err;
        total.evals += r.evals;
    }
    return total;
}

// Smallest damping parameter whose truncation radius fits the phase-range
// budget lambda R^p <= u_budget, found by bisection.
double eps_floor_for_budget(ChiKind chi, double growth, double tol, double lambda,
                            double p, double u_budget, double hard_radius) {
    double r_budget = std::pow(u_budget / lambda, 1.0 / p);
    if (hard_radius > 0.0) r_budget = std::min(r_budget, hard_radius);
    double lo = 1e-9, hi = 8.0;
    if (chi_radius(chi, hi, growth, tol) > r_budget) return hi;
    for (int it = 0; it < 60; ++it) {
        double mid = std::sqrt(lo * hi);
        (chi_radius(chi, mid, growth, tol) > r_budget ? lo : hi) = mid;
    }
    return hi;
}

OracleResult half_line_eps(double p, double q, Sign sign, double lambda,
                           const Amplitude& a, const OracleConfig& cfg) {
    OracleResult out;
    out.method = OracleMethod::eps_extrapolation;
    const double tol = cfg.quad_tol;
    const double amp_radius = a.truncation_radius(0.05 * tol);
    const double growth = std::max(q - 1.0, 0.0) + std::max(a.tau(), 0.0);

    // A compactly supported (or fast-decaying) amplitude fixes the domain by
    // itself; otherwise the budget clamps how small eps may get.
    double eps_floor = 0.0;
    if (lambda * std::pow(amp_radius, p) > cfg.u_budget)
        eps_floor = eps_floor_for_budget(cfg.chi, growth, 0.05 * tol, lambda, p,
                                         cfg.u_budget, cfg.truncation_radius);

    std::vector<double> eps_list;
    double eps = cfg.eps.eps0;
    for (int k = 0; k < cfg.eps.count; ++k, eps *= cfg.eps.ratio)
        eps_list.push_back(std::max(eps, eps_floor));
    // Too tight a budget leaves too few distinct values; extend upward.
    for (double up = cfg.eps.eps0 / cfg.eps.ratio; eps_floor > 0.0 && up <= 4.0;
         up /= cfg.eps.ratio)
        eps_list.push_back(up);
    std::sort(eps_list.begin(), eps_list.end(), std::greater<double>());
    eps_list.erase(std::unique(eps_list.begin(), eps_list.end()), eps_list.end());

    std::vector<double> eps_used, eps_sq;
    std::vector<Complex> values;
    double quad_err_max = 0.0;
    long evals = 0;
    for (double e : eps_list) {
        if (static_cast<int>(values.size()) >= cfg.eps.count) break;
        double radius = std::min(chi_radius(cfg.chi, e, growth, 0.05 * tol), amp_radius);
        if (cfg.truncation_radius > 0.0) radius = std::min(radius, cfg.truncation_radius);
        auto w = [&](double x) { return a.value(x) * chi_value(cfg.chi, e * x); };
        QuadResult piece = weighted_piece(p, q, sign, lambda, w, radius, cfg, tol);
        eps_used.push_back(e);
        eps_sq.push_back(e * e);
        values.push_back(piece.value);
        quad_err_max = std::max(quad_err_max, piece.err + 0.05 * tol);
        evals += piece.evals;
    }

    if (values.size() < 2)
        throw NonConvergence(
            "eps_extrapolation: fewer than 2 usable damping parameters within the "
            "phase-range budget");

    // Neville extrapolation to eps = 0, polynomial in eps^2.  The expansion is
    // asymptotic, so the full table is scanned for its most stable entry
    // rather than trusting the last diagonal.
    const size_t n = values.size();
    std::vector<std::vector<Complex>> table(n);
    for (size_t i = 0; i < n; ++i) {
        table[i].resize(i + 1);
        table[i][0] = values[i];
    }
    for (size_t i = 1; i < n; ++i)
        for (size_t j = 1; j <= i; ++j)
            table[i][j] = (table[i][j - 1] * eps_sq[i - j] -
                           table[i - 1][j - 1] * eps_sq[i]) /
                          (eps_sq[i - j] - eps_sq[i]);

    Complex best = table[n - 1][0];
    double best_stab = std::abs(table[n - 1][0] - table[n - 2][0]);
    double pick_i = n - 1, pick_j = 0;
    for (size_t i = 1; i < n; ++i)
        for (size_t j = 1; j <= i; ++j) {
            double stab = std::abs(table[i][j] - table[i][j - 1]) +
                          std::abs(table[i][j] - table[i - 1][j - 1]);
            if (stab < best_stab) {
                best_stab = stab;
                best = table[i][j];
                pick_i = static_cast<double>(i);
                pick_j = static_cast<double>(j);
            }
        }

    out.value = best;
    out.err_estimate = best_stab + 3.0 * quad_err_max;
    out.diagnostics["eps_count"] = static_cast<double>(n);
    out.diagnostics["eps_min"] = eps_used.back();
    out.diagnostics["extrap_err"] = best_stab;
    out.diagnostics["quad_err"] = quad_err_max;
    out.diagnostics["evals"] = static_cast<double>(evals);
    out.diagnostics["table_i"] = pick_i;
    out.diagnostics["table_j"] = pick_j;
    return out;
}

SplitConfig resolve_split(double p, double q, const Amplitude& a, const OracleConfig& cfg) {
    SplitConfig split;
    if (cfg.split) {
        split = *cfg.split;
    } else {
        double r0 = 1.0;
        if (a.support_radius()) r0 = std::max(1.0, std::min(*a.support_radius(), 6.0));
        split.r0 = r0;
        split.r1 = r0 + 1.0;
        split.l = -1;
    }
    if (split.l < 0) split.l = l_min(p, q, a.tau(), a.delta()) + 1;
    return split;
}

OracleResult half_line_ibp(double p, double q, Sign sign, double lambda,
                           const Amplitude& a, const OracleConfig& cfg) {
    OracleResult out;
    out.method = OracleMethod::ibp_regularized;
    const double tol = cfg.quad_tol;
    SplitConfig split = resolve_split(p, q, a, cfg);
    const int l = split.l;
    Amplitude phi = narrow_bump(split.r0, split.r1);

    // Work on the plus branch; the minus branch of the integral is the
    // conjugate for a real amplitude.
    bool conjugate = (sign == Sign::minus);

    // Inner piece: integrable x^{q-1} a(x) phi(x) on [0, r1].
    auto w_inner = [&](double x) { return a.value(x) * phi.value(x); };
    QuadResult inner = weighted_piece(p, q, Sign::plus, lambda, w_inner, split.r1, cfg, tol);

    // Tail piece: e^{i lambda x^p} (L*)^l (x^{q-1} a psi) over [r0, inf).
    CTable table(p, q, l);
    Complex lead = std::pow(kI / (lambda * p), static_cast<double>(l));
    std::vector<double> fact(static_cast<size_t>(l) + 1, 1.0);
    for (int j = 2; j <= l; ++j) fact[static_cast<size_t>(j)] = fact[static_cast<size_t>(j) - 1] * j;

    auto tail_weight = [&](double x) -> Complex {
        // (a psi)^{(j)}(x) by Leibniz through jets; beyond r1, psi == 1.
        Complex sum(0.0, 0.0);
        if (x >= split.r1) {
            Jet ja = a.jet_at(x, l);
            for (int j = 0; j <= l; ++j)
                sum += table.at(l, j) * std::pow(x, q - 1.0 - p * l + j) * ja[j] *
                       fact[static_cast<size_t>(j)];
        } else {
            Jet ja = a.jet_at(x, l);
            Jet jpsi = jet_sub(Jet::constant(1.0, l), phi.jet_at(x, l));
            Jet prod = jet_mul(ja, jpsi);
            for (int j = 0; j <= l; ++j)
                sum += table.at(l, j) * std::pow(x, q - 1.0 - p * l + j) * prod[j] *
                       fact[static_cast<size_t>(j)];
        }
        return lead * sum;
    };

    Complex tail_value(0.0, 0.0);
    double tail_err = 0.0;
    long tail_evals = 0;
    double tail_chunks = 0.0;
    double support = a.support_radius() ? *a.support_radius()
                                        : std::numeric_limits<double>::infinity();
    if (support > split.r0) {
        // Transition region [r0, r1] by direct quadrature.
        auto f_trans = [&](double x) {
            return std::exp(Complex(0.0, lambda * std::pow(x, p))) * tail_weight(x);
        };
        QuadResult trans = integrate_adaptive(f_trans, split.r0, std::min(split.r1, support),
                                              0.25 * tol, 1e-15,
                                              monomial_cap(lambda, p, cfg.period_fraction),
                                              cfg.max_segments);
        tail_value += trans.value;
        tail_err += trans.err;
        tail_evals += trans.evals;
        if (support > split.r1) {
            auto w_far = [&](double x) -> Complex { return tail_weight(x); };
            TailResult far = integrate_oscillatory_tail(w_far, p, lambda, Sign::plus,
                                                        split.r1, 0.5 * tol, cfg.max_chunks);
            tail_value += far.value;
            tail_err += far.err;
            tail_evals += far.evals;
            tail_chunks = far.chunks;
        }
    }

    Complex value = inner.value + tail_value;
    if (conjugate) value = std::conj(value);
    out.value = value;
    out.err_estimate = inner.err + tail_err;
    out.diagnostics["l"] = l;
    out.diagnostics["r0"] = split.r0;
    out.diagnostics["r1"] = split.r1;
    out.diagnostics["evals"] = static_cast<double>(inner.evals + tail_evals);
    out.diagnostics["tail_chunks"] = tail_chunks;
    return out;
}

}  // namespace

OracleResult oscillatory_half_line(double p, double q, Sign sign, double lambda,
                                   const Amplitude& a, const OracleConfig& cfg) {
    if (!(p > 0.0) || !(q > 0.0) || !(lambda > 0.0))
        throw DomainError("oscillatory_half_line: need p, q, lambda > 0");
    if (!(a.delta() < p - 1.0))
        throw InadmissibleClass("oscillatory_half_line: delta >= p - 1");

    switch (cfg.method) {
        case OracleMethod::eps_extrapolation:
            return half_line_eps(p, q, sign, lambda, a, cfg);
        case OracleMethod::ibp_regularized:
            return half_line_ibp(p, q, sign, lambda, a, cfg);
        case OracleMethod::both_crosscheck: {
            OracleResult e = half_line_eps(p, q, sign, lambda, a, cfg);
            OracleResult i = half_line_ibp(p, q, sign, lambda, a, cfg);
            double disagreement = std::abs(e.value - i.value);
            double allowed = 10.0 * std::max(e.err_estimate, i.err_estimate);
            if (disagreement > allowed)
                throw CrosscheckFailure("oscillatory_half_line: methods disagree by " +
                                        std::to_string(disagreement) + " > " +
                                        std::to_string(allowed));
            OracleResult out = (i.err_estimate <= e.err_estimate) ? i : e;
            out.method = OracleMethod::both_crosscheck;
            out.err_estimate = std::max(out.err_estimate, 0.5 * disagreement);
            out.diagnostics["crosscheck_disagreement"] = disagreement;
            return out;
        }
    }
    throw Error("oscillatory_half_line: unknown method");
}

OracleResult oscillatory_full_line(int m, Sign sign, double lambda, const Amplitude& a,
                                   const OracleConfig& cfg) {
    if (m < 1) throw DomainError("oscillatory_full_line: need m >= 1");
    Sign reflected_sign = (m % 2 == 0) ? sign : flip(sign);
    OracleResult right = oscillatory_half_line(static_cast<double>(m), 1.0, sign, lambda, a, cfg);
    OracleResult left = oscillatory_half_line(static_cast<double>(m), 1.0, reflected_sign,
                                              lambda, reflect(a), cfg);
    OracleResult out;
    out.method = right.method;
    out.value = right.value + left.value;
    out.err_estimate = right.err_estimate + left.err_estimate;
    out.diagnostics = right.diagnostics;
    out.diagnostics["left_err"] = left.err_estimate;
    return out;
}

namespace {

// Recursive level of the iterated n-dimensional quadrature: integral over
// dimension `dim` (0-based, innermost first) with outer coordinates fixed.
struct NdIntegrator {
    const std::vector<double>& p;
    const std::vector<Sign>& signs;
    double lambda;
    const AmplitudeND& amp;
    bool full_space;
    const OracleConfig& cfg;
    double tol_per_level;
    mutable double worst_inner_err = 0.0;
    mutable long evals = 0;

    Complex phase_factor(int dim, double x) const {
        double ax = std::abs(x);
        double ph = lambda * std::pow(ax, p[static_cast<size_t>(dim)]);
        if (x < 0.0) {
            long mi = static_cast<long>(std::llround(p[static_cast<size_t>(dim)]));
            if (mi % 2 != 0) ph = -ph;
        }
        return std::exp(Complex(0.0, sign_value(signs[static_cast<size_t>(dim)]) * ph));
    }

    Complex level_value(int dim, std::vector<double>& coords) const {
        double radius = amp.box_radius(dim, 1e-3 * tol_per_level);
        double lo = full_space ? -radius : 0.0;
        auto cap = monomial_cap(lambda, p[static_cast<size_t>(dim)], cfg.period_fraction);
        auto cap_abs = [&](double x) { return cap(std::abs(x)); };

        if (dim == 0) {
            auto f = [&](double x) -> Complex {
                coords[0] = x;
                ++evals;
                return phase_factor(0, x) * amp.value(coords);
            };
            QuadResult r = integrate_adaptive(f, lo, radius, tol_per_level, 1e-14, cap_abs,
                                              cfg.max_segments);
            worst_inner_err = std::max(worst_inner_err, r.err);
            return r.value;
        }

        // Smooth slice value as a function of this dimension's coordinate,
        // interpolated so the oscillatory outer quadrature stays affordable.
        auto slice = [&](double x) -> Complex {
            coords[static_cast<size_t>(dim)] = x;
            return level_value(dim - 1, coords);
        };
        double cheb_err = 0.0;
        long cheb_evals = 0;
        ChebInterp interp = ChebInterp::build(slice, lo, radius, 0.1 * tol_per_level, 256,
                                              &cheb_err, &cheb_evals);
        auto f = [&](double x) -> Complex { return phase_factor(dim, x) * interp.eval(x); };
        QuadResult r = integrate_adaptive(f, lo, radius, tol_per_level, 1e-14, cap_abs,
                                          cfg.max_segments);
        worst_inner_err = std::max(worst_inner_err, r.err + cheb_err * (radius - lo));
        return r.value;
    }
};

}  // namespace

OracleResult oscillatory_nd(const std::vector<double>& p, const std::vector<Sign>& signs,
                            double lambda, const AmplitudeND& a, bool full_space,
                            const OracleConfig& cfg) {
    const int n = static_cast<int>(p.size());
    if (n < 1 || signs.size() != p.size() || a.dim() != n)
        throw BadDimension("oscillatory_nd: inconsistent dimensions");
    if (n > 3) throw DimensionTooLarge("oscillatory_nd: n > 3");
    if (full_space)
        for (double pj : p)
            if (std::abs(pj - std::llround(pj)) > 1e-12)
                throw DomainPowerMismatch("oscillatory_nd: full space needs integer powers");

    double span = 1.0;
    for (int j = 1; j < n; ++j) {
        double r = a.box_radius(j, 1e-16);
        span *= (full_space ? 2.0 : 1.0) * r;
    }
    NdIntegrator integ{p, signs, lambda, a, full_space, cfg,
                       cfg.quad_tol / std::max(span, 1.0)};
    std::vector<double> coords(static_cast<size_t>(n), 0.0);
    Complex value = integ.level_value(n - 1, coords);

    OracleResult out;
    out.method = cfg.method;
    out.value = value;
    out.err_estimate = integ.worst_inner_err * std::max(span, 1.0) + cfg.quad_tol;
    out.diagnostics["evals"] = static_cast<double>(integ.evals);
    out.diagnostics["dims"] = n;
    return out;
}

OracleResult oscillatory_compact_1d(const std::function<double(double)>& phi,
                                    const std::function<double(double)>& phi_deriv,
                                    Sign sign, double lambda, const Amplitude& a,
                                    bool full_line, const OracleConfig& cfg) {
    double radius = a.truncation_radius(1e-3 * cfg.quad_tol);
    if (!std::isfinite(radius))
        throw DomainError("oscillatory_compact_1d: amplitude must decay");
    const double s = sign_value(sign);
    auto f = [&](double x) -> Complex {
        return std::exp(Complex(0.0, s * lambda * phi(x))) * a.value(x);
    };
    auto cap = [&](double x) {
        double d = std::abs(phi_deriv(x));
        return std::max(cfg.period_fraction * 2.0 * kPi / (lambda * std::max(d, 1e-8)),
                        1e-12);
    };
    double lo = full_line ? -radius : 0.0;
    QuadResult r = integrate_adaptive(f, lo, radius, cfg.quad_tol, 1e-14, cap,
                                      cfg.max_segments);
    OracleResult out;
    out.method = cfg.method;
    out.value = r.value;
    out.err_estimate = r.err;
    out.diagnostics["evals"] = static_cast<double>(r.evals);
    return out;
}

}  // namespace oscatlas
