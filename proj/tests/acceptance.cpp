// Acceptance suite: one line per criterion, exit 0 iff everything passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oscatlas/campaign.hpp"
#include "oscatlas/expansion.hpp"
#include "oscatlas/expansion_nd.hpp"
#include "oscatlas/fresnel.hpp"
#include "oscatlas/oracle.hpp"
#include "oscatlas/regularizer.hpp"
#include "oscatlas/special.hpp"
#include "oscatlas/types.hpp"

using namespace oscatlas;

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr Complex kI{0.0, 1.0};

struct Outcome {
    std::string id;
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
};

std::vector<Outcome> g_results;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void record(const std::string& id, bool pass, const std::string& detail, double seconds) {
    g_results.push_back({id, pass, detail, seconds});
    std::printf("[%s] %s  %s  (%.1f s)\n", pass ? "PASS" : "FAIL", id.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b);
    return buf;
}

// ---------------------------------------------------------------------------

void a1_closed_form_vs_oracle() {
    Timer total;
    bool ok = true;
    std::string worst;
    double worst_rel = 0.0;
    OracleConfig cfg;
    cfg.method = OracleMethod::both_crosscheck;
    cfg.quad_tol = 1e-10;
    const double kE = 2.718281828459045;
    for (double p : {0.5, 1.0, 1.5, 2.0, kE, 3.0, kPi}) {
        for (double q : {0.5, 1.0, 2.0, 2.7}) {
            Timer one;
            Complex closed = fresnel_general(p, Complex(q, 0.0), Sign::plus);
            std::string tag = fmt("p=%.6g q=%.6g", p, q);
            try {
                OracleResult r = oscillatory_half_line(p, q, Sign::plus, 1.0,
                                                       constant_one(), cfg);
                double diff = std::abs(closed - r.value);
                double allowed = std::max(1e-6 * std::abs(closed), 10.0 * r.err_estimate);
                double rel = diff / std::abs(closed);
                if (rel > worst_rel) {
                    worst_rel = rel;
                    worst = tag;
                }
                if (diff > allowed || one.seconds() > 30.0) ok = false;
            } catch (const std::exception& e) {
                ok = false;
                worst = tag + std::string(": ") + e.what();
            }
        }
    }
    record("A1 closed form vs oracle (28 cases)", ok,
           "worst rel " + fmt("%.2e at ", worst_rel) + worst, total.seconds());
}

void a2_known_identities() {
    Timer t;
    bool ok = true;
    double worst = 0.0;

    auto check = [&](Complex got, Complex want) {
        double rel = std::abs(got - want) / std::abs(want);
        worst = std::max(worst, rel);
        if (rel > 1e-13) ok = false;
    };

    check(fresnel_general(2.0, Complex(1, 0), Sign::plus),
          0.5 * std::sqrt(kPi) * std::exp(kI * kPi / 4.0));
    for (double p : {0.5, 1.0, 2.0, 3.0})
        check(fresnel_general(p, Complex(p, 0.0), Sign::plus), kI / p);
    const std::pair<double, double> grid[5] = {
        {1.0, 1.0}, {0.5, 0.5}, {2.0, 3.0}, {1.3, 0.7}, {2.5, 1.5}};
    for (auto [q1, q2] : grid) {
        Complex want = gamma(Complex(q1, 0)) * gamma(Complex(q2, 0)) /
                       gamma(Complex(q1 + q2, 0));
        check(beta_extended(1, 1, 1, Complex(q1, 0), Complex(q2, 0), Complex(q1 + q2, 0),
                            Sign::plus),
              want);
    }
    record("A2 known identities at 1e-13", ok, fmt("worst rel %.2e", worst), t.seconds());
}

void a3_exact_gaussian_oracle() {
    Timer t;
    bool ok = true;
    double worst = 0.0;
    OracleConfig cfg;
    cfg.method = OracleMethod::both_crosscheck;
    cfg.quad_tol = 1e-11;
    for (double lambda : {1.0, 10.0, 100.0, 1000.0}) {
        OracleResult r = oscillatory_full_line(2, Sign::plus, lambda, gaussian(), cfg);
        Complex want = std::sqrt(kPi / Complex(1.0, -lambda));
        double rel = std::abs(r.value - want) / std::abs(want);
        worst = std::max(worst, rel);
        if (rel > 1e-8) ok = false;
    }
    record("A3 exact gaussian oracle", ok, fmt("worst rel %.2e", worst), t.seconds());
}

void a4_c_tables() {
    Timer t;
    bool ok = true;
    double worst = 0.0;
    for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 7.0}) {
        for (double q : {0.5, 1.0, 1.5, 2.0, 3.0, 7.0}) {
            CTable tab = c_table(p, q, 12);
            for (int l = 1; l <= 12; ++l) {
                if (tab.at(l, 0) != (q - p * l) * tab.at(l - 1, 0)) ok = false;
                if (tab.at(l, l) != tab.at(l - 1, l - 1)) ok = false;
                for (int j = 1; j < l; ++j)
                    if (tab.at(l, j) !=
                        (q - p * l + j) * tab.at(l - 1, j) + tab.at(l - 1, j - 1))
                        ok = false;
                double prod = 1.0;
                for (int s = 1; s <= l; ++s) prod *= (q - p * s);
                double rel = std::abs(tab.at(l, 0) - prod) / std::max(1.0, std::abs(prod));
                worst = std::max(worst, rel);
                if (rel > 1e-12) ok = false;
                if (tab.at(l, l) != 1.0) ok = false;
            }
        }
    }
    record("A4 C-table recurrence and closed forms", ok, fmt("worst rel %.2e", worst),
           t.seconds());
}

void a5_oracle_invariances() {
    Timer t;
    bool ok = true;
    std::string note;
    struct Case {
        double p, q, lambda;
        Amplitude amp;
        const char* name;
    };
    std::vector<Case> battery{
        {2.0, 1.0, 1.0, constant_one(), "p2q1const"},
        {2.0, 1.0, 1.0, gaussian(), "p2q1gauss"},
        {0.5, 1.0, 1.0, constant_one(), "p.5q1const"},
        {0.5, 2.7, 1.0, constant_one(), "p.5q2.7const"},
        {3.0, 1.5, 1.0, rational_decay(3.0), "p3q1.5rat"},
        {kPi, 0.5, 1.0, constant_one(), "ppiq.5const"},
        {1.5, 2.0, 2.0, gaussian(), "p1.5q2gauss"},
        {1.0, 1.0, 1.0, poly_times_gaussian({1.0, 0.0, 0.5}), "p1q1poly"},
        {2.0, 0.5, 1.0, constant_one(), "p2q.5const"},
        {2.718281828459045, 1.0, 1.0, constant_one(), "peq1const"},
        {2.0, 3.0, 1.0, bump(1.0, 2.0), "p2q3bump"},
        {0.5, 1.0, 4.0, bump(1.0, 2.0), "p.5q1bump"},
    };

    for (const auto& c : battery) {
        OracleConfig eps_cfg;
        eps_cfg.method = OracleMethod::eps_extrapolation;
        eps_cfg.quad_tol = 1e-10;
        OracleConfig ibp_cfg = eps_cfg;
        ibp_cfg.method = OracleMethod::ibp_regularized;
        try {
            OracleResult e = oscillatory_half_line(c.p, c.q, Sign::plus, c.lambda, c.amp,
                                                   eps_cfg);
            OracleResult i = oscillatory_half_line(c.p, c.q, Sign::plus, c.lambda, c.amp,
                                                   ibp_cfg);
            if (std::abs(e.value - i.value) >
                10.0 * std::max(e.err_estimate, i.err_estimate)) {
                ok = false;
                note += std::string(" method:") + c.name;
            }

            OracleConfig sech_cfg = eps_cfg;
            sech_cfg.chi = ChiKind::sech;
            OracleResult s = oscillatory_half_line(c.p, c.q, Sign::plus, c.lambda, c.amp,
                                                   sech_cfg);
            if (std::abs(e.value - s.value) >
                10.0 * std::max(e.err_estimate, s.err_estimate)) {
                ok = false;
                note += std::string(" chi:") + c.name;
            }

            int lm = l_min(c.p, c.q, c.amp.tau(), c.amp.delta());
            OracleConfig lplus = ibp_cfg;
            lplus.split = SplitConfig(1.0, 2.0, lm + 2);
            OracleResult il = oscillatory_half_line(c.p, c.q, Sign::plus, c.lambda, c.amp,
                                                    lplus);
            if (std::abs(i.value - il.value) >
                10.0 * std::max(i.err_estimate, il.err_estimate)) {
                ok = false;
                note += std::string(" l+1:") + c.name;
            }

            OracleConfig shifted = ibp_cfg;
            shifted.split = SplitConfig(1.5, 3.0);
            OracleResult ir = oscillatory_half_line(c.p, c.q, Sign::plus, c.lambda, c.amp,
                                                    shifted);
            if (std::abs(i.value - ir.value) >
                10.0 * std::max(i.err_estimate, ir.err_estimate)) {
                ok = false;
                note += std::string(" radii:") + c.name;
            }
        } catch (const std::exception& ex) {
            ok = false;
            note += std::string(" threw:") + c.name + "(" + ex.what() + ")";
        }
    }
    record("A5 oracle method/chi/order/radius invariance (12 cases)", ok,
           ok ? "all within 10x combined error" : note, t.seconds());
}

struct SlopeOutcome {
    bool pass = false;
    double slope = 0.0;
    int usable = 0;
    std::string status;
};

SlopeOutcome run_slope_case(const CampaignCase& c, int N, double tol) {
    Campaign camp;
    camp.slope_tolerance = tol;
    CampaignCase cc = c;
    cc.Ns = {N};
    camp.cases.push_back(cc);
    std::vector<SlopeReport> reports = run_campaign(camp, env_thread_count());
    SlopeOutcome out;
    const SlopeReport& rep = reports.at(0);
    out.slope = rep.fitted_slope;
    out.status = rep.status;
    for (const auto& p : rep.points) out.usable += p.usable ? 1 : 0;
    out.pass = rep.status == "pass";
    return out;
}

void a6_remainder_slopes() {
    Timer t;
    bool ok = true;
    std::string note;

    CampaignCase m2;
    m2.name = "a6_m2";
    m2.kind = CaseKind::monomial_full;
    m2.power = 2.0;
    m2.sign = Sign::plus;
    m2.amplitude_spec = "gaussian";
    m2.grid = {16.0, 2.0, 9};
    m2.oracle.method = OracleMethod::ibp_regularized;
    m2.oracle.quad_tol = 1e-11;
    for (int N : {1, 3}) {
        SlopeOutcome s = run_slope_case(m2, N, 0.2);
        note += fmt(" m2 N=%d", N) + fmt(" slope %.2f;", s.slope);
        if (!s.pass) {
            ok = false;
            note += " status " + s.status + ";";
        }
    }

    CampaignCase ph;
    ph.name = "a6_p05";
    ph.kind = CaseKind::monomial_half;
    ph.power = 0.5;
    ph.sign = Sign::plus;
    ph.amplitude_spec = "bump(1,2)";
    ph.grid = {16.0, 2.0, 9};
    ph.oracle.method = OracleMethod::ibp_regularized;
    ph.oracle.quad_tol = 1e-12;
    for (int N : {1, 2}) {
        SlopeOutcome s = run_slope_case(ph, N, 0.2);
        note += fmt(" p.5 N=%d", N) + fmt(" slope %.2f u=%.0f;", s.slope, s.usable);
        if (!s.pass) {
            ok = false;
            note += " status " + s.status + ";";
        }
    }
    record("A6 remainder slopes", ok, note, t.seconds());
}

void a7_parity_consistency() {
    Timer t;
    bool ok = true;
    double worst = 0.0;
    Amplitude amp = poly_times_gaussian({1.0, 1.0, 0.5, -0.25});
    for (int m = 1; m <= 7; ++m) {
        ParityForm form = (m % 2 == 1) ? ParityForm::odd_power : ParityForm::even_power;
        int l = (m + 1) / 2;
        for (int N = 1; N <= 6; ++N) {
            Expansion parity = expand_parity_forms(l, Sign::plus, amp, N, form);
            Expansion full = expand_full_line(m, Sign::plus, amp, 2 * N);
            for (const auto& term : parity.terms) {
                int k = term.index[0];
                const auto& ft = full.terms.at(static_cast<size_t>(k));
                double diff = std::abs(term.coeff - ft.coeff);
                double scale = std::max(1.0, std::abs(ft.coeff));
                worst = std::max(worst, diff / scale);
                if (diff > 1e-12 * scale) ok = false;
            }
        }
    }
    // Even powers: every odd-k coefficient of the unified form is exactly 0.
    for (int m : {2, 4, 6}) {
        Expansion full = expand_full_line(m, Sign::plus, amp, 12);
        for (int k = 1; k < 12; k += 2)
            if (full.terms[static_cast<size_t>(k)].coeff != Complex(0.0, 0.0)) ok = false;
    }
    record("A7 parity forms equal the unified coefficients", ok,
           fmt("worst rel %.2e", worst), t.seconds());
}

void a8_jets() {
    Timer t;
    bool ok = true;
    double worst = 0.0;
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> lead(0.5, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        Jet f(12);
        f[1] = lead(rng) * (coeff(rng) > 0 ? 1.0 : -1.0);
        double scale = 0.4 * std::abs(f[1]);
        for (int k = 2; k <= 12; ++k) {
            f[k] = coeff(rng) * scale;
            scale *= 0.4;
        }
        Jet phi = jet_revert(f);
        Jet round = jet_compose(f, phi);
        for (int k = 0; k <= 12; ++k) {
            double want = (k == 1) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(round[k] - want));
            if (std::abs(round[k] - want) > 1e-10) ok = false;
        }
    }
    Jet f(4);
    f[1] = 1.0;
    f[2] = 1.0;
    Jet phi = jet_revert(f);
    const double want[5] = {0.0, 1.0, -1.0, 2.0, -5.0};
    for (int k = 0; k <= 4; ++k)
        if (std::abs(phi[k] - want[k]) > 1e-12) ok = false;
    record("A8 jet reversion", ok, fmt("worst round-trip %.2e", worst), t.seconds());
}

void a9_lambert_path() {
    Timer t;
    bool ok = true;
    std::string note;

    // (a) residual on a log grid.
    double worst_resid = 0.0;
    std::vector<double> ys{-1.0 / std::exp(1.0) + 1e-6, -0.3, -0.1, 0.0};
    for (double y = 1e-6; y <= 1e6; y *= 2.3) ys.push_back(y);
    for (double y : ys) {
        double w = lambert_w0(y);
        double resid = std::abs(w * std::exp(w) - y) / std::max(1.0, std::abs(y));
        worst_resid = std::max(worst_resid, resid);
        if (resid > 1e-13) ok = false;
    }
    note += fmt("resid %.1e;", worst_resid);

    // (b) composite jet vs finite differences at the coefficient level.
    Amplitude amp = product(gaussian(), narrow_bump(0.25, 0.45));
    double worst_fd = 0.0;
    for (double p : {1.0, 2.0}) {
        PhaseSeries ps;
        ps.p = p;
        double fact = 1.0;
        for (int j = 1; j <= 12; ++j) {
            fact *= j;
            ps.coeffs.push_back(1.0 / fact);
        }
        Jet comp = analytic_composite_jet(ps, amp, 8);
        auto g = [&](double y) {
            return amp.value(p * lambert_w0(y / p)) * lambert_w0_deriv(y / p);
        };
        auto stencil = [&](int k, double h) -> double {
            switch (k) {
                case 0: return g(0.0);
                case 1: return (g(h) - g(-h)) / (2 * h);
                case 2: return (g(h) - 2 * g(0.0) + g(-h)) / (h * h);
                case 3:
                    return (g(2 * h) - 2 * g(h) + 2 * g(-h) - g(-2 * h)) / (2 * h * h * h);
                default:
                    return (g(2 * h) - 4 * g(h) + 6 * g(0.0) - 4 * g(-h) + g(-2 * h)) /
                           (h * h * h * h);
            }
        };
        double kfact = 1.0;
        for (int k = 0; k <= 4; ++k) {
            if (k >= 2) kfact *= k;
            // Richardson refinement from the base step 1e-2.
            double tab[3][3] = {};
            for (int i = 0; i < 3; ++i) tab[i][0] = stencil(k, 1e-2 / (1 << i));
            for (int j = 1; j < 3; ++j)
                for (int i = 2; i >= j; --i)
                    tab[i][j] = tab[i][j - 1] + (tab[i][j - 1] - tab[i - 1][j - 1]) /
                                                    (std::pow(4.0, j) - 1.0);
            double fd_coeff = tab[2][2] / kfact;
            double diff = std::abs(comp[k] - fd_coeff) / std::max(1.0, std::abs(fd_coeff));
            worst_fd = std::max(worst_fd, diff);
            if (diff > 1e-5) ok = false;
        }
    }
    note += fmt(" fd %.1e;", worst_fd);

    // (c) slope test for the analytic phase x^2 e^x.
    CampaignCase c;
    c.name = "a9_analytic";
    c.kind = CaseKind::analytic_full;
    c.power = 2.0;
    c.sign = Sign::plus;
    c.phase_exp = true;
    c.amplitude_spec = "gaussian*narrow_bump(0.25,0.45)";
    c.grid = {50.0, 2.0, 7};
    c.oracle.quad_tol = 1e-12;
    SlopeOutcome s = run_slope_case(c, 2, 0.2);
    note += fmt(" slope %.2f (need <= -1.3)", s.slope);
    if (!s.pass) {
        ok = false;
        note += " status " + s.status;
    }
    record("A9 lambert path", ok, note, t.seconds());
}

void a10_omega_and_nd_slope() {
    Timer t;
    bool ok = true;
    std::string note;

    // (a) brute-force agreement, pinned cases first.
    auto brute = [](const std::vector<double>& p, int N) {
        double max_p = 0.0, max_frac = 0.0;
        for (double pj : p) {
            max_p = std::max(max_p, pj);
            max_frac = std::max(max_frac, pj - std::floor(pj));
        }
        double threshold = (N + 1 - max_frac) / max_p;
        int box = 1;
        for (double pj : p)
            box = std::max(box, static_cast<int>(std::ceil(pj * threshold)) + 1);
        std::set<std::vector<int>> out;
        std::vector<int> alpha(p.size(), 0);
        while (true) {
            long double sum = 0.0L;
            for (size_t j = 0; j < p.size(); ++j)
                sum += static_cast<long double>(alpha[j] + 1) /
                       static_cast<long double>(p[j]);
            if (sum < static_cast<long double>(threshold)) out.insert(alpha);
            size_t j = 0;
            for (; j < p.size(); ++j) {
                if (alpha[j] < box) {
                    ++alpha[j];
                    break;
                }
                alpha[j] = 0;
            }
            if (j == p.size()) break;
        }
        return out;
    };
    auto check_case = [&](const std::vector<double>& p, int N) {
        IndexSet got = omega_set(p, N);
        std::set<std::vector<int>> got_set(got.members.begin(), got.members.end());
        if (got_set != brute(p, N)) {
            ok = false;
            note += fmt(" omega mismatch n=%.0f N=%d;", static_cast<double>(p.size()), N);
        }
        return got;
    };

    IndexSet pinned = check_case({2.0, 2.0}, 3);
    std::set<std::vector<int>> want{{0, 0}, {1, 0}, {0, 1}};
    if (std::set<std::vector<int>>(pinned.members.begin(), pinned.members.end()) != want)
        ok = false;
    IndexSet empty = check_case({0.5, 4.0}, 1);
    if (!empty.members.empty()) ok = false;

    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> pw(0.3, 5.0);
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_int_distribution<int> enn(1, 6);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        int n = dim(rng);
        std::vector<double> p;
        for (int j = 0; j < n; ++j) {
            double v = pw(rng);
            if (coin(rng)) v = std::max(0.5, std::round(v * 2.0) / 2.0);
            p.push_back(v);
        }
        check_case(p, enn(rng));
    }

    // (b) two-dimensional slope test for the A1 phase on the full space.
    CampaignCase c;
    c.name = "a10_nd";
    c.kind = CaseKind::nd_full;
    c.powers = {2.0, 2.0};
    c.signs = {Sign::plus, Sign::plus};
    c.amplitude_spec = "gaussian|gaussian";
    c.grid = {50.0, 2.0, 7};
    c.oracle.quad_tol = 3e-9;
    SlopeOutcome s = run_slope_case(c, 2, 0.2);
    note += fmt(" nd slope %.2f (need <= -1.3) usable %.0f", s.slope,
                static_cast<double>(s.usable));
    if (!s.pass) {
        ok = false;
        note += " status " + s.status;
    }
    record("A10 omega enumeration and 2-D slope", ok, note, t.seconds());
}

}  // namespace

int main() {
    std::printf("oscatlas acceptance suite\n");
    Timer total;
    a1_closed_form_vs_oracle();
    a2_known_identities();
    a3_exact_gaussian_oracle();
    a4_c_tables();
    a5_oracle_invariances();
    a6_remainder_slopes();
    a7_parity_consistency();
    a8_jets();
    a9_lambert_path();
    a10_omega_and_nd_slope();

    int failures = 0;
    for (const auto& r : g_results) failures += r.pass ? 0 : 1;
    std::printf("%d/%zu criteria passed (total %.1f s)\n",
                static_cast<int>(g_results.size()) - failures, g_results.size(),
                total.seconds());
    return failures == 0 ? 0 : 1;
}
