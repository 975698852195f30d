#include <doctest.h>

#include <cmath>

#include "oscatlas/fresnel.hpp"
#include "oscatlas/oracle.hpp"
#include "test_helpers.hpp"

using namespace oscatlas;
using namespace oscatlas::testing;

namespace {

OracleConfig fast_cfg(OracleMethod m = OracleMethod::ibp_regularized) {
    OracleConfig cfg;
    cfg.method = m;
    cfg.quad_tol = 1e-10;
    return cfg;
}

}  // namespace

TEST_CASE("half-line oracle reproduces the classical Fresnel value") {
    OracleResult r = oscillatory_half_line(2.0, 1.0, Sign::plus, 1.0, constant_one(),
                                           fast_cfg(OracleMethod::both_crosscheck));
    Complex want = 0.5 * std::sqrt(kPi) * std::exp(kI * kPi / 4.0);
    CHECK(std::abs(r.value - want) <= std::max(1e-7, 10.0 * r.err_estimate));
}

TEST_CASE("half-line oracle matches the scaled closed form at p = 3") {
    double p = 3.0, q = 1.0, lambda = 10.0;
    OracleResult r = oscillatory_half_line(p, q, Sign::plus, lambda, constant_one(),
                                           fast_cfg());
    Complex want = std::pow(lambda, -q / p) * fresnel_general(p, Complex(q, 0.0), Sign::plus);
    CHECK(std::abs(r.value - want) <= std::max(1e-8, 10.0 * r.err_estimate));
}

TEST_CASE("zero amplitude gives zero") {
    OracleResult r = oscillatory_half_line(2.0, 1.0, Sign::plus, 4.0,
                                           poly_times_gaussian({0.0}), fast_cfg());
    CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("scaling law for the constant amplitude") {
    double p = 2.0, q = 1.5;
    OracleResult base = oscillatory_half_line(p, q, Sign::plus, 1.0, constant_one(),
                                              fast_cfg());
    for (double lambda : {2.0, 8.0}) {
        OracleResult r = oscillatory_half_line(p, q, Sign::plus, lambda, constant_one(),
                                               fast_cfg());
        Complex want = std::pow(lambda, -q / p) * base.value;
        CHECK(std::abs(r.value - want) < 1e-6 * std::abs(want));
    }
}

TEST_CASE("full-line gaussian against the exact closed form") {
    for (double lambda : {1.0, 10.0}) {
        OracleResult r = oscillatory_full_line(2, Sign::plus, lambda, gaussian(),
                                               fast_cfg(OracleMethod::both_crosscheck));
        Complex want = std::sqrt(kPi / Complex(1.0, -lambda));
        CHECK(std::abs(r.value - want) < 1e-8 * std::abs(want));
    }
}

TEST_CASE("full-line linear phase is the Fourier transform of the gaussian") {
    double lambda = 2.0;
    OracleResult r = oscillatory_full_line(1, Sign::plus, lambda, gaussian(), fast_cfg());
    Complex want(std::sqrt(kPi) * std::exp(-lambda * lambda / 4.0), 0.0);
    CHECK(std::abs(r.value - want) < 1e-9);
}

TEST_CASE("odd amplitude with even power integrates to zero") {
    OracleResult r = oscillatory_full_line(2, Sign::plus, 3.0,
                                           poly_times_gaussian({0.0, 1.0}), fast_cfg());
    CHECK(std::abs(r.value) <= std::max(1e-9, 10.0 * r.err_estimate));
}

TEST_CASE("minus sign is the conjugate for real amplitudes") {
    OracleResult plus = oscillatory_half_line(2.0, 1.0, Sign::plus, 5.0, gaussian(),
                                              fast_cfg());
    OracleResult minus = oscillatory_half_line(2.0, 1.0, Sign::minus, 5.0, gaussian(),
                                               fast_cfg());
    CHECK(std::abs(minus.value - std::conj(plus.value)) < 1e-9);
}

TEST_CASE("eps and ibp methods agree") {
    for (double q : {0.5, 1.0, 2.7}) {
        OracleResult e = oscillatory_half_line(2.0, q, Sign::plus, 1.0, constant_one(),
                                               fast_cfg(OracleMethod::eps_extrapolation));
        OracleResult i = oscillatory_half_line(2.0, q, Sign::plus, 1.0, constant_one(),
                                               fast_cfg(OracleMethod::ibp_regularized));
        CHECK(std::abs(e.value - i.value) <=
              10.0 * std::max(e.err_estimate, i.err_estimate));
    }
}

TEST_CASE("gaussian and sech damping agree") {
    OracleConfig g = fast_cfg(OracleMethod::eps_extrapolation);
    OracleConfig s = g;
    s.chi = ChiKind::sech;
    OracleResult rg = oscillatory_half_line(1.5, 1.0, Sign::plus, 1.0, constant_one(), g);
    OracleResult rs = oscillatory_half_line(1.5, 1.0, Sign::plus, 1.0, constant_one(), s);
    CHECK(std::abs(rg.value - rs.value) <=
          10.0 * std::max(rg.err_estimate, rs.err_estimate));
}

TEST_CASE("ibp result is stable under order and radius changes") {
    OracleConfig base = fast_cfg(OracleMethod::ibp_regularized);
    OracleResult r0 = oscillatory_half_line(2.0, 1.0, Sign::plus, 1.0, rational_decay(2.0),
                                            base);

    OracleConfig more = base;
    more.split = SplitConfig(1.0, 2.0, l_min(2.0, 1.0, -2.0, -1.0) + 2);
    OracleResult r1 = oscillatory_half_line(2.0, 1.0, Sign::plus, 1.0, rational_decay(2.0),
                                            more);

    OracleConfig shifted = base;
    shifted.split = SplitConfig(1.5, 3.0);
    OracleResult r2 = oscillatory_half_line(2.0, 1.0, Sign::plus, 1.0, rational_decay(2.0),
                                            shifted);

    double allowed = 10.0 * std::max({r0.err_estimate, r1.err_estimate, r2.err_estimate});
    CHECK(std::abs(r0.value - r1.value) <= allowed);
    CHECK(std::abs(r0.value - r2.value) <= allowed);
}

TEST_CASE("nd oracle consistency with one dimension") {
    AmplitudeND amp = tensor({gaussian()});
    OracleConfig cfg = fast_cfg();
    OracleResult nd = oscillatory_nd({2.0}, {Sign::plus}, 3.0, amp, false, cfg);
    OracleResult hl = oscillatory_half_line(2.0, 1.0, Sign::plus, 3.0, gaussian(), cfg);
    CHECK(std::abs(nd.value - hl.value) < 1e-7);
}

TEST_CASE("nd oracle factorizes over a tensor amplitude") {
    Amplitude gb = product(gaussian(), narrow_bump(2.0, 3.0));
    AmplitudeND amp = tensor({gb, gb});
    OracleConfig cfg = fast_cfg();
    cfg.quad_tol = 1e-9;
    OracleResult nd = oscillatory_nd({2.0, 2.0}, {Sign::plus, Sign::plus}, 4.0, amp, false,
                                     cfg);
    OracleResult one = oscillatory_half_line(2.0, 1.0, Sign::plus, 4.0, gb, cfg);
    Complex want = one.value * one.value;
    CHECK(std::abs(nd.value - want) < 1e-6);
}

TEST_CASE("nd oracle rejects high dimensions and bad powers") {
    AmplitudeND amp = tensor({gaussian(), gaussian(), gaussian(), gaussian()});
    OracleConfig cfg = fast_cfg();
    CHECK_THROWS_AS(oscillatory_nd({2, 2, 2, 2},
                                   {Sign::plus, Sign::plus, Sign::plus, Sign::plus}, 1.0,
                                   amp, false, cfg),
                    DimensionTooLarge);
    AmplitudeND amp2 = tensor({gaussian(), gaussian()});
    CHECK_THROWS_AS(oscillatory_nd({2.0, 1.5}, {Sign::plus, Sign::plus}, 1.0, amp2, true,
                                   cfg),
                    DomainPowerMismatch);
}

TEST_CASE("compact-phase oracle matches the monomial oracle on a compact amplitude") {
    Amplitude a = product(gaussian(), narrow_bump(1.0, 2.0));
    auto phi = [](double x) { return x * x; };
    auto dphi = [](double x) { return 2.0 * x; };
    OracleConfig cfg = fast_cfg();
    OracleResult c = oscillatory_compact_1d(phi, dphi, Sign::plus, 6.0, a, true, cfg);
    OracleResult m = oscillatory_full_line(2, Sign::plus, 6.0, a, cfg);
    CHECK(std::abs(c.value - m.value) < 1e-7);
}

TEST_CASE("inadmissible class is rejected") {
    CHECK_THROWS_AS(oscillatory_half_line(0.5, 1.0, Sign::plus, 1.0,
                                          constant_one().with_class_params(0.0, 0.0),
                                          fast_cfg()),
                    InadmissibleClass);
    // delta = -1 stays admissible for every p > 0.
    CHECK_NOTHROW(oscillatory_half_line(0.5, 1.0, Sign::plus, 1.0, constant_one(),
                                        fast_cfg()));
}
