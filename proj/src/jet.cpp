#include "oscatlas/jet.hpp"

#include <cmath>

namespace oscatlas {

namespace {

void require_same_order(const Jet& f, const Jet& g, const char* op) {
    if (f.order() != g.order())
        throw OrderMismatch(std::string(op) + ": jets have different orders");
}

}  // namespace

double Jet::derivative(int k) const {
    if (k < 0 || k > order()) throw BadParams("Jet::derivative: bad k");
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c_[static_cast<size_t>(k)] * fact;
}

Jet jet_add(const Jet& f, const Jet& g) {
    require_same_order(f, g, "jet_add");
    Jet r(f.order());
    for (int k = 0; k <= f.order(); ++k) r[k] = f[k] + g[k];
    return r;
}

Jet jet_sub(const Jet& f, const Jet& g) {
    require_same_order(f, g, "jet_sub");
    Jet r(f.order());
    for (int k = 0; k <= f.order(); ++k) r[k] = f[k] - g[k];
    return r;
}

Jet jet_scale(const Jet& f, double s) {
    Jet r(f.order());
    for (int k = 0; k <= f.order(); ++k) r[k] = f[k] * s;
    return r;
}

Jet jet_mul(const Jet& f, const Jet& g) {
    require_same_order(f, g, "jet_mul");
    const int K = f.order();
    Jet r(K);
    for (int k = 0; k <= K; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += f[i] * g[k - i];
        r[k] = s;
    }
    return r;
}

Jet jet_powf(const Jet& f, double alpha) {
    if (!(f[0] > 0.0))
        throw NonpositiveLeadError("jet_powf: leading coefficient must be positive");
    const int K = f.order();
    Jet g(K);
    g[0] = std::pow(f[0], alpha);
    // From f g' = alpha f' g:  k f0 g_k = sum_{j=1..k} ((alpha+1) j - k) f_j g_{k-j}.
    for (int k = 1; k <= K; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += ((alpha + 1.0) * j - k) * f[j] * g[k - j];
        g[k] = s / (k * f[0]);
    }
    return g;
}

Jet jet_compose(const Jet& f, const Jet& g) {
    require_same_order(f, g, "jet_compose");
    if (g[0] != 0.0)
        throw NonzeroInnerConstant("jet_compose: inner jet must have zero constant term");
    const int K = f.order();
    Jet r = Jet::constant(f[K], K);
    for (int i = K - 1; i >= 0; --i) {
        r = jet_mul(r, g);
        r[0] += f[i];
    }
    return r;
}

Jet jet_exp(const Jet& f) {
    const int K = f.order();
    Jet g(K);
    g[0] = std::exp(f[0]);
    for (int k = 1; k <= K; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * f[j] * g[k - j];
        g[k] = s / k;
    }
    return g;
}

Jet jet_reciprocal(const Jet& f) {
    if (f[0] == 0.0) throw DivisionByZero("jet_reciprocal: zero constant term");
    const int K = f.order();
    Jet g(K);
    g[0] = 1.0 / f[0];
    for (int k = 1; k <= K; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += f[j] * g[k - j];
        g[k] = -s / f[0];
    }
    return g;
}

Jet jet_derivative(const Jet& f) {
    const int K = f.order();
    Jet r(K);
    for (int k = 1; k <= K; ++k) r[k - 1] = k * f[k];
    return r;
}

double jet_eval(const Jet& f, double t) {
    double r = 0.0;
    for (int k = f.order(); k >= 0; --k) r = r * t + f[k];
    return r;
}

Jet jet_revert(const Jet& f) {
    if (f[0] != 0.0 || f[1] == 0.0)
        throw NotInvertible("jet_revert: need f0 = 0 and f1 != 0");
    const int K = f.order();
    // Newton on jets: Phi <- Phi - (f(Phi) - y) / f'(Phi).  Each step doubles
    // the number of correct coefficients; run enough steps for order K.
    Jet phi = jet_scale(Jet::identity(K), 1.0 / f[1]);
    Jet fprime = jet_derivative(f);
    int steps = 2;
    for (int m = 1; m < K; m *= 2) ++steps;
    for (int s = 0; s < steps; ++s) {
        Jet err = jet_sub(jet_compose(f, phi), Jet::identity(K));
        Jet denom = jet_compose(fprime, phi);
        phi = jet_sub(phi, jet_mul(err, jet_reciprocal(denom)));
        phi[0] = 0.0;
    }
    return phi;
}

}  // namespace oscatlas
