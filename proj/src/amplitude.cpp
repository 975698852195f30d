#include "oscatlas/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oscatlas {

Jet AmplitudeModel::jet_at(double x, int order) const {
    Jet j(order);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k >= 2) fact *= k;
        j[k] = derivative(k, x) / fact;
    }
    return j;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class GaussianModel : public AmplitudeModel {
public:
    double value(double x) const override { return std::exp(-x * x); }

    double derivative(int k, double x) const override {
        // d^k/dx^k e^{-x^2} = (-1)^k H_k(x) e^{-x^2}, physicists' Hermite.
        if (k == 0) return value(x);
        double hkm1 = 1.0, hk = 2.0 * x;
        for (int i = 1; i < k; ++i) {
            double hkp1 = 2.0 * x * hk - 2.0 * i * hkm1;
            hkm1 = hk;
            hk = hkp1;
        }
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * hk * value(x);
    }

    double truncation_radius(double tol) const override {
        return std::sqrt(std::log(1.0 / tol)) + 0.5;
    }
};

class ConstantOneModel : public AmplitudeModel {
public:
    double value(double) const override { return 1.0; }
    double derivative(int k, double) const override { return k == 0 ? 1.0 : 0.0; }
    Jet jet_at(double, int order) const override { return Jet::constant(1.0, order); }
    double truncation_radius(double) const override { return kInf; }
};

// g(r1 - |x|) / (g(r1 - |x|) + g(|x| - r0)) with g(t) = exp(-1/t), t > 0.
class MollifierBumpModel : public AmplitudeModel {
public:
    MollifierBumpModel(double r0, double r1) : r0_(r0), r1_(r1) {}

    double value(double x) const override {
        double ax = std::abs(x);
        if (ax <= r0_) return 1.0;
        if (ax >= r1_) return 0.0;
        double n = g(r1_ - ax), d = g(ax - r0_);
        return n / (n + d);
    }

    double derivative(int k, double x) const override {
        if (k == 0) return value(x);
        return transition_jet(x, k).derivative(k);
    }

    Jet jet_at(double x, int order) const override {
        double ax = std::abs(x);
        if (ax <= r0_) return Jet::constant(1.0, order);
        if (ax >= r1_) return Jet(order);
        return transition_jet(x, order);
    }

    double truncation_radius(double) const override { return r1_; }

private:
    static double g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

    // Jet of t -> exp(-1/(c + s t)) at t = 0, c > 0.
    static Jet exp_neg_inv_jet(double c, double s, int order) {
        // -1/(c + s t) expanded at 0.
        Jet w(order);
        double term = -1.0 / c;
        w[0] = term;
        for (int k = 1; k <= order; ++k) {
            term *= -s / c;
            w[k] = term;
        }
        return jet_exp(w);
    }

    Jet transition_jet(double x, int order) const {
        double ax = std::abs(x);
        if (ax <= r0_ || ax >= r1_) {
            Jet j(order);
            if (ax <= r0_) j[0] = 1.0;
            return j;
        }
        // For x > 0: numerator exp(-1/(r1-x-t)), denominator adds exp(-1/(x-r0+t)).
        Jet n = exp_neg_inv_jet(r1_ - ax, -1.0, order);
        Jet d = exp_neg_inv_jet(ax - r0_, +1.0, order);
        Jet r = jet_mul(n, jet_reciprocal(jet_add(n, d)));
        if (x < 0.0)
            for (int k = 1; k <= order; k += 2) r[k] = -r[k];
        return r;
    }

    double r0_, r1_;
};

class PolyGaussianModel : public AmplitudeModel {
public:
    explicit PolyGaussianModel(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    double value(double x) const override { return poly(x) * std::exp(-x * x); }

    double derivative(int k, double x) const override {
        if (k == 0) return value(x);
        return jet_at(x, k).derivative(k);
    }

    Jet jet_at(double x, int order) const override {
        // Shifted polynomial coefficients via Horner in jet form.
        Jet xj = Jet::variable(x, order);
        Jet acc(order);
        for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
            acc = jet_mul(acc, xj);
            acc[0] += c_[static_cast<size_t>(i)];
        }
        return jet_mul(acc, gauss_.jet_at(x, order));
    }

    double truncation_radius(double tol) const override {
        double bound = 0.0;
        for (double ci : c_) bound += std::abs(ci);
        if (bound == 0.0) return 1.0;
        double r = 1.0;
        int deg = static_cast<int>(c_.size()) - 1;
        while (bound * std::pow(std::max(r, 1.0), deg) * std::exp(-r * r) > tol && r < 40.0)
            r += 0.5;
        return r;
    }

private:
    double poly(double x) const {
        double r = 0.0;
        for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
            r = r * x + c_[static_cast<size_t>(i)];
        return r;
    }

    std::vector<double> c_;
    GaussianModel gauss_;
};

class RationalDecayModel : public AmplitudeModel {
public:
    explicit RationalDecayModel(double power) : s_(power) {}

    double value(double x) const override { return std::pow(1.0 + x * x, -s_ / 2.0); }

    double derivative(int k, double x) const override {
        if (k == 0) return value(x);
        return jet_at(x, k).derivative(k);
    }

    Jet jet_at(double x, int order) const override {
        Jet base(order);
        base[0] = 1.0 + x * x;
        if (order >= 1) base[1] = 2.0 * x;
        if (order >= 2) base[2] = 1.0;
        return jet_powf(base, -s_ / 2.0);
    }

    double truncation_radius(double tol) const override {
        return std::min(std::pow(tol, -1.0 / s_), 1e12);
    }

private:
    double s_;
};

class ReflectModel : public AmplitudeModel {
public:
    explicit ReflectModel(Amplitude inner) : inner_(std::move(inner)) {}

    double value(double x) const override { return inner_.value(-x); }

    double derivative(int k, double x) const override {
        double d = inner_.derivative(k, -x);
        return (k % 2 == 0) ? d : -d;
    }

    Jet jet_at(double x, int order) const override {
        Jet j = inner_.jet_at(-x, order);
        for (int k = 1; k <= order; k += 2) j[k] = -j[k];
        return j;
    }

    double truncation_radius(double tol) const override {
        return inner_.truncation_radius(tol);
    }

private:
    Amplitude inner_;
};

class ProductModel : public AmplitudeModel {
public:
    ProductModel(Amplitude a, Amplitude b) : a_(std::move(a)), b_(std::move(b)) {}

    double value(double x) const override { return a_.value(x) * b_.value(x); }

    double derivative(int k, double x) const override {
        if (k == 0) return value(x);
        return jet_at(x, k).derivative(k);
    }

    Jet jet_at(double x, int order) const override {
        return jet_mul(a_.jet_at(x, order), b_.jet_at(x, order));
    }

    double truncation_radius(double tol) const override {
        return std::min(a_.truncation_radius(tol), b_.truncation_radius(tol));
    }

private:
    Amplitude a_, b_;
};

}  // namespace

Amplitude gaussian() {
    return Amplitude(std::make_shared<GaussianModel>(), 0.0, -1.0);
}

Amplitude narrow_bump(double r0, double r1) {
    if (!(r0 > 0.0) || !(r1 > r0)) throw BadParams("narrow_bump: need 0 < r0 < r1");
    return Amplitude(std::make_shared<MollifierBumpModel>(r0, r1), 0.0, -1.0, r1);
}

Amplitude bump(double r0, double r1) {
    if (!(r0 >= 1.0)) throw BadParams("bump: need r0 >= 1");
    return narrow_bump(r0, r1);
}

Amplitude poly_times_gaussian(std::vector<double> coeffs) {
    if (coeffs.empty()) throw BadParams("poly_times_gaussian: empty coefficients");
    return Amplitude(std::make_shared<PolyGaussianModel>(std::move(coeffs)), 0.0, -1.0);
}

Amplitude rational_decay(double power) {
    if (!(power > 0.0)) throw BadParams("rational_decay: need power > 0");
    return Amplitude(std::make_shared<RationalDecayModel>(power), -power, -1.0);
}

Amplitude constant_one() {
    return Amplitude(std::make_shared<ConstantOneModel>(), 0.0, -1.0);
}

Amplitude reflect(const Amplitude& a) {
    return Amplitude(std::make_shared<ReflectModel>(a), a.tau(), a.delta(),
                     a.support_radius());
}

Amplitude product(const Amplitude& a, const Amplitude& b) {
    std::optional<double> support;
    if (a.support_radius() && b.support_radius())
        support = std::min(*a.support_radius(), *b.support_radius());
    else if (a.support_radius())
        support = a.support_radius();
    else if (b.support_radius())
        support = b.support_radius();
    return Amplitude(std::make_shared<ProductModel>(a, b), a.tau() + b.tau(),
                     std::max(a.delta(), b.delta()), support);
}

ClassReport class_check(const Amplitude& a, double p, const std::vector<double>& grid,
                        int k_max) {
    if (!(p > 0.0)) throw BadParams("class_check: need p > 0");
    if (k_max < 0) throw BadParams("class_check: need k_max >= 0");
    ClassReport rep;
    rep.p = p;
    rep.tau = a.tau();
    rep.delta = a.delta();
    rep.k_max = k_max;
    rep.admissible = a.delta() < p - 1.0;
    double worst = 0.0;
    for (double x : grid) {
        double w = std::sqrt(1.0 + x * x);  // <x>
        for (int k = 0; k <= k_max; ++k) {
            double v = std::abs(a.derivative(k, x)) * std::pow(w, -rep.tau - rep.delta * k);
            worst = std::max(worst, v);
        }
    }
    rep.seminorm = worst;
    rep.bounded = std::isfinite(worst);
    return rep;
}

AmplitudeND::AmplitudeND(std::vector<Amplitude> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw BadDimension("AmplitudeND: need at least one factor");
}

double AmplitudeND::value(const std::vector<double>& x) const {
    if (x.size() != factors_.size())
        throw BadDimension("AmplitudeND::value: dimension mismatch");
    double v = 1.0;
    for (size_t j = 0; j < factors_.size(); ++j) v *= factors_[j].value(x[j]);
    return v;
}

double AmplitudeND::partial_at_zero(const std::vector<int>& alpha) const {
    if (alpha.size() != factors_.size())
        throw BadDimension("AmplitudeND::partial_at_zero: dimension mismatch");
    double v = 1.0;
    for (size_t j = 0; j < factors_.size(); ++j)
        v *= factors_[j].derivative(alpha[j], 0.0);
    return v;
}

double AmplitudeND::box_radius(int j, double tol) const {
    return factors_[static_cast<size_t>(j)].truncation_radius(tol);
}

double AmplitudeND::support_radius() const {
    double r = 0.0;
    for (const auto& f : factors_) r = std::max(r, f.truncation_radius(1e-30));
    return r;
}

AmplitudeND tensor(std::vector<Amplitude> factors) {
    return AmplitudeND(std::move(factors));
}

}  // namespace oscatlas
