#pragma once

#include <vector>

#include "oscatlas/types.hpp"

namespace oscatlas {

// Truncated real power series c0 + c1 t + ... + cK t^K.  Value semantics;
// every operation returns a fresh jet of the same order.
class Jet {
public:
    static constexpr int kDefaultOrder = 16;

    explicit Jet(int order) : c_(static_cast<size_t>(order) + 1, 0.0) {
        if (order < 0) throw BadParams("Jet: negative order");
    }
    Jet(std::initializer_list<double> coeffs) : c_(coeffs) {
        if (c_.empty()) throw BadParams("Jet: empty coefficient list");
    }
    static Jet constant(double v, int order) {
        Jet j(order);
        j.c_[0] = v;
        return j;
    }
    // v + t, the jet of the identity centred at v.
    static Jet variable(double v, int order) {
        Jet j(order);
        j.c_[0] = v;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }
    static Jet identity(int order) { return variable(0.0, order); }
    static Jet from_coeffs(std::vector<double> coeffs) {
        if (coeffs.empty()) throw BadParams("Jet: empty coefficient list");
        Jet j(0);
        j.c_ = std::move(coeffs);
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    double& operator[](int k) { return c_[static_cast<size_t>(k)]; }
    const std::vector<double>& coeffs() const { return c_; }

    // k-th derivative of the represented function at the expansion point.
    double derivative(int k) const;

    bool operator==(const Jet&) const = default;

private:
    Jet() = default;
    std::vector<double> c_;
};

Jet jet_add(const Jet& f, const Jet& g);
Jet jet_sub(const Jet& f, const Jet& g);
Jet jet_scale(const Jet& f, double s);

// Cauchy product truncated at the common order.
Jet jet_mul(const Jet& f, const Jet& g);

// f^alpha as a formal series; requires f[0] > 0.  Exact for integer alpha.
Jet jet_powf(const Jet& f, double alpha);

// Taylor coefficients of f(g(t)) through the common order; requires g[0] = 0.
Jet jet_compose(const Jet& f, const Jet& g);

// Compositional inverse: Phi with f(Phi(y)) = y through the order.
// Requires f[0] = 0, f[1] != 0.
Jet jet_revert(const Jet& f);

// exp(f) as a formal series.
Jet jet_exp(const Jet& f);

// 1/f; requires f[0] != 0.
Jet jet_reciprocal(const Jet& f);

// Formal derivative, order reduced by one then padded with a trailing zero.
Jet jet_derivative(const Jet& f);

// Horner evaluation of the polynomial at t.
double jet_eval(const Jet& f, double t);

}  // namespace oscatlas
