#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "oscatlas/jet.hpp"
#include "oscatlas/types.hpp"

namespace oscatlas {

// Polymorphic core of an amplitude function.  Implementations must provide
// exact derivatives of every order (closed-form recurrence or jet arithmetic;
// no finite differences).
class AmplitudeModel {
public:
    virtual ~AmplitudeModel() = default;
    virtual double value(double x) const = 0;
    virtual double derivative(int k, double x) const = 0;
    virtual Jet jet_at(double x, int order) const;
    // Radius beyond which |a(x)| <= tol; +inf when the function does not decay.
    virtual double truncation_radius(double tol) const = 0;
};

// Immutable, shareable handle carrying the class parameters (tau, delta) of
// the smoothness/growth class  |a^(k)(x)| <= C_k <x>^(tau + delta k)  and the
// support radius for compactly supported members.
class Amplitude {
public:
    Amplitude(std::shared_ptr<const AmplitudeModel> impl, double tau, double delta,
              std::optional<double> support_radius = std::nullopt)
        : impl_(std::move(impl)), tau_(tau), delta_(delta), support_(support_radius) {}

    double value(double x) const { return impl_->value(x); }
    double derivative(int k, double x) const { return impl_->derivative(k, x); }
    Jet jet_at(double x, int order) const { return impl_->jet_at(x, order); }

    double tau() const { return tau_; }
    double delta() const { return delta_; }
    std::optional<double> support_radius() const { return support_; }
    double truncation_radius(double tol) const {
        if (support_) return *support_;
        return impl_->truncation_radius(tol);
    }

    // Same function re-declared with different class parameters.
    Amplitude with_class_params(double tau, double delta) const {
        return Amplitude(impl_, tau, delta, support_);
    }

private:
    std::shared_ptr<const AmplitudeModel> impl_;
    double tau_;
    double delta_;
    std::optional<double> support_;
};

// --- built-ins -------------------------------------------------------------

// e^{-x^2}; derivatives by the Hermite recurrence.
Amplitude gaussian();

// Smooth cut-off: exactly 1 on |x| <= r0, exactly 0 on |x| >= r1, built from
// the mollifier g(t) = exp(-1/t).  Requires r1 > r0 >= 1.
Amplitude bump(double r0, double r1);

// Same construction without the r0 >= 1 requirement (narrow supports for
// analytic-phase tests); requires 0 < r0 < r1.
Amplitude narrow_bump(double r0, double r1);

// P(x) e^{-x^2} with P given by its monomial coefficients.
Amplitude poly_times_gaussian(std::vector<double> coeffs);

// (1 + x^2)^(-power/2); tau = -power, delta = -1.  Requires power > 0.
Amplitude rational_decay(double power);

Amplitude constant_one();

// --- combinators -------------------------------------------------------------

// x -> a(-x).
Amplitude reflect(const Amplitude& a);

// Pointwise product; derivatives by Leibniz through jets.
Amplitude product(const Amplitude& a, const Amplitude& b);

// --- class membership diagnostic --------------------------------------------

struct ClassReport {
    bool admissible = false;  // delta < p - 1
    double p = 0.0;
    double tau = 0.0;
    double delta = 0.0;
    int k_max = 0;
    double seminorm = 0.0;  // empirical max_k sup_grid <x>^(-tau-delta k) |a^(k)(x)|
    bool bounded = false;
};

// Samples the seminorm on the grid.  Purely diagnostic: a finite grid can
// never prove membership, only exhibit a candidate bound.
ClassReport class_check(const Amplitude& a, double p, const std::vector<double>& grid,
                        int k_max);

// --- n-dimensional amplitudes -----------------------------------------------

// Tensor product of one-dimensional amplitudes.  partial_at_zero returns
// the exact mixed partial from the factors' derivatives.
class AmplitudeND {
public:
    explicit AmplitudeND(std::vector<Amplitude> factors);

    int dim() const { return static_cast<int>(factors_.size()); }
    double value(const std::vector<double>& x) const;
    double partial_at_zero(const std::vector<int>& alpha) const;
    const Amplitude& factor(int j) const { return factors_[static_cast<size_t>(j)]; }
    // Half-width of the integration box in dimension j.
    double box_radius(int j, double tol) const;
    double support_radius() const;

private:
    std::vector<Amplitude> factors_;
};

AmplitudeND tensor(std::vector<Amplitude> factors);

}  // namespace oscatlas
