#pragma once

#include <vector>

#include "oscatlas/amplitude.hpp"
#include "oscatlas/types.hpp"

namespace oscatlas {

// Triangular coefficient table generated by powers of the formal adjoint
// L* = -(i lambda)^{-1} d/dx (p x^{p-1})^{-1} applied to x^{q-1} * (smooth):
//   C_{l,j} = (q - p l + j) C_{l-1,j} + C_{l-1,j-1},
//   C_{l,0} = (q - p l) C_{l-1,0},  C_{l,l} = C_{l-1,l-1},  C_{0,0} = 1.
// Closed forms: C_{l,0} = prod_{s=1..l} (q - p s),  C_{l,l} = 1.
class CTable {
public:
    CTable(double p, double q, int L);

    double p() const { return p_; }
    double q() const { return q_; }
    int max_order() const { return L_; }
    double at(int l, int j) const;
    const std::vector<std::vector<double>>& rows() const { return rows_; }

private:
    double p_, q_;
    int L_;
    std::vector<std::vector<double>> rows_;
};

CTable c_table(double p, double q, int L);

// Minimal integration-by-parts order guaranteeing absolute integrability of
// the regularized tail: floor((q + tau)^+ / (p - 1 - delta)) + 1.
// Throws InadmissibleClass when delta >= p - 1.
int l_min(double p, double q, double tau, double delta);

// Cut-off radii and IBP order for the split into inner (phi) and tail (psi)
// pieces.  r0 >= 1 is a hypothesis of the IBP machinery.
struct SplitConfig {
    double r0 = 1.0;
    double r1 = 2.0;
    int l = -1;  // -1: use l_min(p, q, tau, delta) + 1

    SplitConfig() = default;
    SplitConfig(double r0_, double r1_, int l_ = -1) : r0(r0_), r1(r1_), l(l_) {
        if (!(r0 >= 1.0) || !(r1 > r0)) throw BadParams("SplitConfig: need 1 <= r0 < r1");
    }
};

enum class CutoffPart { inner, tail };

// Value at x of (L*)^l applied to x^{q-1} a(x) * (phi or psi)(x), where phi is
// the mollifier cut-off of SplitConfig and psi = 1 - phi:
//   (i/(lambda p))^l sum_{j=0..l} C_{l,j} x^{q-1-p l+j} (a * cutoff)^{(j)}(x).
// Derivatives come from jets (Leibniz), never finite differences.  The plus
// sign branch is computed; for a real amplitude the minus branch of the
// enclosing integral is its conjugate.
// Preconditions: x > 0; tail use requires l >= l_min; inner use l <= [q/p).
Complex apply_Lstar(double p, double q, double lambda, const Amplitude& a,
                    CutoffPart part, int l, double x, const SplitConfig& split);

}  // namespace oscatlas
