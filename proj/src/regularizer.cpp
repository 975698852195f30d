#include "oscatlas/regularizer.hpp"

#include <cmath>

namespace oscatlas {

CTable::CTable(double p, double q, int L) : p_(p), q_(q), L_(L) {
    if (L < 0) throw BadParams("CTable: need L >= 0");
    rows_.resize(static_cast<size_t>(L) + 1);
    rows_[0] = {1.0};
    for (int l = 1; l <= L; ++l) {
        auto& prev = rows_[static_cast<size_t>(l) - 1];
        auto& row = rows_[static_cast<size_t>(l)];
        row.assign(static_cast<size_t>(l) + 1, 0.0);
        row[0] = (q - p * l) * prev[0];
        for (int j = 1; j <= l - 1; ++j)
            row[static_cast<size_t>(j)] =
                (q - p * l + j) * prev[static_cast<size_t>(j)] + prev[static_cast<size_t>(j) - 1];
        row[static_cast<size_t>(l)] = prev[static_cast<size_t>(l) - 1];
    }
}

double CTable::at(int l, int j) const {
    if (l < 0 || l > L_ || j < 0 || j > l) throw BadParams("CTable::at: index out of range");
    return rows_[static_cast<size_t>(l)][static_cast<size_t>(j)];
}

CTable c_table(double p, double q, int L) {
    if (!(p > 0.0) || !(q > 0.0)) throw BadParams("c_table: need p, q > 0");
    return CTable(p, q, L);
}

int l_min(double p, double q, double tau, double delta) {
    if (!(delta < p - 1.0))
        throw InadmissibleClass("l_min: delta >= p - 1, amplitude class inadmissible");
    double t = positive_part(q + tau) / (p - 1.0 - delta);
    return static_cast<int>(gauss_floor(t)) + 1;
}

Complex apply_Lstar(double p, double q, double lambda, const Amplitude& a,
                    CutoffPart part, int l, double x, const SplitConfig& split) {
    if (!(x > 0.0)) throw DomainError("apply_Lstar: need x > 0");
    if (l < 0) throw OrderError("apply_Lstar: need l >= 0");
    // The pointwise operator is defined for every l; the order bounds matter
    // where integrals are formed.  Only the inner-piece bound l <= [q/p) is
    // enforced here, since exceeding it voids the boundary-term cancellation.
    if (part == CutoffPart::inner && l > 0) {
        long l0 = strict_floor(q / p);
        if (l > l0) throw OrderError("apply_Lstar: inner use needs l <= [q/p)");
    }

    // (a * cutoff)^{(j)}(x) for j = 0..l from the product jet.
    Amplitude phi = narrow_bump(split.r0, split.r1);
    Jet cut = (part == CutoffPart::inner)
                  ? phi.jet_at(x, l)
                  : jet_sub(Jet::constant(1.0, l), phi.jet_at(x, l));
    Jet prod = jet_mul(a.jet_at(x, l), cut);

    CTable table(p, q, l);
    Complex factor = std::pow(Complex(0.0, 1.0) / (lambda * p), static_cast<double>(l));
    Complex sum(0.0, 0.0);
    double fact = 1.0;
    for (int j = 0; j <= l; ++j) {
        if (j >= 2) fact *= j;
        double deriv_j = prod[j] * fact;  // j! * jet coefficient
        sum += table.at(l, j) * std::pow(x, q - 1.0 - p * l + j) * deriv_j;
    }
    return factor * sum;
}

}  // namespace oscatlas
