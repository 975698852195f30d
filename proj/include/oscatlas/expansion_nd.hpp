#pragma once

#include <vector>

#include "oscatlas/amplitude.hpp"
#include "oscatlas/expansion.hpp"
#include "oscatlas/types.hpp"

namespace oscatlas {

// Phase i lambda sum_j s_j x_j^{p_j}; full_space integration demands integer
// powers.
struct PhaseND {
    std::vector<double> powers;
    std::vector<Sign> signs;
    bool full_space = false;
};

// Multi-indices alpha with sum_j (alpha_j + 1)/p_j strictly below the
// remainder threshold (N + 1 - max_j (p_j - [p_j])) / max_j p_j.
struct IndexSet {
    double threshold = 0.0;
    std::vector<std::vector<int>> members;  // sorted: exponent, then lexicographic
};

IndexSet omega_set(const std::vector<double>& p, int N);

// Terms over omega_set(p, N) with product coefficients: per-axis generalized
// Fresnel values on the orthant, per-axis full-line coefficients on R^n.
Expansion expand_nd(const PhaseND& phase, const AmplitudeND& a, int N);

enum class PresetKind { A, E6, E8 };

// Normal-form phases: A_k: (k+1, 2, ..., 2); E6: (3, 4, 2, ..., 2) with
// sign_1 = +; E8: (3, 5, 2, ..., 2) with sign_1 = sign_2 = +.
PhaseND preset_phase(PresetKind kind, int k, int n, std::vector<Sign> signs);

}  // namespace oscatlas
