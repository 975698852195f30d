#pragma once

#include <string>
#include <vector>

#include "oscatlas/amplitude.hpp"
#include "oscatlas/expansion.hpp"
#include "oscatlas/expansion_nd.hpp"
#include "oscatlas/oracle.hpp"
#include "oscatlas/types.hpp"

namespace oscatlas {

struct LambdaGrid {
    double start = 16.0;
    double ratio = 2.0;
    int count = 9;

    std::vector<double> values() const;
};

enum class CaseKind {
    monomial_half,
    monomial_full,
    analytic_half,
    analytic_full,
    nd_orthant,
    nd_full
};

struct CampaignCase {
    std::string name;
    CaseKind kind = CaseKind::monomial_full;
    double power = 2.0;                // p (or m) for one-dimensional kinds
    Sign sign = Sign::plus;
    std::vector<double> powers;        // n-dimensional kinds
    std::vector<Sign> signs;
    std::string preset;                // A<k> | E6 | E8 (overrides powers)
    std::string amplitude_spec;        // parsed by make_amplitude / make_amplitude_nd
    std::vector<double> phase_coeffs;  // analytic kinds: a_1, a_2, ...
    bool phase_exp = false;            // analytic kinds: a_j = 1/j!
    std::vector<int> Ns{1};
    LambdaGrid grid;                   // per-case grid (defaults from campaign)
    OracleConfig oracle;               // per-case oracle config
};

struct Campaign {
    std::vector<CampaignCase> cases;
    LambdaGrid grid;
    OracleConfig oracle;
    double slope_tolerance = 0.2;
    std::string out_dir;
};

// Parses the self-contained campaign file: [section] headers with key = value
// lines; [case] opens a new case; [case.oracle] and [case.lambda] override the
// campaign-level settings for the current case.  Throws ConfigParse.
Campaign parse_campaign_file(const std::string& path);

// One-dimensional amplitude from its textual spec: atoms gaussian,
// constant_one, zero, bump(r0,r1), narrow_bump(r0,r1), poly_gaussian(c...),
// rational_decay(s), joined by '*' for pointwise products.
Amplitude make_amplitude(const std::string& spec);

// Tensor amplitude: one-dimensional specs joined by '|'.
AmplitudeND make_amplitude_nd(const std::string& spec);

struct SlopePoint {
    double lambda = 0.0;
    Complex oracle{0.0, 0.0};
    Complex expansion{0.0, 0.0};
    double abs_error = 0.0;
    double err_estimate = 0.0;
    bool usable = false;
};

struct SlopeReport {
    std::string case_id;
    int N = 0;
    double guaranteed_exponent = 0.0;
    double fitted_slope = 0.0;
    double slope_tolerance = 0.0;
    // pass | fail | inconclusive | below_noise_floor | error
    std::string status;
    std::string message;
    std::vector<SlopePoint> points;
};

// Builds the expansion a campaign case verifies for a given N.
Expansion expansion_for_case(const CampaignCase& c, int N);

// Oracle evaluation of the case integral at one lambda.
OracleResult oracle_for_case(const CampaignCase& c, double lambda);

// Runs every (case, lambda) evaluation, up to `threads` concurrently, and
// assembles slope reports in declaration order.
std::vector<SlopeReport> run_campaign(const Campaign& campaign, int threads);

// Per-(case, N) CSV tables plus summary.json under campaign.out_dir.
void write_campaign_reports(const Campaign& campaign,
                            const std::vector<SlopeReport>& reports);

// 0 when every fitted case passes; failures and errors give 1.
int campaign_exit_code(const std::vector<SlopeReport>& reports);

int env_thread_count();

}  // namespace oscatlas
