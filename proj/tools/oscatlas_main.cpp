#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscatlas/campaign.hpp"
#include "oscatlas/expansion.hpp"
#include "oscatlas/expansion_nd.hpp"
#include "oscatlas/fresnel.hpp"
#include "oscatlas/jet.hpp"
#include "oscatlas/special.hpp"
#include "oscatlas/types.hpp"

namespace {

using namespace oscatlas;
using nlohmann::ordered_json;

Sign sign_from(const std::string& s) {
    if (s == "+" || s == "plus") return Sign::plus;
    if (s == "-" || s == "minus") return Sign::minus;
    throw ConfigParse("bad sign '" + s + "' (use + or -)");
}

void print_complex(const Complex& z, const std::string& format) {
    if (format == "json") {
        ordered_json j;
        j["re"] = z.real();
        j["im"] = z.imag();
        std::cout << j.dump() << '\n';
    } else if (format == "csv") {
        std::cout << z.real() << ',' << z.imag() << '\n';
    } else {
        std::printf("%.15g %+.15gi\n", z.real(), z.imag());
    }
}

ordered_json expansion_to_json(const Expansion& e) {
    ordered_json j;
    j["terms"] = ordered_json::array();
    for (const auto& t : e.terms) {
        ordered_json jt;
        jt["exponent"] = t.exponent;
        jt["re"] = t.coeff.real();
        jt["im"] = t.coeff.imag();
        if (t.index.size() == 1) jt["k"] = t.index[0];
        else jt["alpha"] = t.index;
        j["terms"].push_back(jt);
    }
    j["remainder_exponent"] = e.remainder_exponent;
    j["meta"] = {{"form", e.meta.form},
                 {"power", e.meta.power},
                 {"N", e.meta.N},
                 {"sign", std::string(1, sign_char(e.meta.sign))}};
    return j;
}

void print_expansion(const Expansion& e, const std::string& format) {
    if (format == "json") {
        std::cout << expansion_to_json(e).dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        std::cout << "index,exponent,re,im\n";
        for (const auto& t : e.terms) {
            std::string idx;
            for (size_t i = 0; i < t.index.size(); ++i)
                idx += (i ? ";" : "") + std::to_string(t.index[i]);
            std::printf("%s,%.17g,%.17g,%.17g\n", idx.c_str(), t.exponent, t.coeff.real(),
                        t.coeff.imag());
        }
        std::printf("# remainder_exponent,%.17g\n", e.remainder_exponent);
        return;
    }
    std::printf("%s expansion, N = %d\n", e.meta.form.c_str(), e.meta.N);
    for (const auto& t : e.terms) {
        std::string idx;
        for (size_t i = 0; i < t.index.size(); ++i)
            idx += (i ? "," : "") + std::to_string(t.index[i]);
        std::printf("  [%s]  lambda^-%-10.6g  %.15g %+.15gi\n", idx.c_str(), t.exponent,
                    t.coeff.real(), t.coeff.imag());
    }
    std::printf("  remainder decay: lambda^-%.6g\n", e.remainder_exponent);
}

int run(int argc, char** argv) {
    CLI::App app{"oscatlas: generalized Fresnel integrals and asymptotic expansions of "
                 "oscillatory integrals, with numerical verification"};
    app.require_subcommand(1);
    std::string format = "pretty";
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: pretty|json|csv")
            ->check(CLI::IsMember({"pretty", "json", "csv"}));
    };

    // fresnel
    auto* cmd_fresnel = app.add_subcommand("fresnel", "generalized Fresnel integral value");
    add_format(cmd_fresnel);
    double fp = 2.0, fq = 1.0, fqi = 0.0;
    std::string fsign = "+";
    cmd_fresnel->add_option("--p", fp, "phase power p > 0")->required();
    cmd_fresnel->add_option("--q", fq, "exponent parameter (real part)")->required();
    cmd_fresnel->add_option("--qi", fqi, "exponent parameter (imaginary part)");
    cmd_fresnel->add_option("--sign", fsign, "+ or -");

    // coeff
    auto* cmd_coeff = app.add_subcommand("coeff", "full-line expansion coefficients");
    add_format(cmd_coeff);
    int cm = 2, ck = 0;
    std::string csign = "+", ckind = "full";
    cmd_coeff->add_option("--m", cm, "integer power m >= 1")->required();
    cmd_coeff->add_option("--k", ck, "term index k >= 0")->required();
    cmd_coeff->add_option("--sign", csign, "+ or -");
    cmd_coeff->add_option("--kind", ckind, "full|minus|reflected")
        ->check(CLI::IsMember({"full", "minus", "reflected"}));

    // expand
    auto* cmd_expand = app.add_subcommand("expand", "asymptotic expansion term list");
    add_format(cmd_expand);
    std::string ekind = "full", eamp = "gaussian", esign = "+", esigns, epowers,
                ephase_coeffs;
    double ep = 2.0;
    int eN = 3;
    cmd_expand->add_option("--kind", ekind,
                           "half|full|analytic_half|analytic_full|nd_orthant|nd_full");
    cmd_expand->add_option("--p,--m", ep, "phase power (one-dimensional kinds)");
    cmd_expand->add_option("--powers", epowers, "comma-separated powers (nd kinds)");
    cmd_expand->add_option("--signs", esigns, "comma-separated signs (nd kinds)");
    cmd_expand->add_option("--sign", esign, "+ or -");
    cmd_expand->add_option("--amplitude", eamp,
                           "amplitude spec, e.g. gaussian, bump(1,2), "
                           "poly_gaussian(0,1)*gaussian; '|'-separated for nd");
    cmd_expand->add_option("--N", eN, "number of terms");
    cmd_expand->add_option("--phase-coeffs", ephase_coeffs,
                           "analytic kinds: a_1,a_2,... or 'exp' for a_j = 1/j!");

    // omega
    auto* cmd_omega = app.add_subcommand("omega", "index set of the n-dimensional expansion");
    add_format(cmd_omega);
    std::string opowers;
    int oN = 1;
    cmd_omega->add_option("--powers", opowers, "comma-separated powers")->required();
    cmd_omega->add_option("--N", oN, "term-count parameter")->required();

    // reverse
    auto* cmd_reverse = app.add_subcommand("reverse", "compositional inverse of a jet");
    add_format(cmd_reverse);
    std::string rcoeffs;
    int rorder = -1;
    cmd_reverse->add_option("--coeffs", rcoeffs, "jet coefficients c0,c1,...")->required();
    cmd_reverse->add_option("--order", rorder, "pad/truncate to this order");

    // lambertw
    auto* cmd_lambert = app.add_subcommand("lambertw", "principal Lambert W branch");
    add_format(cmd_lambert);
    double ly = 1.0;
    cmd_lambert->add_option("--y", ly, "argument y >= -1/e")->required();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a verification campaign");
    std::string campaign_path, out_dir;
    cmd_verify->add_option("--campaign", campaign_path, "campaign file")->required();
    cmd_verify->add_option("--out", out_dir, "output directory for CSV/JSON reports");

    CLI11_PARSE(app, argc, argv);

    if (cmd_fresnel->parsed()) {
        try {
            Complex v = fresnel_general(fp, Complex(fq, fqi), sign_from(fsign));
            print_complex(v, format);
        } catch (const PoleError& e) {
            ordered_json j;
            j["error"] = "pole";
            j["detail"] = e.what();
            j["pole_q"] = fp * e.pole;  // q = p * (nearest non-positive integer)
            std::cerr << j.dump() << '\n';
            return 1;
        }
        return 0;
    }
    if (cmd_coeff->parsed()) {
        Complex v;
        if (ckind == "full") v = coeff_full_line(cm, ck, sign_from(csign));
        else if (ckind == "minus") v = coeff_minus(cm, ck, sign_from(csign));
        else v = fresnel_reflected(cm, ck, sign_from(csign));
        print_complex(v, format);
        return 0;
    }
    if (cmd_expand->parsed()) {
        CampaignCase c;
        c.name = "cli";
        c.kind = [&] {
            if (ekind == "half") return CaseKind::monomial_half;
            if (ekind == "full") return CaseKind::monomial_full;
            if (ekind == "analytic_half") return CaseKind::analytic_half;
            if (ekind == "analytic_full") return CaseKind::analytic_full;
            if (ekind == "nd_orthant") return CaseKind::nd_orthant;
            if (ekind == "nd_full") return CaseKind::nd_full;
            throw ConfigParse("unknown expand kind '" + ekind + "'");
        }();
        c.power = ep;
        c.sign = sign_from(esign);
        c.amplitude_spec = eamp;
        if (!epowers.empty())
            for (auto& tok : CLI::detail::split(epowers, ','))
                c.powers.push_back(std::stod(tok));
        if (!esigns.empty())
            for (auto& tok : CLI::detail::split(esigns, ','))
                c.signs.push_back(sign_from(tok));
        if (ephase_coeffs == "exp") c.phase_exp = true;
        else if (!ephase_coeffs.empty())
            for (auto& tok : CLI::detail::split(ephase_coeffs, ','))
                c.phase_coeffs.push_back(std::stod(tok));
        print_expansion(expansion_for_case(c, eN), format);
        return 0;
    }
    if (cmd_omega->parsed()) {
        std::vector<double> powers;
        for (auto& tok : CLI::detail::split(opowers, ','))
            powers.push_back(std::stod(tok));
        IndexSet set = omega_set(powers, oN);
        if (format == "json") {
            ordered_json j;
            j["threshold"] = set.threshold;
            j["members"] = set.members;
            std::cout << j.dump(2) << '\n';
        } else {
            std::printf("threshold %.15g, %zu members\n", set.threshold,
                        set.members.size());
            for (const auto& alpha : set.members) {
                std::printf("  (");
                for (size_t i = 0; i < alpha.size(); ++i)
                    std::printf(i ? ",%d" : "%d", alpha[i]);
                std::printf(")\n");
            }
        }
        return 0;
    }
    if (cmd_reverse->parsed()) {
        std::vector<double> coeffs;
        for (auto& tok : CLI::detail::split(rcoeffs, ','))
            coeffs.push_back(std::stod(tok));
        if (rorder > 0) coeffs.resize(static_cast<size_t>(rorder) + 1, 0.0);
        Jet f = Jet::from_coeffs(coeffs);
        Jet phi = jet_revert(f);
        if (format == "json") {
            ordered_json j;
            j["coeffs"] = phi.coeffs();
            std::cout << j.dump() << '\n';
        } else {
            for (int k = 0; k <= phi.order(); ++k)
                std::printf(k ? " %.15g" : "%.15g", phi[k]);
            std::printf("\n");
        }
        return 0;
    }
    if (cmd_lambert->parsed()) {
        double w = lambert_w0(ly);
        if (format == "json") {
            ordered_json j;
            j["w0"] = w;
            j["residual"] = w * std::exp(w) - ly;
            std::cout << j.dump() << '\n';
        } else {
            std::printf("%.17g\n", w);
        }
        return 0;
    }
    if (cmd_verify->parsed()) {
        Campaign camp = parse_campaign_file(campaign_path);
        if (!out_dir.empty()) camp.out_dir = out_dir;
        std::vector<SlopeReport> reports = run_campaign(camp, env_thread_count());
        write_campaign_reports(camp, reports);
        for (const auto& rep : reports) {
            std::printf("%-32s N=%d  %-18s guaranteed %.4g  fitted %.4g\n",
                        rep.case_id.c_str(), rep.N, rep.status.c_str(),
                        rep.guaranteed_exponent, rep.fitted_slope);
            if (!rep.message.empty()) std::printf("    %s\n", rep.message.c_str());
        }
        return campaign_exit_code(reports);
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigParse& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
