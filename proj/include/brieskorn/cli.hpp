#pragma once

// Command-line surface. Results go to `out` as JSON lines, diagnostics to
// `err`. Exit codes: 0 ok, 1 refusal, 2 usage error, 3 invariant violation.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "brieskorn/cache.hpp"
#include "brieskorn/families.hpp"
#include "brieskorn/serialize.hpp"
#include "brieskorn/moduli.hpp"
#include "brieskorn/quasipoly.hpp"
#include "brieskorn/scan.hpp"

namespace brieskorn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefusal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;

inline constexpr const char* kBudgetEnv = "BRIESKORN_ENUM_BUDGET";

inline std::uint64_t budget_from_env() {
    const char* raw = std::getenv(kBudgetEnv);
    if (!raw || !*raw) return kDefaultEnumerationBudget;
    try {
        std::size_t used = 0;
        const auto value = std::stoull(raw, &used);
        if (used != std::string(raw).size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ArgumentError(std::string(kBudgetEnv) + " must be a non-negative integer");
    }
}

inline Polynomial parse_polynomial(const std::string& text) {
    Polynomial out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw ArgumentError("--chi-poly needs at least one coefficient");
    return out;
}

/// tau of the exotic family member with parameter p.
inline BigInt exotic_family_tau(std::int64_t n, std::int64_t p, std::int64_t l) {
    std::vector<std::int64_t> a{2, 2};
    for (std::int64_t i = 0; i < n - 3; ++i) a.push_back(p);
    a.push_back(p + 1);
    a.push_back(p + l);
    return tau_kernel(ExponentVector(a)).tau;
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Brieskorn-Pham link classifier"};
    app.require_subcommand(1);

    std::vector<std::int64_t> exponents;
    auto* classify = app.add_subcommand("classify", "classify the link L(a)");
    classify->add_option("exponents", exponents, "a_0 ... a_n")->required();

    std::string method = "kernel";
    std::vector<std::int64_t> tau_exponents;
    auto* tau = app.add_subcommand("tau", "signature of the Milnor fiber");
    tau->add_option("--method", method)->check(CLI::IsMember({"brute", "kernel"}));
    tau->add_option("exponents", tau_exponents, "a_0 ... a_n")->required();

    std::string qp_family = "exotic";
    std::int64_t qp_m = 2, qp_k = 1, qp_samples = 7, qp_verify_count = 3;
    std::optional<std::int64_t> qp_l, qp_degree, qp_max_degree;
    auto* qpfit = app.add_subcommand("qpfit", "fit tau(a_p) as a quasi-polynomial in p");
    qpfit->add_option("--family", qp_family)->check(CLI::IsMember({"exotic"}));
    qpfit->add_option("--m", qp_m)->required();
    qpfit->add_option("--k", qp_k);
    qpfit->add_option("--l", qp_l, "defaults to 6k-3");
    qpfit->add_option("--samples", qp_samples, "fit on q = 1..samples, p = q l(l-1) + 2");
    qpfit->add_option("--verify", qp_verify_count, "held-out q values after the samples");
    qpfit->add_option("--degree", qp_degree, "starting degree bound (default n)");
    qpfit->add_option("--max-degree", qp_max_degree, "largest degree tried (default n+2)");

    auto* family = app.add_subcommand("family", "generate a family member");
    family->require_subcommand(1);
    bool family_classify = false;
    family->add_flag("--classify", family_classify, "also classify the generated link");
    std::int64_t f_m = 2, f_k = 1, f_pn = 0, f_q = 1;
    std::optional<std::int64_t> f_l;
    int f_sign = -1;
    auto* fam_odd = family->add_subcommand("odd", "dimension 4m+1");
    fam_odd->add_option("--m", f_m)->required();
    fam_odd->add_option("--pn", f_pn)->required();
    auto* fam_std = family->add_subcommand("standard", "standard spheres, dimension 4m-1");
    fam_std->add_option("--m", f_m)->required();
    fam_std->add_option("--k", f_k)->required();
    auto* fam_exo = family->add_subcommand("exotic", "exotic spheres, dimension 4m-1");
    fam_exo->add_option("--m", f_m)->required();
    fam_exo->add_option("--k", f_k)->required();
    fam_exo->add_option("--l", f_l, "defaults to the choice making m not divide I_a");
    fam_exo->add_option("--q", f_q)->required();
    auto* fam_ref = family->add_subcommand("ref", "Brieskorn reference spheres");
    fam_ref->add_option("--m", f_m)->required();
    fam_ref->add_option("--k", f_k)->required();
    fam_ref->add_option("--sign", f_sign)->check(CLI::IsMember({-1, 1}));
    for (auto* sub : {fam_odd, fam_std, fam_exo, fam_ref}) sub->add_flag("--classify", family_classify);

    std::int64_t bp_m = 2;
    auto* bp = app.add_subcommand("bp-order", "order of bP_{4m}");
    bp->add_option("--m", bp_m)->required();

    std::int64_t mo_n = 6, mo_p = 8, mo_l = 3;
    auto* moduli = app.add_subcommand("moduli", "moduli dimension for the exotic family");
    moduli->add_option("--n", mo_n)->required();
    moduli->add_option("--p", mo_p)->required();
    moduli->add_option("--l", mo_l)->required();

    std::int64_t eu_n = 6, eu_p = 8, eu_l = 3;
    std::optional<std::string> eu_chi;
    auto* euler = app.add_subcommand("euler", "mean Euler characteristic table");
    euler->add_option("--n", eu_n)->required();
    euler->add_option("--p", eu_p)->required();
    euler->add_option("--l", eu_l)->required();
    euler->add_option("--chi-poly", eu_chi, "coefficients c0,c1,... of chi^{S^1}_p in p");

    std::int64_t sc_n = 4, sc_amax = 2;
    std::string sc_filter = "sphere";
    std::optional<std::string> sc_cache;
    bool sc_paranoid = false;
    unsigned sc_jobs = 1;
    auto* scan_cmd = app.add_subcommand("scan", "enumerate sorted vectors and classify");
    scan_cmd->add_option("--n", sc_n)->required();
    scan_cmd->add_option("--amax", sc_amax)->required();
    scan_cmd->add_option("--filter", sc_filter)->check(CLI::IsMember({"sphere", "se-sphere"}));
    scan_cmd->add_option("--cache", sc_cache);
    scan_cmd->add_flag("--paranoid", sc_paranoid, "recompute and compare cache hits");
    scan_cmd->add_option("--jobs", sc_jobs)->check(CLI::PositiveNumber);

    std::vector<std::string> argv_storage{"brieskorn"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    auto emit = [&](const Json& j) { out << j.dump() << '\n'; };

    try {
        ClassifyOptions options;
        options.budget = budget_from_env();

        if (*classify) {
            emit(to_json(classify_link(ExponentVector(exponents), options)));
        } else if (*tau) {
            options.method = method == "brute" ? TauMethod::Brute : TauMethod::Kernel;
            const ExponentVector a(tau_exponents);
            const auto sig = compute_signature(a, options);
            Json j{{"vector", a.values()}};
            const Json sig_json = to_json(sig);
            for (const auto& [key, value] : sig_json.items()) j[key] = value;
            const auto sphere = classify_sphere(a);
            j["homotopy_sphere"] = sphere.is_homotopy_sphere;
            if (sphere.is_homotopy_sphere && a.n() % 2 == 0) {
                if (sig.boundary_skipped != 0) throw InvariantViolation("homotopy sphere with integral lattice points");
                const auto cls = diffeo_class_even(a.n(), sig.tau);
                j["class"] = cls.class_mod_bp.str() + " mod " + cls.bp.order.str();
            }
            emit(j);
        } else if (*qpfit) {
            const std::int64_t n = 2 * qp_m;
            const std::int64_t l = qp_l.value_or(6 * qp_k - 3);
            if (qp_m < 2 || l < 2 || qp_samples < 1 || qp_verify_count < 0)
                throw ArgumentError("qpfit needs m >= 2, l >= 2, samples >= 1, verify >= 0");
            const std::int64_t period = l * (l - 1);
            std::vector<std::pair<std::int64_t, Rational>> samples;
            Json sample_json = Json::array();
            for (std::int64_t q = 1; q <= qp_samples; ++q) {
                const std::int64_t p = q * period + 2;
                const BigInt t = exotic_family_tau(n, p, l);
                samples.emplace_back(p, Rational(t));
                sample_json.push_back(Json{{"p", p}, {"tau", t.str()}});
            }
            const int degree = static_cast<int>(qp_degree.value_or(n));
            const int max_degree = static_cast<int>(qp_max_degree.value_or(n + 2));
            const auto qp = qp_fit_raising(samples, period, degree, max_degree);
            std::vector<std::int64_t> held_out;
            for (std::int64_t q = qp_samples + 1; q <= qp_samples + qp_verify_count; ++q) held_out.push_back(q * period + 2);
            const auto report = qp_verify(
                qp, [&](std::int64_t p) { return Rational(exotic_family_tau(n, p, l)); }, held_out);
            emit(Json{{"family", qp_family},
                      {"m", qp_m},
                      {"k", qp_k},
                      {"l", l},
                      {"n", n},
                      {"samples", sample_json},
                      {"fitted_degree", qp.fitted_degree()},
                      {"quasi_polynomial", to_json(qp)},
                      {"verify", to_json(report)}});
        } else if (*family) {
            std::optional<FamilySpec> spec;
            if (*fam_odd) spec = gen_odd_dim(f_m, f_pn);
            if (*fam_std) spec = gen_standard(f_m, f_k);
            if (*fam_exo) spec = gen_exotic(f_m, f_k, f_l.value_or(exotic_l_for(f_m, f_k, f_q)), f_q);
            if (*fam_ref) spec = brieskorn_reference(f_m, f_k, f_sign);
            Json j = to_json(*spec);
            if (family_classify) j["report"] = to_json(classify_link(spec->exponents(), options));
            emit(j);
        } else if (*bp) {
            const auto order = bp_order(bp_m);
            emit(Json{{"m", order.m}, {"order", order.order.str()}});
        } else if (*moduli) {
            const auto report = moduli_dimension(mo_n, mo_p, mo_l);
            emit(to_json(report));
            if (report.in_regime && !report.match()) {
                err << "moduli dimension: DP and closed form disagree\n";
                return kExitInvariant;
            }
        } else if (*euler) {
            std::optional<Polynomial> chi;
            if (eu_chi) chi = parse_polynomial(*eu_chi);
            emit(to_json(mean_euler(eu_n, eu_p, eu_l, chi)));
        } else if (*scan_cmd) {
            ScanOptions so;
            so.n = sc_n;
            so.amax = sc_amax;
            so.filter = sc_filter == "se-sphere" ? ScanFilter::SeSphere : ScanFilter::Sphere;
            so.classify = options;
            so.paranoid = sc_paranoid;
            so.jobs = sc_jobs;
            std::optional<ScanCache> cache;
            if (sc_cache) {
                cache.emplace(*sc_cache);
                so.cache = &*cache;
            }
            const auto stats = scan(so, [&](const LinkReport& r) { emit(to_json(r)); });
            err << "scan: visited " << stats.visited << ", emitted " << stats.emitted << ", cache hits "
                << stats.cache_hits << "\n";
        }
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Refusal& e) {
        err << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const OverflowError& e) {
        err << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const NotQuasiPolynomial& e) {
        err << "refused: " << e.what() << "\n";
        return kExitRefusal;
    }
    return kExitOk;
}

}  // namespace brieskorn::cli
