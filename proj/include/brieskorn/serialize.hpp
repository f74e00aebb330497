#pragma once

// JSON encodings. Big integers and rationals always travel as strings
// ("992", "383/1430") so consumers never round them through a double.

#include <string>
#include <vector>

#include "json.hpp"

#include "brieskorn/families.hpp"
#include "brieskorn/moduli.hpp"
#include "brieskorn/quasipoly.hpp"
#include "brieskorn/report.hpp"

namespace brieskorn {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json big_list(const std::vector<BigInt>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

inline BigInt big_from(const Json& j) { return BigInt(j.get<std::string>()); }

inline std::vector<BigInt> big_list_from(const Json& j) {
    std::vector<BigInt> out;
    for (const auto& v : j) out.push_back(big_from(v));
    return out;
}

inline Json values_of(const GcdGraph& g, const std::vector<std::size_t>& indices) {
    Json out = Json::array();
    for (auto i : indices) out.push_back(g.vertices[i]);
    return out;
}

}  // namespace detail

inline const char* to_string(SphereCondition c) {
    switch (c) {
        case SphereCondition::Cond1: return "cond1";
        case SphereCondition::Cond2: return "cond2";
        case SphereCondition::None: return "none";
    }
    return "none";
}

inline SphereCondition sphere_condition_from(const std::string& s) {
    if (s == "cond1") return SphereCondition::Cond1;
    if (s == "cond2") return SphereCondition::Cond2;
    if (s == "none") return SphereCondition::None;
    throw ArgumentError("unknown sphere condition '" + s + "'");
}

inline const char* to_string(ContactObstruction c) {
    switch (c) {
        case ContactObstruction::ObstructedOddDim: return "obstructed_odd_dim";
        case ContactObstruction::ObstructedIndivisible: return "obstructed_indivisible";
        case ContactObstruction::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline ContactObstruction contact_from(const std::string& s) {
    if (s == "obstructed_odd_dim") return ContactObstruction::ObstructedOddDim;
    if (s == "obstructed_indivisible") return ContactObstruction::ObstructedIndivisible;
    if (s == "inconclusive") return ContactObstruction::Inconclusive;
    throw ArgumentError("unknown contact obstruction '" + s + "'");
}

inline const char* to_string(KervaireGroup g) {
    switch (g) {
        case KervaireGroup::Trivial: return "trivial";
        case KervaireGroup::Order2: return "order2";
        case KervaireGroup::Open125: return "open125";
    }
    return "order2";
}

inline KervaireGroup kervaire_group_from(const std::string& s) {
    if (s == "trivial") return KervaireGroup::Trivial;
    if (s == "order2") return KervaireGroup::Order2;
    if (s == "open125") return KervaireGroup::Open125;
    throw ArgumentError("unknown Kervaire group '" + s + "'");
}

inline const char* to_string(SignatureMethod m) { return m == SignatureMethod::Brute ? "brute" : "kernel"; }

inline SignatureMethod signature_method_from(const std::string& s) {
    if (s == "brute") return SignatureMethod::Brute;
    if (s == "kernel") return SignatureMethod::Kernel;
    throw ArgumentError("unknown signature method '" + s + "'");
}

inline Json to_json(const SignatureResult& s) {
    return Json{{"tau", s.tau.str()},
                {"plus", s.plus_count.str()},
                {"minus", s.minus_count.str()},
                {"boundary", s.boundary_skipped.str()},
                {"method", to_string(s.method)}};
}

inline SignatureResult signature_from_json(const Json& j) {
    SignatureResult s;
    s.tau = detail::big_from(j.at("tau"));
    s.plus_count = detail::big_from(j.at("plus"));
    s.minus_count = detail::big_from(j.at("minus"));
    s.boundary_skipped = detail::big_from(j.at("boundary"));
    s.method = signature_method_from(j.at("method").get<std::string>());
    if (s.tau != s.plus_count - s.minus_count) throw ArgumentError("signature record with tau != plus - minus");
    return s;
}

inline Json to_json(const StabilityReport& s) {
    return Json{{"sum_recip", to_string(s.sum_recip)},
                {"log_fano", s.log_fano},
                {"k_semistable", s.k_semistable},
                {"k_polystable", s.k_polystable},
                {"se_metric", s.se_metric_exists},
                {"boundary", s.boundary},
                {"d", s.d.str()},
                {"weights", detail::big_list(s.weights)},
                {"index", s.index.str()},
                {"contact", to_string(s.contact)}};
}

inline StabilityReport stability_from_json(const Json& j) {
    StabilityReport s;
    s.sum_recip = parse_rational(j.at("sum_recip").get<std::string>());
    s.log_fano = j.at("log_fano").get<bool>();
    s.k_semistable = j.at("k_semistable").get<bool>();
    s.k_polystable = j.at("k_polystable").get<bool>();
    s.se_metric_exists = j.at("se_metric").get<bool>();
    s.boundary = j.at("boundary").get<bool>();
    s.d = detail::big_from(j.at("d"));
    s.weights = detail::big_list_from(j.at("weights"));
    s.index = detail::big_from(j.at("index"));
    s.contact = contact_from(j.at("contact").get<std::string>());
    return s;
}

inline Json to_json(const DiffeoClass& d) {
    if (const auto* even = std::get_if<EvenDiffeo>(&d))
        return Json{{"parity", "even"},
                    {"tau", even->tau.str()},
                    {"class_mod_bp", even->class_mod_bp.str()},
                    {"bp_order", even->bp.order.str()},
                    {"m", even->bp.m}};
    const auto& odd = std::get<OddDiffeo>(d);
    return Json{{"parity", "odd"}, {"arf", odd.arf}, {"group", to_string(odd.group)}};
}

inline DiffeoClass diffeo_from_json(const Json& j) {
    if (j.at("parity").get<std::string>() == "even") {
        EvenDiffeo e;
        e.tau = detail::big_from(j.at("tau"));
        e.class_mod_bp = detail::big_from(j.at("class_mod_bp"));
        e.bp.order = detail::big_from(j.at("bp_order"));
        e.bp.m = j.at("m").get<std::int64_t>();
        return e;
    }
    OddDiffeo o;
    o.arf = j.at("arf").get<int>();
    o.group = kervaire_group_from(j.at("group").get<std::string>());
    return o;
}

inline Json to_json(const GcdGraph& g) {
    Json components = Json::array();
    for (const auto& c : g.components) components.push_back(detail::values_of(g, c));
    return Json{{"components", components},
                {"isolated", detail::values_of(g, g.isolated)},
                {"ev_component", g.ev_component ? detail::values_of(g, g.components[*g.ev_component]) : Json()}};
}

inline Json to_json(const LinkReport& r) {
    Json j;
    j["input"] = r.a.original();
    j["vector"] = r.a.values();
    j["n"] = r.a.n();
    j["link_dimension"] = r.a.link_dimension();
    j["homotopy_sphere"] = r.sphere.is_homotopy_sphere;
    j["se_metric"] = r.stability.se_metric_exists;
    j["tau"] = r.signature ? Json(r.signature->tau.str()) : Json();
    const auto label = class_label(r);
    j["class"] = label ? Json(*label) : Json();
    j["graph"] = to_json(r.graph);
    j["sphere"] = Json{{"homotopy_sphere", r.sphere.is_homotopy_sphere},
                       {"condition", to_string(r.sphere.condition)},
                       {"reason", r.sphere.reason}};
    j["stability"] = to_json(r.stability);
    j["signature"] = r.signature ? to_json(*r.signature) : Json();
    j["diffeo"] = r.sphere.diffeo ? to_json(*r.sphere.diffeo) : Json();
    j["signature_source"] = r.signature_source;
    j["timing_ms"] = r.elapsed_ms;
    j["tool_version"] = kToolVersion;
    return j;
}

/// Inverse of to_json(LinkReport). The graph is rebuilt from the vector
/// and must match what was recorded.
inline LinkReport link_report_from_json(const Json& j) {
    ExponentVector a(j.at("input").get<std::vector<std::int64_t>>());
    LinkReport r{a, build_gcd_graph(a), {}, stability_from_json(j.at("stability")), std::nullopt, 0, "computed"};
    if (to_json(r.graph) != j.at("graph")) throw ArgumentError("link report graph does not match its vector");
    const auto& sphere = j.at("sphere");
    r.sphere.is_homotopy_sphere = sphere.at("homotopy_sphere").get<bool>();
    r.sphere.condition = sphere_condition_from(sphere.at("condition").get<std::string>());
    r.sphere.reason = sphere.at("reason").get<std::string>();
    if (!j.at("signature").is_null()) r.signature = signature_from_json(j.at("signature"));
    if (!j.at("diffeo").is_null()) r.sphere.diffeo = diffeo_from_json(j.at("diffeo"));
    r.signature_source = j.at("signature_source").get<std::string>();
    r.elapsed_ms = j.at("timing_ms").get<double>();
    return r;
}

inline Json to_json(const QuasiPolynomial& qp) {
    Json branches = Json::object();
    for (const auto& [res, coeffs] : qp.branches) {
        Json list = Json::array();
        for (const auto& c : coeffs) list.push_back(to_string(c));
        branches[std::to_string(res)] = list;
    }
    return Json{{"period", qp.period}, {"degree", qp.degree_bound}, {"branches", branches}};
}

inline QuasiPolynomial quasi_polynomial_from_json(const Json& j) {
    QuasiPolynomial qp;
    qp.period = j.at("period").get<std::int64_t>();
    qp.degree_bound = j.at("degree").get<int>();
    for (const auto& [key, list] : j.at("branches").items()) {
        Polynomial coeffs;
        for (const auto& c : list) coeffs.push_back(parse_rational(c.get<std::string>()));
        qp.branches.emplace(std::stoll(key), std::move(coeffs));
    }
    return qp;
}

inline Json to_json(const VerifyReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks)
        checks.push_back(Json{{"x", c.x},
                              {"predicted", c.predicted ? Json(to_string(*c.predicted)) : Json()},
                              {"actual", to_string(c.actual)},
                              {"match", c.match}});
    return Json{{"checks", checks}, {"all_match", report.all_match()}};
}

inline Json to_json(const FamilySpec& f) {
    Json params = Json::object();
    for (const auto& [name, value] : f.params) params[name] = value;
    Json derived{{"n", f.n}, {"d", f.d.str()}};
    if (f.s) derived["s"] = *f.s;
    if (f.p) derived["p"] = *f.p;
    if (f.q) derived["q"] = *f.q;
    if (f.l) derived["l"] = *f.l;
    if (f.index) derived["index"] = f.index->str();
    if (!f.chosen_primes.empty()) {
        derived["primes"] = f.chosen_primes;
        derived["prime_interval"] = Json::array({to_string(f.prime_interval_lo), to_string(f.prime_interval_hi)});
    }
    Json expect{{"condition", to_string(f.expected_condition)}};
    if (f.expected_arf) expect["arf"] = *f.expected_arf;
    if (f.expected_tau) expect["tau"] = f.expected_tau->str();
    if (f.expected_class) expect["class"] = f.expected_class->str();
    if (f.target_class) expect["target_class"] = f.target_class->str();
    if (f.bp) expect["bp_order"] = f.bp->str();
    if (f.contact_distinguishable) expect["contact_distinguishable"] = *f.contact_distinguishable;
    return Json{{"family", to_string(f.kind)}, {"params", params}, {"vector", f.vector}, {"derived", derived},
                {"expect", expect}};
}

inline Json to_json(const ModuliReport& r) {
    return Json{{"n", r.n},
                {"p", r.p},
                {"l", r.l},
                {"degree", r.degree.str()},
                {"weights", r.weights},
                {"h0_degree", r.h0_degree.str()},
                {"h0_weights", detail::big_list(r.h0_weights)},
                {"dimension_dp", r.dp_dimension.str()},
                {"dimension_closed_form", r.closed_form.str()},
                {"match", r.match()},
                {"in_regime", r.in_regime}};
}

inline Json to_json(const MeanEulerReport& r) {
    Json rows = Json::array();
    for (const auto& s : r.strata)
        rows.push_back(Json{{"orbit_space", s.label},
                            {"exponents", s.exponents},
                            {"period", s.period.str()},
                            {"chi_s1", to_string(s.chi)},
                            {"chi_from_model", s.chi_from_model},
                            {"frequency", s.frequency.str()}});
    Json model = Json::array();
    for (const auto& c : r.chi_p_model) model.push_back(to_string(c));
    return Json{{"n", r.n},
                {"p", r.p},
                {"l", r.l},
                {"mu_P", r.mu.str()},
                {"phi_2", r.phi_2.str()},
                {"chi_p_model", model},
                {"chi_p_description", r.chi_p_description},
                {"chi_p_approximate", r.chi_p_approximate},
                {"chi_p_value", to_string(r.chi_p_value)},
                {"chi_m", to_string(r.chi_m)},
                {"in_regime", r.in_regime},
                {"table", rows}};
}

}  // namespace brieskorn
