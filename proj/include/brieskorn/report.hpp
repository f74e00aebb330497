#pragma once

// One-stop classification of a link: sphere status, stability, signature,
// diffeomorphism class.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brieskorn/lattice.hpp"
#include "brieskorn/stability.hpp"
#include "brieskorn/topology.hpp"

namespace brieskorn {

inline constexpr const char* kToolVersion = "0.1.0";

enum class TauMethod { Kernel, Brute };

struct ClassifyOptions {
    TauMethod method = TauMethod::Kernel;
    std::uint64_t budget = kDefaultEnumerationBudget;
    bool signature_for_non_spheres = true;  // even n only
    KernelOptions kernel{};
};

struct LinkReport {
    ExponentVector a;
    GcdGraph graph;
    SphereClassification sphere;
    StabilityReport stability;
    std::optional<SignatureResult> signature;  // even n
    double elapsed_ms = 0;
    std::string signature_source = "computed";  // or "cache"
};

inline SignatureResult compute_signature(const ExponentVector& a, const ClassifyOptions& options) {
    return options.method == TauMethod::Brute ? tau_brute(a, options.budget) : tau_kernel(a, options.kernel);
}

/// Attaches the diffeomorphism class once the signature (even n) is known.
/// A sphere whose signature is not a multiple of 8, or which has boundary
/// lattice points, is a counting bug.
inline void attach_diffeo(LinkReport& report) {
    if (!report.sphere.is_homotopy_sphere) return;
    if (report.a.n() % 2 == 1) {
        report.sphere.diffeo = arf_class(report.a);
        return;
    }
    if (!report.signature) return;
    if (report.signature->boundary_skipped != 0)
        throw InvariantViolation("homotopy sphere with " + report.signature->boundary_skipped.str() +
                                 " integral lattice points");
    report.sphere.diffeo = diffeo_class_even(report.a.n(), report.signature->tau);
}

inline LinkReport classify_link(const ExponentVector& a, const ClassifyOptions& options = {},
                                std::optional<SignatureResult> known_signature = std::nullopt) {
    const auto start = std::chrono::steady_clock::now();
    LinkReport report{a, build_gcd_graph(a), {}, k_stability(a), std::nullopt, 0, "computed"};
    report.sphere = classify_sphere(report.graph);
    if (a.n() % 2 == 0 && (report.sphere.is_homotopy_sphere || options.signature_for_non_spheres)) {
        if (known_signature) {
            report.signature = std::move(known_signature);
            report.signature_source = "cache";
        } else {
            report.signature = compute_signature(a, options);
        }
    }
    attach_diffeo(report);
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// "c mod |bP|" for even-n spheres.
inline std::optional<std::string> class_label(const LinkReport& report) {
    if (!report.sphere.diffeo) return std::nullopt;
    if (const auto* even = std::get_if<EvenDiffeo>(&*report.sphere.diffeo))
        return even->class_mod_bp.str() + " mod " + even->bp.order.str();
    return std::nullopt;
}

}  // namespace brieskorn
