#pragma once

// Exponent vectors, the gcd graph G(a), and the homotopy-sphere /
// Kervaire / bP classification of Brieskorn-Pham links.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "brieskorn/arith.hpp"
#include "brieskorn/errors.hpp"

namespace brieskorn {

/// a = (a_0, ..., a_n), n >= 3, every a_i >= 2. Kept sorted ascending;
/// the order the caller supplied survives only for echoing in reports.
class ExponentVector {
public:
    explicit ExponentVector(std::vector<std::int64_t> entries) : original_(std::move(entries)) {
        if (original_.size() < 4)
            throw ArgumentError("exponent vector needs at least 4 entries (n >= 3), got " +
                                std::to_string(original_.size()));
        for (auto v : original_)
            if (v < 2) throw ArgumentError("every exponent must be >= 2, got " + std::to_string(v));
        sorted_ = original_;
        std::sort(sorted_.begin(), sorted_.end());
    }

    /// n, so the vector has n + 1 entries.
    [[nodiscard]] std::int64_t n() const { return static_cast<std::int64_t>(sorted_.size()) - 1; }
    [[nodiscard]] std::int64_t link_dimension() const { return 2 * n() - 1; }
    [[nodiscard]] const std::vector<std::int64_t>& values() const { return sorted_; }
    [[nodiscard]] const std::vector<std::int64_t>& original() const { return original_; }
    [[nodiscard]] std::int64_t operator[](std::size_t i) const { return sorted_[i]; }
    [[nodiscard]] std::size_t size() const { return sorted_.size(); }
    [[nodiscard]] std::int64_t largest() const { return sorted_.back(); }

    friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
        return a.sorted_ == b.sorted_;
    }

private:
    std::vector<std::int64_t> original_;
    std::vector<std::int64_t> sorted_;
};

struct GcdGraph {
    std::vector<std::int64_t> vertices;
    std::vector<std::vector<std::size_t>> components;  // vertex indices, each ascending
    std::vector<std::size_t> isolated;
    std::optional<std::size_t> ev_component;  // index into components; empty if all entries odd

    [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const {
        return i != j && std::gcd(vertices[i], vertices[j]) > 1;
    }
};

inline GcdGraph build_gcd_graph(const ExponentVector& a) {
    GcdGraph g;
    g.vertices = a.values();
    const std::size_t count = g.vertices.size();

    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<bool> has_edge(count, false);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            if (std::gcd(g.vertices[i], g.vertices[j]) > 1) {
                has_edge[i] = has_edge[j] = true;
                parent[find(i)] = find(j);
            }

    std::vector<std::optional<std::size_t>> slot(count);
    for (std::size_t v = 0; v < count; ++v) {
        auto root = find(v);
        if (!slot[root]) {
            slot[root] = g.components.size();
            g.components.emplace_back();
        }
        g.components[*slot[root]].push_back(v);
        if (!has_edge[v]) g.isolated.push_back(v);
        if (g.vertices[v] % 2 == 0) g.ev_component = *slot[root];
    }
    return g;
}

enum class SphereCondition { Cond1, Cond2, None };

enum class KervaireGroup { Trivial, Order2, Open125 };

struct EvenDiffeo {
    BigInt tau;
    BigInt class_mod_bp;  // in [0, |bP_{4m}|)
    BPOrder bp;
};

struct OddDiffeo {
    int arf = 0;
    KervaireGroup group = KervaireGroup::Order2;
};

using DiffeoClass = std::variant<EvenDiffeo, OddDiffeo>;

struct SphereClassification {
    bool is_homotopy_sphere = false;
    SphereCondition condition = SphereCondition::None;
    std::string reason;
    std::optional<DiffeoClass> diffeo;
};

namespace detail {

// Cond2 body: exactly one isolated vertex, that vertex odd, and an
// ev-component of odd size whose members pairwise have gcd exactly 2.
inline bool condition_two(const GcdGraph& g, std::string* why) {
    if (g.isolated.size() != 1) {
        if (why) *why = "no unique isolated vertex";
        return false;
    }
    if (g.vertices[g.isolated.front()] % 2 == 0) {
        if (why) *why = "the isolated vertex is even";
        return false;
    }
    if (!g.ev_component) {
        if (why) *why = "no even entries, so G(a)_ev is empty";
        return false;
    }
    const auto& ev = g.components[*g.ev_component];
    if (ev.size() % 2 == 0) {
        if (why) *why = "G(a)_ev has an even number of vertices";
        return false;
    }
    for (std::size_t i = 0; i < ev.size(); ++i)
        for (std::size_t j = i + 1; j < ev.size(); ++j)
            if (std::gcd(g.vertices[ev[i]], g.vertices[ev[j]]) != 2) {
                if (why) *why = "G(a)_ev has a pair with gcd != 2";
                return false;
            }
    return true;
}

}  // namespace detail

inline SphereClassification classify_sphere(const GcdGraph& g) {
    SphereClassification out;
    if (g.isolated.size() >= 2) {
        out.is_homotopy_sphere = true;
        out.condition = SphereCondition::Cond1;
        return out;
    }
    std::string why;
    if (detail::condition_two(g, &why)) {
        out.is_homotopy_sphere = true;
        out.condition = SphereCondition::Cond2;
        return out;
    }
    out.reason = "fewer than two isolated vertices and " + why;
    return out;
}

/// Decides sphere status only; callers attach the diffeomorphism class.
inline SphereClassification classify_sphere(const ExponentVector& a) {
    return classify_sphere(build_gcd_graph(a));
}

inline KervaireGroup kervaire_group(std::int64_t link_dimension) {
    switch (link_dimension) {
        case 1: case 5: case 13: case 29: case 61: return KervaireGroup::Trivial;
        case 125: return KervaireGroup::Open125;
        default: return KervaireGroup::Order2;
    }
}

/// Arf invariant of an odd-n homotopy sphere link: 1 exactly for the
/// Kervaire sphere (Cond2, isolated point = +-3 mod 8, and G(a) is
/// G(a)_ev plus that point).
inline OddDiffeo arf_class(const ExponentVector& a) {
    if (a.n() % 2 == 0)
        throw ArgumentError("arf_class applies to odd n only, got n = " + std::to_string(a.n()));
    const auto g = build_gcd_graph(a);
    const auto sphere = classify_sphere(g);
    if (!sphere.is_homotopy_sphere) throw ArgumentError("arf_class needs a homotopy sphere link");

    OddDiffeo out;
    out.group = kervaire_group(a.link_dimension());
    if (sphere.condition != SphereCondition::Cond2) return out;

    const std::size_t lone = g.isolated.front();
    const std::int64_t residue = g.vertices[lone] % 8;
    if (residue != 3 && residue != 5) return out;
    if (g.components[*g.ev_component].size() + 1 != g.vertices.size()) return out;
    out.arf = 1;
    return out;
}

/// Class of an even-n sphere link in bP_{4m}: (tau / 8) reduced into [0, |bP_{4m}|).
inline EvenDiffeo diffeo_class_even(std::int64_t n, const BigInt& tau) {
    if (n < 4 || n % 2 != 0) throw ArgumentError("diffeo_class_even needs even n >= 4");
    if (tau % 8 != 0)
        throw InvariantViolation("signature " + tau.str() + " of a homotopy sphere is not divisible by 8");
    EvenDiffeo out;
    out.tau = tau;
    out.bp = bp_order(n / 2);
    out.class_mod_bp = (tau / 8) % out.bp.order;
    if (out.class_mod_bp < 0) out.class_mod_bp += out.bp.order;
    return out;
}

}  // namespace brieskorn
