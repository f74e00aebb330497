#pragma once

// Deterministic enumeration of sorted exponent vectors 2 <= a_0 <= ... <= a_n <= amax.

#include <cstdint>
#include <functional>
#include <future>
#include <vector>

#include "brieskorn/cache.hpp"
#include "brieskorn/report.hpp"

namespace brieskorn {

enum class ScanFilter { Sphere, SeSphere };

struct ScanOptions {
    std::int64_t n = 4;
    std::int64_t amax = 2;
    ScanFilter filter = ScanFilter::Sphere;
    ClassifyOptions classify{};
    ScanCache* cache = nullptr;
    bool paranoid = false;  // recompute cache hits and compare
    unsigned jobs = 1;
};

struct ScanStats {
    std::uint64_t visited = 0;
    std::uint64_t emitted = 0;
    std::uint64_t cache_hits = 0;
};

namespace detail {

inline bool next_sorted_vector(std::vector<std::int64_t>& v, std::int64_t amax) {
    std::size_t i = v.size();
    while (i-- > 0) {
        if (v[i] < amax) {
            ++v[i];
            for (std::size_t j = i + 1; j < v.size(); ++j) v[j] = v[i];
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Calls `emit` for every vector passing the filter, in ascending
/// lexicographic order. Classification of a batch may fan out over
/// `jobs` threads; emission and cache writes stay on the calling thread.
inline ScanStats scan(const ScanOptions& options, const std::function<void(const LinkReport&)>& emit) {
    if (options.n < 3) throw ArgumentError("scan needs n >= 3");
    ScanStats stats;
    if (options.amax < 2) return stats;

    ClassifyOptions classify = options.classify;
    classify.signature_for_non_spheres = false;
    const bool even = options.n % 2 == 0;

    struct Pending {
        ExponentVector a;
        std::optional<SignatureResult> cached;
    };
    std::vector<Pending> batch;
    auto flush = [&] {
        std::vector<std::future<LinkReport>> work;
        std::vector<LinkReport> done;
        auto run = [&classify](const Pending& item) { return classify_link(item.a, classify, item.cached); };
        if (options.jobs > 1) {
            for (const auto& item : batch) work.push_back(std::async(std::launch::async, run, std::cref(item)));
            for (auto& w : work) done.push_back(w.get());
        } else {
            for (const auto& item : batch) done.push_back(run(item));
        }
        for (std::size_t i = 0; i < done.size(); ++i) {
            auto& report = done[i];
            if (batch[i].cached) {
                ++stats.cache_hits;
                if (options.paranoid) {
                    const auto fresh = compute_signature(report.a, classify);
                    if (fresh.tau != batch[i].cached->tau || fresh.boundary_skipped != batch[i].cached->boundary_skipped)
                        throw InvariantViolation("cached signature for vector differs from recomputation");
                }
            } else if (even && options.cache && report.signature) {
                options.cache->append(report.a, *report.signature);
            }
            ++stats.emitted;
            emit(report);
        }
        batch.clear();
    };

    const std::size_t batch_size = options.jobs > 1 ? 4 * options.jobs : 1;
    std::vector<std::int64_t> v(static_cast<std::size_t>(options.n) + 1, 2);
    do {
        ++stats.visited;
        ExponentVector a(v);
        if (!classify_sphere(a).is_homotopy_sphere) continue;
        if (options.filter == ScanFilter::SeSphere && !k_stability(a).k_polystable) continue;
        std::optional<SignatureResult> cached;
        if (even && options.cache) cached = options.cache->lookup(a);
        batch.push_back({std::move(a), std::move(cached)});
        if (batch.size() >= batch_size) flush();
    } while (detail::next_sorted_vector(v, options.amax));
    flush();
    return stats;
}

}  // namespace brieskorn
