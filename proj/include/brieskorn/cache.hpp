#pragma once

// Append-only signature cache for scans: a version header line followed by
// one JSON record per vector.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brieskorn/serialize.hpp"

namespace brieskorn {

inline constexpr const char* kCacheFormat = "brieskorn-scan-cache/1";

inline std::string major_version(const std::string& version) { return version.substr(0, version.find('.')); }

class ScanCache {
public:
    explicit ScanCache(std::filesystem::path path) : path_(std::move(path)) {
        if (std::filesystem::exists(path_)) load();
        out_.open(path_, std::ios::app);
        if (!out_) throw Refusal("cannot open cache file " + path_.string());
        if (!had_header_) {
            out_ << Json{{"version", kCacheFormat}, {"tool_version", kToolVersion}}.dump() << '\n';
            out_.flush();
        }
    }

    /// Only records written by a tool with the same major version are reused.
    [[nodiscard]] std::optional<SignatureResult> lookup(const ExponentVector& a) const {
        auto it = records_.find(a.values());
        if (it == records_.end()) return std::nullopt;
        return it->second;
    }

    void append(const ExponentVector& a, const SignatureResult& s) {
        Json record{{"vector", a.values()}, {"signature", to_json(s)}, {"tool_version", kToolVersion}};
        out_ << record.dump() << '\n';
        out_.flush();
        records_[a.values()] = s;
    }

    [[nodiscard]] std::size_t size() const { return records_.size(); }
    [[nodiscard]] std::size_t skipped_incompatible() const { return skipped_; }

private:
    void load() {
        std::ifstream in(path_);
        std::string line;
        std::size_t number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (line.empty()) continue;
            try {
                const auto j = Json::parse(line);
                if (number == 1) {
                    if (j.at("version").get<std::string>() != kCacheFormat) throw ArgumentError("unknown cache format");
                    had_header_ = true;
                    continue;
                }
                auto values = j.at("vector").get<std::vector<std::int64_t>>();
                auto sig = signature_from_json(j.at("signature"));
                if (major_version(j.at("tool_version").get<std::string>()) != major_version(kToolVersion)) {
                    ++skipped_;
                    continue;
                }
                records_[ExponentVector(values).values()] = sig;
            } catch (const std::exception& e) {
                throw Refusal("cache file " + path_.string() + " is corrupt at line " + std::to_string(number) +
                              ": " + e.what());
            }
        }
        if (number > 0 && !had_header_) throw Refusal("cache file " + path_.string() + " has no header line");
    }

    std::filesystem::path path_;
    std::map<std::vector<std::int64_t>, SignatureResult> records_;
    std::ofstream out_;
    bool had_header_ = false;
    std::size_t skipped_ = 0;
};

}  // namespace brieskorn
