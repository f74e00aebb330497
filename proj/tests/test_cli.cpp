#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "brieskorn/cli.hpp"

using namespace brieskorn;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    [[nodiscard]] std::vector<Json> lines() const {
        std::vector<Json> out_lines;
        std::istringstream in(out);
        std::string line;
        while (std::getline(in, line)) out_lines.push_back(Json::parse(line));
        return out_lines;
    }
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(BRIESKORN_GOLDEN_DIR) + "/" + name);
    std::string line;
    std::getline(in, line);
    return line;
}

Json without_timing(Json j) {
    j.erase("timing_ms");
    return j;
}

std::filesystem::path temp_file(const std::string& name) {
    auto path = std::filesystem::temp_directory_path() / ("brieskorn_test_" + name);
    std::filesystem::remove(path);
    return path;
}

std::vector<Json> stable_fields(const std::vector<Json>& lines) {
    std::vector<Json> out;
    for (auto j : lines) {
        j.erase("timing_ms");
        j.erase("signature_source");
        out.push_back(j);
    }
    return out;
}

}  // namespace

TEST(Golden, Classify) {
    const auto r = run({"classify", "2", "2", "2", "3", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = r.lines();
    ASSERT_EQ(lines.size(), 1u);
    EXPECT_EQ(without_timing(lines[0]).dump(), golden("classify_2_2_2_3_5.json"));
    EXPECT_EQ(lines[0]["homotopy_sphere"], true);
    EXPECT_EQ(lines[0]["se_metric"], false);
    EXPECT_EQ(lines[0]["tau"], "8");
    EXPECT_EQ(lines[0]["class"], "1 mod 28");
    EXPECT_TRUE(r.err.empty());
}

TEST(Golden, BpOrder) {
    const auto r = run({"bp-order", "--m", "3"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"m\":3,\"order\":\"992\"}\n");
    EXPECT_EQ(r.out, golden("bp_order_m3.json") + "\n");
}

TEST(Golden, TauKernel) {
    const auto r = run({"tau", "--method", "kernel", "2", "2", "338", "339", "341"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, golden("tau_kernel_2_2_338_339_341.json") + "\n");
    const auto j = r.lines().at(0);
    EXPECT_EQ(BigInt(j["tau"].get<std::string>()) % 8, 0);
    EXPECT_EQ(j["class"], "1 mod 28");
}

TEST(Cli, TauMethodsAgree) {
    const auto a = run({"tau", "--method", "brute", "3", "3", "3", "7", "20"});
    const auto b = run({"tau", "--method", "kernel", "3", "3", "3", "7", "20"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.lines()[0]["tau"], b.lines()[0]["tau"]);
    EXPECT_EQ(a.lines()[0]["method"], "brute");
}

TEST(Cli, RationalsAreStrings) {
    const auto r = run({"classify", "2", "2", "10", "11", "13"});
    const auto j = r.lines().at(0);
    EXPECT_TRUE(j["stability"]["sum_recip"].is_string());
    EXPECT_EQ(j["stability"]["sum_recip"], "1813/1430");
}

TEST(Cli, OtherSubcommands) {
    auto r = run({"moduli", "--n", "6", "--p", "8", "--l", "3"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.lines()[0]["dimension_dp"], "35");

    r = run({"euler", "--n", "6", "--p", "8", "--l", "3"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.lines()[0]["chi_m"], "-6009/914");
    r = run({"euler", "--n", "6", "--p", "8", "--l", "3", "--chi-poly", "0"});
    EXPECT_EQ(r.lines()[0]["chi_m"], "-889/914");

    r = run({"family", "odd", "--m", "2", "--pn", "101", "--classify"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.lines()[0]["vector"], Json::parse("[2,2,82,86,94,101]"));
    EXPECT_EQ(r.lines()[0]["report"]["diffeo"]["arf"], 1);

    r = run({"family", "standard", "--m", "2", "--k", "2"});
    EXPECT_EQ(r.lines()[0]["vector"], Json::parse("[3,3,3,7,20]"));
    r = run({"family", "ref", "--m", "3", "--k", "1", "--sign", "1", "--classify"});
    EXPECT_EQ(r.lines()[0]["report"]["tau"], "-8");
    r = run({"family", "exotic", "--m", "2", "--k", "1", "--q", "1"});
    EXPECT_EQ(r.lines()[0]["vector"], Json::parse("[2,2,8,9,11]"));

    r = run({"qpfit", "--family", "exotic", "--m", "2", "--k", "1", "--l", "3", "--samples", "7", "--verify", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.lines()[0]["verify"]["all_match"], true);
    EXPECT_EQ(r.lines()[0]["quasi_polynomial"]["period"], 6);
}

TEST(ExitCodes, Usage) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"classify", "2", "2"}).code, 2);
    EXPECT_EQ(run({"classify", "2", "x", "3", "5"}).code, 2);
    EXPECT_EQ(run({"tau", "--method", "fast", "2", "2", "2", "3", "5"}).code, 2);
    EXPECT_EQ(run({"bp-order", "--m", "1"}).code, 2);
    EXPECT_EQ(run({"moduli", "--n", "6", "--p", "9", "--l", "3"}).code, 2);
    const auto r = run({"nonsense"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(ExitCodes, Refusal) {
    EXPECT_EQ(run({"family", "odd", "--m", "2", "--pn", "53"}).code, 1);
    EXPECT_EQ(run({"tau", "--method", "brute", "2", "2", "1000", "1001", "1003"}).code, 1);
    EXPECT_EQ(run({"family", "exotic", "--m", "4", "--k", "1", "--l", "3", "--q", "1"}).code, 1);
}

TEST(ExitCodes, BudgetFromEnvironment) {
    ::setenv(cli::kBudgetEnv, "10", 1);
    const auto refused = run({"tau", "--method", "brute", "2", "2", "2", "3", "11"});
    ::setenv(cli::kBudgetEnv, "junk", 1);
    const auto junk = run({"tau", "--method", "brute", "2", "2", "2", "3", "11"});
    ::unsetenv(cli::kBudgetEnv);
    EXPECT_EQ(refused.code, 1);
    EXPECT_EQ(junk.code, 2);
    EXPECT_EQ(run({"tau", "--method", "brute", "2", "2", "2", "3", "11"}).code, 0);
}

TEST(ExitCodes, InvariantViolation) {
    // A cache that records a wrong signature for a sphere trips the divisibility check.
    const auto path = temp_file("bad.cache");
    {
        std::ofstream out(path);
        out << Json{{"version", kCacheFormat}, {"tool_version", kToolVersion}}.dump() << '\n';
        SignatureResult bogus{BigInt(4), BigInt(4), BigInt(0), BigInt(0), SignatureMethod::Kernel};
        out << Json{{"vector", {2, 2, 2, 3, 5}}, {"signature", to_json(bogus)}, {"tool_version", kToolVersion}}.dump()
            << '\n';
    }
    const auto r = run({"scan", "--n", "4", "--amax", "5", "--filter", "sphere", "--cache", path.string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("invariant"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Json, LinkReportRoundTrip) {
    for (const auto& a : std::vector<std::vector<std::int64_t>>{
             {2, 2, 2, 3, 5}, {5, 2, 3, 2, 2}, {2, 2, 82, 86, 94, 101}, {2, 2, 2, 2, 2}, {3, 3, 3, 7, 20}, {6, 10, 15, 7}}) {
        const auto report = classify_link(ExponentVector(a));
        const Json j = to_json(report);
        const Json again = to_json(link_report_from_json(Json::parse(j.dump())));
        EXPECT_EQ(again, j);
    }
}

TEST(Json, QuasiPolynomialRoundTrip) {
    QuasiPolynomial qp;
    qp.period = 3;
    qp.degree_bound = 2;
    qp.branches[0] = {Rational(1, 3), Rational(-2)};
    qp.branches[2] = {Rational(7, 5)};
    const Json j = to_json(qp);
    const auto back = quasi_polynomial_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.branches, qp.branches);
    EXPECT_EQ(back.period, 3);
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(j["branches"]["0"][0], "1/3");
}

TEST(Scan, ExamplesAndDeterminism) {
    std::vector<std::vector<std::int64_t>> seen;
    ScanOptions options;
    options.n = 4;
    options.amax = 6;
    scan(options, [&](const LinkReport& r) { seen.push_back(r.a.values()); });
    EXPECT_NE(std::find(seen.begin(), seen.end(), std::vector<std::int64_t>{2, 2, 2, 3, 5}), seen.end());
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    std::vector<std::vector<std::int64_t>> again;
    scan(options, [&](const LinkReport& r) { again.push_back(r.a.values()); });
    EXPECT_EQ(seen, again);

    options.amax = 5;
    options.filter = ScanFilter::SeSphere;
    std::vector<std::vector<std::int64_t>> stable;
    scan(options, [&](const LinkReport& r) {
        stable.push_back(r.a.values());
        EXPECT_TRUE(r.stability.se_metric_exists);
        EXPECT_TRUE(r.sphere.is_homotopy_sphere);
    });
    EXPECT_EQ(std::find(stable.begin(), stable.end(), std::vector<std::int64_t>{2, 2, 2, 3, 5}), stable.end());
}

TEST(Scan, EmptyRange) {
    const auto r = run({"scan", "--n", "4", "--amax", "1", "--filter", "sphere"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(Scan, CacheIndependence) {
    const auto path = temp_file("scan.cache");
    const std::vector<std::string> base{"scan", "--n", "4", "--amax", "9", "--filter", "sphere"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    const auto plain = with({});
    const auto cold = with({"--cache", path.string()});
    const auto warm = with({"--cache", path.string(), "--paranoid"});
    const auto parallel = with({"--cache", path.string(), "--jobs", "3"});
    ASSERT_EQ(plain.code, 0);
    ASSERT_EQ(cold.code, 0);
    ASSERT_EQ(warm.code, 0) << warm.err;
    ASSERT_EQ(parallel.code, 0);
    EXPECT_FALSE(plain.lines().empty());
    EXPECT_EQ(stable_fields(plain.lines()), stable_fields(cold.lines()));
    EXPECT_EQ(stable_fields(plain.lines()), stable_fields(warm.lines()));
    EXPECT_EQ(stable_fields(plain.lines()), stable_fields(parallel.lines()));
    for (const auto& j : warm.lines()) EXPECT_EQ(j["signature_source"], "cache");
    std::filesystem::remove(path);
}

TEST(Scan, ParallelMatchesSerial) {
    const auto a = run({"scan", "--n", "5", "--amax", "7", "--filter", "sphere"});
    const auto b = run({"scan", "--n", "5", "--amax", "7", "--filter", "sphere", "--jobs", "4"});
    EXPECT_EQ(stable_fields(a.lines()), stable_fields(b.lines()));
}

TEST(Cache, CorruptionNamesTheLine) {
    const auto path = temp_file("corrupt.cache");
    {
        std::ofstream out(path);
        out << Json{{"version", kCacheFormat}, {"tool_version", kToolVersion}}.dump() << '\n';
        out << "{\"vector\": [2,2,2,3,5]}\n";
        out << "not json\n";
    }
    const auto r = run({"scan", "--n", "4", "--amax", "5", "--filter", "sphere", "--cache", path.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
    std::filesystem::remove(path);
}

TEST(Cache, IncompatibleVersionIsIgnored) {
    const auto path = temp_file("old.cache");
    {
        std::ofstream out(path);
        out << Json{{"version", kCacheFormat}, {"tool_version", "9.0.0"}}.dump() << '\n';
        SignatureResult bogus{BigInt(4), BigInt(4), BigInt(0), BigInt(0), SignatureMethod::Kernel};
        out << Json{{"vector", {2, 2, 2, 3, 5}}, {"signature", to_json(bogus)}, {"tool_version", "9.0.0"}}.dump()
            << '\n';
    }
    ScanCache cache(path);
    EXPECT_EQ(cache.size(), 0u);
    EXPECT_EQ(cache.skipped_incompatible(), 1u);
    EXPECT_FALSE(cache.lookup(ExponentVector({2, 2, 2, 3, 5})));
    std::filesystem::remove(path);
}

TEST(Cache, AppendAndReload) {
    const auto path = temp_file("reload.cache");
    const ExponentVector a({2, 2, 2, 3, 5});
    {
        ScanCache cache(path);
        cache.append(a, tau_kernel(a));
    }
    ScanCache reloaded(path);
    ASSERT_TRUE(reloaded.lookup(a));
    EXPECT_EQ(reloaded.lookup(a)->tau, 8);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(Json::parse(header)["version"], kCacheFormat);
    std::filesystem::remove(path);
}
