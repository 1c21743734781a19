#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "osface/suite.hpp"

using namespace osface;

namespace {

suite_config small_config() {
    suite_config cfg;
    cfg.nomes = {0.3, 0.6};
    cfg.samples_per_check = 3;
    cfg.n_max = 3;
    return cfg;
}

std::string serialize(const std::vector<verification_report>& records) {
    std::ostringstream out;
    write_report(out, records);
    return out.str();
}

suite_config parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

} // namespace

TEST(Config, Defaults) {
    const suite_config cfg;
    EXPECT_EQ(cfg.nomes, (std::vector<double>{0.1, 0.3, 0.5, 0.7}));
    EXPECT_EQ(cfg.samples_per_check, 250u);
    EXPECT_EQ(cfg.n_max, 5);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ParsesKeys) {
    const suite_config cfg = parse("# comment\nq = 0.2, 0.4\nsamples = 7\nseed = 11\n"
                                   "n_max = 3  # trailing\nout = r.jsonl\ntiming = true\n"
                                   "tolerance.face.ybe = 1e-9\n");
    EXPECT_EQ(cfg.nomes, (std::vector<double>{0.2, 0.4}));
    EXPECT_EQ(cfg.samples_per_check, 7u);
    EXPECT_EQ(cfg.seed, 11u);
    EXPECT_EQ(cfg.n_max, 3);
    EXPECT_EQ(cfg.out, "r.jsonl");
    EXPECT_TRUE(cfg.record_timing);
    EXPECT_EQ(cfg.tolerance("face.ybe"), 1e-9);
}

TEST(Config, Rejections) {
    EXPECT_THROW(parse("samples = 0\n"), config_error);
    EXPECT_THROW(parse("samples = -3\n"), config_error);
    EXPECT_THROW(parse("q = 1.2\n"), config_error);
    EXPECT_THROW(parse("q = 0.3, abc\n"), config_error);
    EXPECT_THROW(parse("n_max = 6\n"), config_error);
    EXPECT_THROW(parse("width = 3\n"), config_error);
    EXPECT_THROW(parse("samples 3\n"), config_error);
    EXPECT_THROW(parse("tolerance.no.such.check = 1e-3\n"), config_error);
    EXPECT_THROW(parse("tolerance.face.ybe = -1\n"), config_error);
    EXPECT_THROW(load_config("/nonexistent/osface.cfg"), config_error);
}

TEST(Config, ToleranceLookup) {
    suite_config cfg;
    EXPECT_EQ(cfg.tolerance("formulas.oracle_vs_E[n=2]"), 1e-9);
    cfg.tolerance_overrides["formulas.oracle_vs_E"] = 1e-6;
    cfg.tolerance_overrides["formulas.oracle_vs_E[n=3]"] = 1e-7;
    EXPECT_EQ(cfg.tolerance("formulas.oracle_vs_E[n=2]"), 1e-6);
    EXPECT_EQ(cfg.tolerance("formulas.oracle_vs_E[n=3]"), 1e-7);
    EXPECT_THROW(default_tolerance("nope"), config_error);
}

TEST(Report, JsonRoundTrip) {
    verification_report r;
    r.check_name = "face.ybe";
    r.params.u = {{0.1, -0.2}, {0.3, 0.0}};
    r.params.h = cplx(0.25, 0.01);
    r.params.nome = 0.3;
    r.params.seed = 123456789012345ULL;
    r.params.sample_index = 42;
    r.lhs = {1.5, -2.25};
    r.rhs = {1.5, -2.25000000001};
    r.residual = 3.2e-12;
    r.tolerance = 1e-10;
    r.pass = true;
    r.elapsed_micros = 17;

    const nlohmann::json j = nlohmann::json::parse(to_json(r).dump());
    const std::set<std::string> keys = {"check_name", "params",    "lhs",  "rhs",
                                        "residual",   "tolerance", "pass", "elapsed_micros"};
    std::set<std::string> seen;
    for (const auto& [k, v] : j.items()) seen.insert(k);
    EXPECT_EQ(seen, keys);

    const verification_report back = report_from_json(j);
    EXPECT_EQ(back.check_name, r.check_name);
    EXPECT_EQ(back.params.u, r.params.u);
    EXPECT_EQ(back.params.h, r.params.h);
    EXPECT_EQ(back.params.nome, r.params.nome);
    EXPECT_EQ(back.params.seed, r.params.seed);
    EXPECT_EQ(back.params.sample_index, r.params.sample_index);
    EXPECT_EQ(back.lhs, r.lhs);
    EXPECT_EQ(back.rhs, r.rhs);
    EXPECT_EQ(back.residual, r.residual);
    EXPECT_EQ(back.tolerance, r.tolerance);
    EXPECT_EQ(back.pass, r.pass);
    EXPECT_EQ(back.elapsed_micros, r.elapsed_micros);
}

TEST(Report, MissingHeightRoundTrips) {
    verification_report r;
    r.check_name = "theta.oddness";
    r.params.u = {{0.1, 0.0}};
    const verification_report back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
    EXPECT_FALSE(back.params.h.has_value());
}

TEST(Suite, SmallRunPasses) {
    const suite_result res = run_suite(small_config());
    EXPECT_TRUE(res.all_pass);
    std::set<std::string> groups;
    for (const auto& r : res.records) {
        EXPECT_TRUE(r.pass) << r.check_name << " residual " << r.residual;
        EXPECT_EQ(r.elapsed_micros, 0);
        groups.insert(std::string(r.check_name.substr(0, r.check_name.find('.'))));
    }
    EXPECT_EQ(groups, (std::set<std::string>{"face", "factorization", "formulas", "identity",
                                             "n2_chain", "oracle", "pfaffian", "recursion",
                                             "theta"}));
}

TEST(Suite, RecordsSorted) {
    const suite_result res = run_suite(small_config(), "theta");
    EXPECT_TRUE(std::is_sorted(res.records.begin(), res.records.end(),
                               [](const verification_report& a, const verification_report& b) {
                                   if (a.check_name != b.check_name) return a.check_name < b.check_name;
                                   return a.params.sample_index < b.params.sample_index;
                               }));
    // 5 laws x 3 samples x 2 nomes.
    EXPECT_EQ(res.records.size(), 30u);
}

TEST(Suite, Deterministic) {
    const suite_config cfg = small_config();
    EXPECT_EQ(serialize(run_suite(cfg).records), serialize(run_suite(cfg).records));
}

TEST(Suite, GroupRunMatchesAll) {
    const suite_config cfg = small_config();
    const auto all = run_suite(cfg).records;
    const auto ybe = run_suite(cfg, "ybe").records;
    std::vector<verification_report> from_all;
    for (const auto& r : all)
        if (r.check_name.rfind("face.", 0) == 0 && r.check_name.rfind("face.reflection", 0) != 0)
            from_all.push_back(r);
    EXPECT_EQ(serialize(from_all), serialize(ybe));
}

TEST(Suite, SeedChangesSamples) {
    suite_config a = small_config(), b = small_config();
    b.seed = a.seed + 1;
    EXPECT_NE(serialize(run_suite(a, "theta").records), serialize(run_suite(b, "theta").records));
}

TEST(Suite, StrictYbeToleranceFails) {
    suite_config cfg = small_config();
    cfg.tolerance_overrides["face.ybe"] = 1e-30;
    const suite_result res = run_suite(cfg, "ybe");
    EXPECT_FALSE(res.all_pass);
    for (const auto& r : res.records) {
        if (r.check_name == "face.ybe") {
            EXPECT_FALSE(r.pass);
            EXPECT_EQ(r.tolerance, 1e-30);
        } else {
            EXPECT_TRUE(r.pass) << r.check_name;
        }
    }
}

TEST(Suite, ReflectionHoldsLiterally) {
    const suite_result res = run_suite(small_config(), "reflection");
    ASSERT_FALSE(res.records.empty());
    for (const auto& r : res.records) EXPECT_EQ(r.check_name, "face.reflection");
}

TEST(Suite, UnknownGroup) {
    EXPECT_THROW(run_suite(small_config(), "everything"), config_error);
}

TEST(Suite, Summary) {
    const auto res = run_suite(small_config(), "theta");
    const auto sums = summarize(res.records);
    ASSERT_EQ(sums.size(), 5u);
    for (const auto& s : sums) {
        EXPECT_EQ(s.samples, 6u);
        EXPECT_EQ(s.failures, 0u);
        EXPECT_EQ(s.tolerance, 1e-10);
    }
}
