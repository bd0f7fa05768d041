#include <gtest/gtest.h>

#include <filesystem>

#include "helpers.hpp"

using namespace brandtlab;

namespace {

const Analysis& analysis_11() {
    static const Analysis a = analyze(11, AnalysisOptions{});
    return a;
}

Json without_timestamp(Json r) {
    r.erase("generated_at");
    return r;
}

bool failed(const std::vector<CheckResult>& checks, const std::string& name) {
    for (const auto& c : checks)
        if (c.name == name) return !c.passed;
    return false;
}

} // namespace

TEST(Record, FreshRecordVerifies) {
    const Json r = to_record(analysis_11(), {});
    EXPECT_EQ(r.at("schema_version").get<int>(), kSchemaVersion);
    EXPECT_EQ(r.at("classes").at("weights").get<std::vector<long>>(), (std::vector<long>{2, 3}));
    EXPECT_EQ(r.at("brandt").at("b0").at(0).at(0).get<std::string>(), "1/4");
    EXPECT_EQ(r.at("classes").at("mass").get<std::string>(), "5/6");
    const auto checks = verify_record(r);
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
}

TEST(Record, RoundTripIsLossless) {
    const Json r = to_record(analysis_11(), {});
    const Json back = Json::parse(r.dump(2));
    EXPECT_EQ(back, r);
    const auto c = brandt_from_record(back);
    const auto& orig = analysis_11().brandt;
    EXPECT_EQ(c.weights, orig.weights);
    EXPECT_EQ(c.b0, orig.b0);
    EXPECT_EQ(c.matrices, orig.matrices);
    EXPECT_EQ(c.level_matrix, orig.level_matrix);
    // Ideal bases rebuild to the same lattices.
    const auto& ideals = back.at("classes").at("ideals");
    ASSERT_EQ(ideals.size(), 2u);
    const auto& alg = analysis_11().classes.order.algebra();
    for (std::size_t k = 0; k < 2; ++k) {
        const Int den(ideals[k].at("denominator").get<std::string>());
        std::vector<QuatElement> gens;
        for (const auto& row : ideals[k].at("basis")) {
            QuatElement::Coords x;
            for (std::size_t t = 0; t < 4; ++t) x[t] = Rational(Int(row[t].get<std::string>()), den);
            for (auto& v : x) v.canonicalize();
            gens.emplace_back(alg, x);
        }
        EXPECT_EQ(QuatLattice::from_generators(gens), analysis_11().classes.ideals[k].lattice());
        EXPECT_EQ(parse_rational(ideals[k].at("norm").get<std::string>()), analysis_11().classes.ideals[k].norm());
    }
}

TEST(Record, DeterministicApartFromTimestamp) {
    AnalysisOptions opt;
    opt.seed = 42;
    const Json a = to_record(analyze(37, opt), opt);
    const Json b = to_record(analyze(37, opt), opt);
    EXPECT_EQ(without_timestamp(a).dump(2), without_timestamp(b).dump(2));
}

TEST(Record, CorruptedEntryFails) {
    Json r = to_record(analysis_11(), {});
    r["brandt"]["matrices"][2]["matrix"][0][1] = 4;
    const auto checks = verify_record(r);
    EXPECT_FALSE(all_passed(checks));
    EXPECT_TRUE(failed(checks, "weighted_symmetry"));
    EXPECT_TRUE(failed(checks, "column_sums"));
}

TEST(Record, SchemaMismatchNeedsMigration) {
    Json r = to_record(analysis_11(), {});
    r["schema_version"] = 0;
    try {
        verify_record(r);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::schema_mismatch);
        EXPECT_NE(std::string(e.what()).find("migration"), std::string::npos);
    }
    r.erase("schema_version");
    EXPECT_THROW(verify_record(r), Error);
    Json broken = to_record(analysis_11(), {});
    broken["theta"].erase("dims");
    try {
        verify_record(broken);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::schema_mismatch);
    }
}

TEST(Record, OlderToolVersionFixtureVerifies) {
    const Json r = read_record(std::filesystem::path(BRANDTLAB_FIXTURE_DIR) / "level_11_tool_0.9.0.json");
    EXPECT_EQ(r.at("tool_version").get<std::string>(), "0.9.0");
    EXPECT_EQ(r.at("schema_version").get<int>(), kSchemaVersion);
    for (const auto& c : verify_record(r)) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
    // Same content as a fresh run of the current tool.
    Json fresh = without_timestamp(to_record(analysis_11(), {}));
    Json old = without_timestamp(r);
    fresh.erase("tool_version");
    old.erase("tool_version");
    EXPECT_EQ(old.at("brandt"), fresh.at("brandt"));
    EXPECT_EQ(old.at("classes"), fresh.at("classes"));
    EXPECT_EQ(old.at("theta").at("dims"), fresh.at("theta").at("dims"));
}

TEST(Record, WriteAndReadBack) {
    const auto dir = std::filesystem::temp_directory_path() / "brandtlab_record_test";
    std::filesystem::remove_all(dir);
    const Json r = to_record(analysis_11(), {});
    const auto path = write_record(r, dir);
    EXPECT_EQ(path.filename().string(), "level_11.json");
    EXPECT_EQ(read_record(path), r);
    EXPECT_THROW(read_record(dir / "missing.json"), Error);
    std::filesystem::remove_all(dir);
}

TEST(Pipeline, RejectsBadInput) {
    EXPECT_THROW(analyze(12), Error);
    AnalysisOptions opt;
    opt.coefficient_bound = 2;
    try {
        analyze(37, opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::insufficient_precision);
    }
}

TEST(Pipeline, OracleChecksJoinTheLedger) {
    AnalysisOptions opt;
    opt.oracle = true;
    const auto a = analyze(23, opt);
    EXPECT_TRUE(a.passed());
    ASSERT_TRUE(a.oracle.has_value());
    EXPECT_EQ(a.oracle->j_list.size(), 3u);
    opt.max_oracle_level = 20;
    EXPECT_FALSE(analyze(23, opt).oracle.has_value());
}
