#include "fnsurf/cli.hpp"
#include "fnsurf/parse.hpp"
#include "fnsurf/serialize.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace fnsurf;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "fnsurf");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Json, PolyRoundTrip) {
    const Poly p = parse("(1/2)*x^4 - z^2 + (2/3)*c*x*z - 7");
    EXPECT_EQ(poly_from_json(to_json(p)), p);
    EXPECT_EQ(to_json(Poly{}), Json::array());
    EXPECT_THROW((void)poly_from_json(Json::object()), std::invalid_argument);
    EXPECT_THROW((void)poly_from_json(Json::parse(R"([{"exps": {"q": 1}, "num": "1", "den": "1"}])")),
                 std::invalid_argument);
}

TEST(Json, FieldRoundTrip) {
    const VectorField v = assistant_system();
    EXPECT_EQ(field_from_json(to_json(v)), v);
}

TEST(Json, TableReport) {
    const Json j = to_json(table1_certificates());
    ASSERT_EQ(j["certificates"].size(), 6U);
    EXPECT_EQ(j["certificates"][0]["residual"], "0");
    EXPECT_EQ(j["discrepancies"].size(), 2U);
    EXPECT_FALSE(j["discrepancies"][0]["lemma_condition"]["valid"].get<bool>());
}

TEST(Cli, Parse) {
    const CliRun r = cli({"parse", "y+x"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, "x + y\n");
    EXPECT_EQ(cli({"parse", "x +"}).code, kExitUsage);
}

TEST(Cli, Table1Json) {
    const CliRun r = cli({"table1", "--json"});
    EXPECT_EQ(r.code, kExitOk);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["certificates"].size(), 6U);
    EXPECT_EQ(j["discrepancies"].size(), 2U);
}

TEST(Cli, SearchGeneric) {
    const CliRun r = cli({"search", "--a", "1/4", "--b", "1", "--c", "1", "--d", "1", "--deg", "4"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("no Darboux polynomials found"), std::string::npos);
}

TEST(Cli, DecimalRejectedForExactCommands) {
    const CliRun r = cli({"search", "--a", "0.25", "--b", "1", "--c", "1", "--d", "1", "--deg", "2"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("--a"), std::string::npos);
}

TEST(Cli, UnknownFlag) {
    const CliRun r = cli({"table1", "--bogus"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("--bogus"), std::string::npos);
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(cli({"verify", "--f", "y", "--b", "0", "--c", "0", "--a", "1/3", "--d", "2"}).code, kExitOk);
    EXPECT_EQ(cli({"verify", "--f", "x", "--a", "1/3", "--b", "0", "--c", "0", "--d", "2"}).code, kExitMathFailure);
}

TEST(Cli, CofactorNotDarboux) {
    const CliRun r = cli({"cofactor", "--f", "x", "--a", "1/3", "--b", "0", "--c", "0", "--d", "2"});
    EXPECT_EQ(r.code, kExitMathFailure);
}

TEST(Cli, CascadeObstruction) {
    const CliRun r = cli({"cascade", "--a", "1/4", "--b", "1", "--c", "1", "--d", "1", "--f0", "(1/2)*x^4 - z^2",
                       "--k0", "4/3", "--json"});
    EXPECT_EQ(r.code, kExitMathFailure);
    const Json j = Json::parse(r.out);
    EXPECT_FALSE(j["completed"].get<bool>());
}

TEST(Cli, AppendixSummary) {
    const CliRun r = cli({"appendix"});
    EXPECT_NE(r.out.find("11 passed, 4 failed, 3 skipped"), std::string::npos);
    EXPECT_EQ(r.code, kExitMathFailure);
}

TEST(Cli, DriftAcceptsDecimals) {
    const CliRun r = cli({"drift", "--a", "0.3", "--b", "0", "--c", "0", "--d", "2", "--f", "y", "--x0", "0.1",
                       "--y0", "0.2", "--z0", "0.3", "--t-end", "0.1", "--step", "0.01", "--json"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_LT(Json::parse(r.out)["max_relative_error"].get<double>(), 1e-12);
}

TEST(Cli, Deterministic) {
    const std::vector<std::string> args{"first-integrals", "--a", "2/5", "--b", "0", "--c", "0", "--d", "7", "--deg", "4",
                                        "--json"};
    EXPECT_EQ(cli(args).out, cli(args).out);
}
