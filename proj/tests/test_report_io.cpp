#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "heckelab/angle.hpp"
#include "heckelab/coeff_table.hpp"
#include "heckelab/error.hpp"
#include "heckelab/report_io.hpp"
#include "heckelab/witness.hpp"

using namespace heckelab;
using nlohmann::json;

namespace {

Angle delta_angle_2(Precision prec = 128) {
    const Real c = Real(-24L, prec) / sqrt(pow_ui(Real(2L, prec), 11));
    return angle_of(c, prec, {"2", 2});
}

ReportMeta sample_meta() {
    return ReportMeta{"witness", {{"thm", "1.5"}, {"p", "2"}}, 128};
}

}  // namespace

TEST_CASE("fnv1a64 matches the published test vectors") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config_hash is 16 hex chars and sensitive to every entry") {
    const std::string h1 = config_hash({{"form", "delta"}, {"n", "100"}});
    CHECK(h1.size() == 16);
    CHECK(h1.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(h1 == config_hash({{"form", "delta"}, {"n", "100"}}));
    CHECK(h1 != config_hash({{"form", "delta"}, {"n", "101"}}));
    CHECK(h1 != config_hash({{"n", "100"}, {"form", "delta"}}));  // order matters
    CHECK(sample_meta().hash() == sample_meta().hash());
}

TEST_CASE("witness reports serialize to schema-1 JSON with string-precision reals") {
    const WitnessReport report = prime_power_witnesses(delta_angle_2(), 3);
    const std::string text = json_report(report, sample_meta());
    CHECK(text.back() == '\n');
    const json j = json::parse(text);
    CHECK(j["schema"] == 1);
    CHECK(j["theorem_tag"] == "T1.5");
    CHECK(j["lower_bound"] == false);
    CHECK(j["meta"]["kind"] == "witness");
    CHECK(j["meta"]["precision_bits"] == 128);
    CHECK(j["meta"]["inputs"]["p"] == "2");
    CHECK(j["meta"]["config_hash"] == sample_meta().hash());
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["n"] == 2);
    CHECK(j["rows"][0]["ideal"].is_null());
    // the decimal strings round-trip through Real::parse
    const Real achieved = Real::parse(j["rows"][0]["achieved"].get<std::string>(), 128);
    CHECK(abs(achieved - report.rows[0].achieved).to_double() < 1e-36);
    CHECK(j["constants"].contains("Lambda_f"));
}

TEST_CASE("witness CSV carries the tag and the ideal column") {
    const WitnessReport t15 = prime_power_witnesses(delta_angle_2(), 2);
    const std::string csv = csv_report(t15);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "theorem_tag,n,ideal,achieved,bound");
    std::getline(lines, line);
    CHECK(line.substr(0, 8) == "T1.5,2,,");  // no ideal for pure exponents

    const Real c3 = Real(252L, 128) / sqrt(pow_ui(Real(3L, 128), 11));
    const Angle q3 = angle_of(c3, 128, {"3", 3});
    const WitnessReport t14 = two_prime_witnesses(delta_angle_2(), q3, 2);
    const std::string csv14 = csv_report(t14);
    CHECK(csv14.find("T1.4,") != std::string::npos);
    CHECK(csv14.find(",2^3*3") != std::string::npos);  // the ideal column
}

TEST_CASE("scan serialization distinguishes majorant and majorant-free traces") {
    const Real g = (sqrt(Real(5L, 128)) - 1L) / 2L;
    const ScanResult lw = littlewood_scan(g, g, 64, false);
    const std::string lw_csv = csv_report(lw);
    std::istringstream lines(lw_csv);
    std::string header, row;
    std::getline(lines, header);
    CHECK(header == "checkpoint_n,running_min,majorant");
    std::getline(lines, row);
    CHECK(row.back() == ',');  // empty majorant column

    const json lw_json = json::parse(json_report(lw, ReportMeta{"scan", {}, 128}));
    CHECK(lw_json["trace"][0]["majorant"].is_null());
    CHECK(lw_json["weighted"] == false);
    CHECK(lw_json["min_value"].is_string());

    const Real c3 = Real(252L, 128) / sqrt(pow_ui(Real(3L, 128), 11));
    const ScanResult ep = two_prime_equal_power_scan(
        delta_angle_2(), angle_of(c3, 128, {"3", 3}), 64);
    const json ep_json = json::parse(json_report(ep, ReportMeta{"scan", {}, 128}));
    CHECK(ep_json["trace"][0]["majorant"].is_number());
    const std::string ep_csv = csv_report(ep);
    std::istringstream ep_lines(ep_csv);
    std::getline(ep_lines, header);
    std::getline(ep_lines, row);
    CHECK(row.back() != ',');
}

TEST_CASE("stat summaries serialize checkpoints and the optional fit") {
    StatSummary s;
    s.sample_size = 7;
    s.discrepancy = 0.125;
    s.checkpoints = {{10.0, 0.5}, {100.0, 0.25}};
    const json no_fit = json::parse(json_report(s, ReportMeta{"stat", {}, 128}));
    CHECK(no_fit["fit"].is_null());
    CHECK(no_fit["checkpoints"][1][0] == 100.0);
    s.fit = {0.85, 1.1};
    const json with_fit = json::parse(json_report(s, ReportMeta{"stat", {}, 128}));
    CHECK(with_fit["fit"]["exponent"] == 0.85);
    CHECK(with_fit["fit"]["constant"] == 1.1);
    CHECK(csv_report(s) == "x,value\n10,0.5\n100,0.25\n");
}

TEST_CASE("flat integer reports serialize as an object and a one-row CSV") {
    const std::vector<std::pair<std::string, std::int64_t>> fields = {{"coverage", 100},
                                                                      {"rows", 25}};
    const json j = json::parse(json_report(fields, ReportMeta{"coeffs", {}, 128}));
    CHECK(j["schema"] == 1);
    CHECK(j["coverage"] == 100);
    CHECK(j["rows"] == 25);
    CHECK(csv_report(fields) == "coverage,rows\n100,25\n");
}

TEST_CASE("tenenbaum reports serialize flat") {
    TenenbaumReport r;
    r.x = 100;
    r.s_sum = 100;
    r.l_sum = 5.1873775176;
    r.a_const = 0.9;
    r.b_const = 0.6;
    r.rhs = 562.0;
    r.slack = 5.62;
    r.holds = true;
    r.degenerate = false;
    const json j = json::parse(json_report(r, ReportMeta{"tenenbaum", {}, 128}));
    CHECK(j["x"] == 100);
    CHECK(j["holds"] == true);
    const std::string csv = csv_report(r);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "x,s_sum,l_sum,a_const,b_const,rhs,slack,holds,degenerate");
    CHECK(csv.find(",1,0\n") != std::string::npos);
}

TEST_CASE("serialization is deterministic byte for byte") {
    const WitnessReport report = prime_power_witnesses(delta_angle_2(), 3);
    CHECK(json_report(report, sample_meta()) == json_report(report, sample_meta()));
    CHECK(csv_report(report) == csv_report(report));
}

TEST_CASE("format_double round-trips through strtod") {
    for (const double v : {0.0, 0.1, -2.5, 1e-300, 3.141592653589793, 1e17}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("write_text_file is atomic and errors on bad paths") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "heckelab_report_io_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.json";
    write_text_file(target.string(), "hello\n");
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "hello\n");
    CHECK(!fs::exists(target.string() + ".tmp"));
    // overwrite keeps the new content
    write_text_file(target.string(), "second\n");
    std::ifstream in2(target);
    std::string content2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
    CHECK(content2 == "second\n");
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/report.json", "x"), IoError);
    fs::remove_all(dir);
}
