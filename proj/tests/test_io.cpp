#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "toricstab/commands.hpp"

using namespace toricstab;

namespace {

struct Run {
    int rc;
    std::string out;
    std::string err;
};

template <typename F>
Run run(F&& f) {
    std::ostringstream out, err;
    int rc = f(out, err);
    return {rc, out.str(), err.str()};
}

Run analyze(const std::string& fan, const std::string& divisor) {
    AnalyzeArgs a;
    a.fan = fan;
    if (divisor == "anticanonical") a.anticanonical = true;
    else a.divisor = divisor;
    return run([&](std::ostream& o, std::ostream& e) { return cmd_analyze(a, o, e); });
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("toricstab_test_" + name);
}

}  // namespace

TEST_CASE("fan JSON round trip") {
    for (const auto& nf : catalog_fano4()) {
        Json j = fan_to_json(nf.fan);
        CHECK(fan_from_json(parse_json_text(j.dump())) == nf.fan);
    }
    Fan f = fan_from_json(parse_json_text(R"({"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[1,0],[2,1],[0,2]]})"));
    CHECK(f.max_cones == std::vector<IndexSet>{{0, 1}, {1, 2}, {0, 2}});
    CHECK(validate_fan(f).ok());
}

TEST_CASE("fan JSON errors") {
    const std::vector<std::string> bad{
        "{",
        R"({"rays":[[1]],"max_cones":[[0]]})",
        R"({"dim":"2","rays":[[1,0]],"max_cones":[[0]]})",
        R"({"dim":1,"rays":[[1.5]],"max_cones":[[0]]})",
        R"({"dim":1,"rays":[[1],[-1]],"max_cones":[[-1]]})",
        R"({"dim":1,"rays":[[1],[-1]],"max_cones":5})",
    };
    for (const auto& text : bad) {
        INFO(text);
        try {
            fan_from_json(parse_json_text(text));
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
    }
}

TEST_CASE("named fans") {
    CHECK(*named_fan("P3") == construct_projective_space(3));
    CHECK(*named_fan("F2") == construct_hirzebruch(2));
    CHECK(*named_fan("PL4_3") == construct_projectivized_line_bundle(4, 3));
    CHECK(*named_fan("C4") == catalog_fano4()[9].fan);
    CHECK_FALSE(named_fan("Q7"));
    CHECK_THROWS_AS(resolve_fan("no/such/file.json"), Error);
}

TEST_CASE("list parsing") {
    CHECK(parse_divisor("1, 1/2,-3").coeffs == std::vector<Rational>{1, Rational(1, 2), -3});
    CHECK(parse_integer_list("0,-1,0,-1") == std::vector<long long>{0, -1, 0, -1});
    CHECK_THROWS_AS(parse_integer_list("1/2"), Error);
    CHECK_THROWS_AS(parse_divisor("1,,2"), Error);
    CHECK_THROWS_AS(parse_divisor("x"), Error);
}

TEST_CASE("report JSON round trip") {
    for (const auto& nf : catalog_fano4()) {
        Report r = make_report(nf.fan, anticanonical(nf.fan));
        Json j = report_to_json(r);
        const std::string text = dump(j);
        Report back = report_from_json(parse_json_text(text));
        CHECK(back == r);
        CHECK(dump(report_to_json(back)) == text);
    }
    Report p1 = make_report(construct_projective_space(1), anticanonical(construct_projective_space(1)));
    Json j = report_to_json(p1);
    CHECK(j["certificate"].is_null());
    CHECK(report_from_json(j) == p1);
}

TEST_CASE("report JSON layout") {
    Fan b5 = construct_proj_split(1, {1, 0, 0});
    Json j = report_to_json(make_report(b5, anticanonical(b5)));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"fan", "divisor", "ample", "volumes", "mu_tx", "verdict", "certificate",
                                           "rank_summary", "notes"});
    CHECK(j["volumes"] == Json::array({"8/1", "56/3", "56/3", "56/3", "32/3", "32/3"}));
    CHECK(j["mu_tx"] == "128/1");
    CHECK(j["verdict"] == "semistable");
    CHECK(j["certificate"]["rank"] == 3);
    CHECK(j["certificate"]["lambda_matrix"][0] == Json::array({-1, -1, -1, -1, 0, 0}));
    CHECK(j["certificate"]["slope"] == "128/1");
    CHECK(j["rank_summary"][1]["admissible_bound"] == "120/1");
}

TEST_CASE("analyze command") {
    Run b5 = analyze("B5", "anticanonical");
    CHECK(b5.rc == ExitOk);
    CHECK(b5.err.empty());
    CHECK(parse_json_text(b5.out)["verdict"] == "semistable");

    Run f2 = analyze("F2", "1,1,3,1");
    CHECK(f2.rc == ExitOk);
    CHECK(parse_json_text(f2.out)["certificate"]["lambda_matrix"][0] == Json::array({0, -1, 0, -1}));

    Run nonample = analyze("F2", "anticanonical");
    CHECK(nonample.rc == ExitNonAmple);
    CHECK(nonample.out.empty());
    CHECK(nonample.err.rfind("error: NonAmple", 0) == 0);

    CHECK(analyze("F2", "1,1,1").rc == ExitParse);
    CHECK(analyze("F2", "1,a,1,1").rc == ExitParse);
    CHECK(analyze("nowhere", "anticanonical").rc == ExitParse);

    AnalyzeArgs both;
    both.fan = "F1";
    both.anticanonical = true;
    both.divisor = "1,1,1,1";
    CHECK(run([&](std::ostream& o, std::ostream& e) { return cmd_analyze(both, o, e); }).rc == ExitParse);

    AnalyzeArgs capped;
    capped.fan = "B5";
    capped.anticanonical = true;
    capped.max_rays = 4;
    Run r = run([&](std::ostream& o, std::ostream& e) { return cmd_analyze(capped, o, e); });
    CHECK(r.rc == ExitTooManyRays);
    CHECK(r.out.empty());
}

TEST_CASE("analyze reads fan files and writes reports") {
    auto fan_path = temp_file("fan.json");
    auto out_path = temp_file("report.json");
    detail::write_file(fan_path.string(), dump(fan_to_json(construct_hirzebruch(1))));
    AnalyzeArgs a;
    a.fan = fan_path.string();
    a.anticanonical = true;
    a.out_path = out_path.string();
    Run r = run([&](std::ostream& o, std::ostream& e) { return cmd_analyze(a, o, e); });
    CHECK(r.rc == ExitOk);
    CHECK(read_text_file(out_path.string()) == r.out);

    detail::write_file(fan_path.string(), R"({"dim":2,"rays":[[1,0],[0,1]],"max_cones":[[0,1]]})");
    a.out_path.reset();
    Run bad = run([&](std::ostream& o, std::ostream& e) { return cmd_analyze(a, o, e); });
    CHECK(bad.rc == ExitInvalidFan);
    CHECK(bad.out.empty());

    detail::write_file(fan_path.string(), "not json");
    CHECK(run([&](std::ostream& o, std::ostream& e) { return cmd_analyze(a, o, e); }).rc == ExitParse);
    std::filesystem::remove(fan_path);
    std::filesystem::remove(out_path);
}

TEST_CASE("construct command") {
    auto construct = [](ConstructArgs a) { return run([&](std::ostream& o, std::ostream& e) { return cmd_construct(a, o, e); }); };
    Run p2 = construct({"pn", {"2"}, -1, ""});
    REQUIRE(p2.rc == ExitOk);
    CHECK(fan_from_json(parse_json_text(p2.out)) == construct_projective_space(2));
    Run f3 = construct({"hirzebruch", {"3"}, -1, ""});
    CHECK(fan_from_json(parse_json_text(f3.out)) == construct_hirzebruch(3));
    Run b5 = construct({"proj-split", {}, 1, "1,0,0"});
    CHECK(fan_from_json(parse_json_text(b5.out)) == construct_proj_split(1, {1, 0, 0}));
    Run prod = construct({"product", {"P1", "P2"}, -1, ""});
    CHECK(fan_from_json(parse_json_text(prod.out)) ==
          construct_product(construct_projective_space(1), construct_projective_space(2)));

    CHECK(construct({"pn", {"0"}, -1, ""}).rc == ExitParse);
    CHECK(construct({"hirzebruch", {"-1"}, -1, ""}).rc == ExitParse);
    CHECK(construct({"proj-split", {}, 1, ""}).rc == ExitParse);
    CHECK(construct({"cube", {"2"}, -1, ""}).rc == ExitParse);
    CHECK(construct({"pn", {"2", "3"}, -1, ""}).rc == ExitParse);
}

TEST_CASE("catalog command") {
    Run t = run([](std::ostream& o, std::ostream& e) { return cmd_catalog(false, o, e); });
    CHECK(t.rc == ExitOk);
    CHECK(t.out.rfind("name  verdict     rank  mu_tx     max_slope\n", 0) == 0);
    CHECK(t.out.find("B5    semistable  3     128/1     128/1\n") != std::string::npos);
    CHECK(t.out.find("P4    stable      -     ") != std::string::npos);

    Run j = run([](std::ostream& o, std::ostream& e) { return cmd_catalog(true, o, e); });
    Json rows = parse_json_text(j.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0]["name"] == "P4");
    CHECK(rows[0]["rank"].is_null());
    CHECK(rows[6]["name"] == "C1");
    CHECK(rows[6]["rank"] == 2);
}

TEST_CASE("scan command") {
    auto scan = [](ScanArgs a) { return run([&](std::ostream& o, std::ostream& e) { return cmd_scan(a, o, e); }); };
    ScanArgs a;
    a.m = 1;
    a.a1 = "1:3";
    a.a2 = "0";
    a.a3 = "0";
    a.a4 = "1:6";
    Run r = scan(a);
    REQUIRE(r.rc == ExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "a1,a2,a3,a4,a,b,ample,verdict");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        long long a1 = 0, a2 = 0, a3 = 0, a4 = 0, av = 0, bv = 0;
        char sep = 0;
        std::istringstream in(line);
        in >> a1 >> sep >> a2 >> sep >> a3 >> sep >> a4 >> sep >> av >> sep >> bv >> sep;
        std::string rest;
        std::getline(in, rest);
        const std::string expected = 2 * a1 > a4 ? "unstable" : (2 * a1 == a4 ? "semistable" : "stable");
        CHECK(rest == "true," + expected);
    }
    CHECK(rows == 18);
    CHECK(r.out.find('\r') == std::string::npos);

    ScanArgs anti;
    anti.m = 2;
    anti.a1 = anti.a2 = anti.a3 = anti.a4 = "1";
    CHECK(scan(anti).out == "a1,a2,a3,a4,a,b,ample,verdict\n1,1,1,1,0,2,false,skipped\n");

    ScanArgs f0;
    f0.m = 0;
    f0.a1 = f0.a2 = f0.a3 = f0.a4 = "1";
    CHECK(scan(f0).out.find("true,semistable") != std::string::npos);

    ScanArgs bad;
    bad.a1 = "3:1";
    CHECK(scan(bad).rc == ExitParse);
    bad.a1 = "x";
    CHECK(scan(bad).rc == ExitParse);
    bad.a1 = "0:1";
    bad.kind = "torus";
    CHECK(scan(bad).rc == ExitParse);

    CHECK(parse_range("2").lo == 2);
    CHECK(parse_range("-1:4").hi == 4);
}

TEST_CASE("oracle command") {
    auto oracle = [](std::string fan, std::string lambda) {
        OracleArgs a{std::move(fan), std::move(lambda)};
        return run([&](std::ostream& o, std::ostream& e) { return cmd_oracle(a, o, e); });
    };
    Run w = oracle("F2", "0,-1,0,-1");
    CHECK(w.rc == ExitOk);
    CHECK(w.out == "witness: (0,1)\nspan criterion: dim 1 -> exists\nAGREE\n");
    Run n = oracle("F2", "-1,0,-1,0");
    CHECK(n.out == "witness: non-existent\nspan criterion: dim 2 -> non-existent\nAGREE\n");
    Run b5 = oracle("B5", "0,0,0,0,-1,-1");
    CHECK(b5.out == "witness: non-existent\nspan criterion: dim 2 -> non-existent\nAGREE\n");

    Run invalid = oracle("F2", "-1,-1,0,0");
    CHECK(invalid.rc == ExitInvalidLambda);
    CHECK(invalid.out.empty());
    CHECK(oracle("F2", "0,0").rc == ExitInvalidLambda);
    CHECK(oracle("F2", "0,x,0,0").rc == ExitParse);
}

TEST_CASE("output is deterministic") {
    for (const char* fan : {"B1", "B5", "C3", "F3"}) {
        const std::string div = std::string(fan) == "F3" ? "1,1,4,1" : "anticanonical";
        CHECK(analyze(fan, div).out == analyze(fan, div).out);
    }
    auto cat = [] { return run([](std::ostream& o, std::ostream& e) { return cmd_catalog(false, o, e); }).out; };
    CHECK(cat() == cat());
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code_for(ErrorCode::InvalidFan) == 2);
    CHECK(exit_code_for(ErrorCode::NonAmple) == 3);
    CHECK(exit_code_for(ErrorCode::ParseError) == 4);
    CHECK(exit_code_for(ErrorCode::InvalidLambda) == 5);
    CHECK(exit_code_for(ErrorCode::TooManyRays) == 6);
    CHECK(exit_code_for(ErrorCode::Degenerate) == 7);
}
