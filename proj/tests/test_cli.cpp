#include <omnikit/cli.hpp>
#include <omnikit/reports.hpp>

#include <doctest.h>

#include <sstream>

using omnikit::reports::json;

namespace {
    struct Outcome {
        int code;
        std::string out, err;
    };

    auto run(std::vector<std::string> args, const std::string & input = {}) -> Outcome
    {
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = omnikit::cli::run(args, in, out, err);
        return {code, out.str(), err.str()};
    }
}

TEST_CASE("construct output verifies")
{
    for (int k : {2, 3})
        for (int a : {2, 3}) {
            auto built = run({"construct", "--k", std::to_string(k), "--a", std::to_string(a)});
            REQUIRE(built.code == 0);
            auto checked = run({"verify", "-", "--k", std::to_string(k)}, built.out);
            CHECK(checked.code == 0);
            auto j = json::parse(checked.out);
            CHECK(j["is_omni"] == true);
            CHECK(j["kind"] == "verify");
        }
    auto thin = run({"construct", "--k", "2", "--a", "2", "--shape", "thin"});
    REQUIRE(thin.code == 0);
    CHECK(run({"verify", "--k", "2"}, thin.out).code == 0);
}

TEST_CASE("negative verdicts exit with 3")
{
    const std::string zeros = "omnimosaic v1\n3 3 2\n0 0 0\n0 0 0\n0 0 0\n";
    auto r = run({"verify", "--k", "2"}, zeros);
    CHECK(r.code == 3);
    CHECK(json::parse(r.out)["is_omni"] == false);
    CHECK(r.err.find("missing") != std::string::npos);

    CHECK(run({"contains", "-", "--target", "1111"}, zeros).code == 3);
    CHECK(run({"contains", "-", "--target", "0,0,0,0"}, zeros).code == 0);
    CHECK(run({"search", "--k", "2", "--a", "2", "--n", "3"}).code == 3);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"construct", "--k", "2"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"verify", "--k", "2"}, "not a matrix").code == 2);
    CHECK(run({"contains", "-", "--target", "011"}, "omnimosaic v1\n2 2 2\n0 1\n1 0\n").code == 2);
    CHECK(run({"search", "--k", "2", "--a", "2", "--checkpoint", "x"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("search budget exits with 4")
{
    auto r = run({"search", "--k", "2", "--a", "2", "--n", "4", "--max-nodes", "10"});
    CHECK(r.code == 4);
    CHECK(json::parse(r.out)["results"][0]["status"] == "budget_exceeded");
}

TEST_CASE("search finds the smallest size")
{
    auto r = run({"search", "--k", "2", "--a", "2"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["omega"] == 4);
    CHECK(j["results"].back()["status"] == "found");
}

TEST_CASE("stdout does not depend on the worker count")
{
    const std::vector<std::vector<std::string>> commands{
        {"search", "--k", "2", "--a", "2", "--n", "5"},
        {"sample", "--n", "5", "--k", "2", "--a", "2", "--trials", "500", "--seed", "9"},
        {"exact", "--n", "3", "--k", "2", "--a", "2", "--table"},
        {"construct", "--k", "3", "--a", "2"},
    };
    for (const auto & c : commands) {
        auto one = c;
        one.insert(one.begin(), {"--workers", "1"});
        auto three = c;
        three.insert(three.begin(), {"--workers", "3"});
        auto x = run(one), y = run(three);
        CHECK(x.code == y.code);
        CHECK(x.out == y.out);
    }
}

TEST_CASE("bounds payload")
{
    auto r = run({"bounds", "--k", "2", "--a", "2", "--n", "16", "--lemmas"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["pigeonhole_min_n"] == 4);
    CHECK(j["construction_upper"] == 4);
    CHECK(j["n"] == 16);
    CHECK(j.contains("log_total_bound"));
    CHECK(j.contains("lemmas"));

    auto big = json::parse(run({"bounds", "--k", "116", "--a", "2"}).out);
    CHECK(big["construction_upper"].is_null());
    CHECK(big["threshold_n_estimate"].is_number());
    auto huge = json::parse(run({"bounds", "--k", "200", "--a", "2", "--n", "1000"}).out);
    CHECK(huge["threshold_n_estimate"].is_null());
    CHECK(run({"bounds", "--k", "200", "--a", "2"}).code == 2);
}

TEST_CASE("csv headers")
{
    auto b = run({"bounds", "sweep", "--k", "10", "20", "--a", "2"});
    REQUIRE(b.code == 0);
    CHECK(b.out.rfind("k,a,n,log_mu,log_total_bound,certifies\n", 0) == 0);
    CHECK(std::count(b.out.begin(), b.out.end(), '\n') == 3);

    auto s = run({"sweep", "--k", "2", "--a", "2", "--n-min", "4", "--n-max", "6", "--trials", "100"});
    REQUIRE(s.code == 0);
    CHECK(s.out.rfind("n,k,a,trials,p_omni,stderr,ex_missing,stderr\n", 0) == 0);
    CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 4);
}

TEST_CASE("locate and one-dimensional commands")
{
    auto l = json::parse(run({"locate", "--k", "2", "--a", "3", "--target", "0 1 2 0"}).out);
    CHECK(l["verified"] == true);

    auto o = json::parse(run({"oned", "--a", "2", "--k", "2", "--seq", "0101"}).out);
    CHECK(o["is_omni"] == true);
    CHECK(o["collections"] == 2);

    auto t = json::parse(run({"oned", "--a", "2"}).out);
    CHECK(t["threshold_ratio"] == doctest::Approx(3.0));
}
