#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "uf/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ufw");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (auto& a : args) argv.push_back(a.data());

    std::ostringstream captured_out, captured_err;
    auto* old_out = std::cout.rdbuf(captured_out.rdbuf());
    auto* old_err = std::cerr.rdbuf(captured_err.rdbuf());
    RunResult r;
    r.exit_code = uf::cli_main(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = captured_out.str();
    r.err = captured_err.str();
    return r;
}

} // namespace

TEST_CASE("lengths command pins the worked block-monoid example") {
    auto r = run_cli({"lengths", "--monoid", "bg:c3", "--element", "[1],[1],[1],[2],[2],[2]",
                      "--max-len", "5", "--output", "json"});
    REQUIRE(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["schema"] == "v1");
    CHECK(doc["op"] == "lengths");
    CHECK(doc["lengths"] == json({{"2", 1}, {"3", 1}}));

    auto text = run_cli({"lengths", "--monoid", "bg:c3", "--element",
                         "[1],[1],[1],[2],[2],[2]", "--max-len", "5"});
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("{2^1, 3^1}") != std::string::npos);
}

TEST_CASE("davenport command") {
    auto r = run_cli({"davenport", "--group", "c2xc2", "--output", "json"});
    REQUIRE(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["value"] == 3);
    CHECK(doc["witness"]["length"] == 3);

    auto text = run_cli({"davenport", "--group", "c2xc2"});
    CHECK(text.out.find("D(C_2 x C_2) = 3") != std::string::npos);
}

TEST_CASE("ultra is-atom on the prime-power ramp emits the pinned verdict") {
    auto r = run_cli({"ultra", "is-atom", "--family", "prime_power_ramp:2", "--output", "json"});
    REQUIRE(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["result"] == json({{"verdict", "forall"}, {"value", false}}));
    CHECK(doc["ultrafilter"] == json({{"mode", "frechet"}}));
    CHECK(doc["family"]["rule"] == "prime_power_ramp");
    CHECK(doc["family"]["p"] == 2);
    CHECK(doc["family"]["component"] == "nonzero_integers");
}

TEST_CASE("identical invocations produce byte-identical output") {
    std::vector<std::string> args = {"ultra", "realize-multiset", "--profile", "2=2,3=1",
                                     "--output", "json"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    auto t1 = run_cli({"fol", "random", "--depth", "3", "--seed", "9"});
    auto t2 = run_cli({"fol", "random", "--depth", "3", "--seed", "9"});
    CHECK(t1.out == t2.out);
}

TEST_CASE("exit codes: success, domain, budget, usage") {
    CHECK(run_cli({"davenport", "--group", "c3"}).exit_code == 0);

    auto bad_elem = run_cli({"lengths", "--monoid", "bg:c3", "--element", "[9]"});
    CHECK(bad_elem.exit_code == 1);
    CHECK(bad_elem.err.find("error") != std::string::npos);

    auto bad_group = run_cli({"davenport", "--group", "zz9"});
    CHECK(bad_group.exit_code == 1);

    auto starved = run_cli({"davenport", "--group", "c3xc3", "--node-budget", "5"});
    CHECK(starved.exit_code == 2);
    CHECK(starved.err.find("budget") != std::string::npos);

    CHECK(run_cli({"no-such-command"}).exit_code == 3);
    CHECK(run_cli({}).exit_code == 3);
    CHECK(run_cli({"davenport"}).exit_code == 3); // missing required --group
    CHECK(run_cli({"davenport", "--group", "c2", "--output", "yaml"}).exit_code == 3);
}

TEST_CASE("environment variable seeds the default budget") {
    setenv("UF_NODE_BUDGET", "5", 1);
    auto starved = run_cli({"davenport", "--group", "c3xc3"});
    CHECK(starved.exit_code == 2);
    // an explicit flag overrides the environment
    auto enough = run_cli({"davenport", "--group", "c3xc3", "--node-budget", "10000000"});
    CHECK(enough.exit_code == 0);
    setenv("UF_NODE_BUDGET", "not-a-number", 1);
    CHECK(run_cli({"davenport", "--group", "c2"}).exit_code == 3);
    unsetenv("UF_NODE_BUDGET");
}

TEST_CASE("ultra family and filter helpers") {
    auto limit = run_cli({"ultra", "limit", "--extnat-family", "0,1|2", "--output", "json"});
    REQUIRE(limit.exit_code == 0);
    auto doc = json::parse(limit.out);
    CHECK(doc["result"] == json({{"verdict", "forall"}, {"value", 2}}));

    auto ndu = run_cli({"ultra", "limit", "--extnat-family", "ndu:0,1,2"});
    CHECK(ndu.out.find("ForAllU(inf)") != std::string::npos);

    auto contains = run_cli({"ultra", "contains", "--bool-family", "T,F|T", "--output", "json"});
    auto cdoc = json::parse(contains.out);
    CHECK(cdoc["result"] == json({{"verdict", "forall"}, {"value", true}}));

    auto depends = run_cli({"ultra", "contains", "--bool-family", "T,F"});
    CHECK(depends.out.find("DependsOnU") != std::string::npos);

    auto principal = run_cli({"ultra", "contains", "--bool-family", "explicit:T,F,T", "--uf",
                              "principal:3:1", "--output", "json"});
    auto pdoc = json::parse(principal.out);
    CHECK(pdoc["result"] == json({{"verdict", "point"}, {"value", false}}));

    // explicit finite families cannot be quantified over free ultrafilters
    auto clash = run_cli({"ultra", "contains", "--bool-family", "explicit:T,F"});
    CHECK(clash.exit_code == 1);
}

TEST_CASE("ultra verdicts for constant families") {
    auto mult = run_cli({"ultra", "length-mult", "--family",
                         "constant:bg:c3@[1],[1],[1],[2],[2],[2]", "--ell", "2", "--output",
                         "json"});
    REQUIRE(mult.exit_code == 0);
    auto doc = json::parse(mult.out);
    CHECK(doc["result"] == json({{"verdict", "forall"}, {"value", 1}}));

    auto contains = run_cli({"ultra", "length-contains", "--family",
                             "constant:bg:c3@[1],[1],[1],[2],[2],[2]", "--ell", "4"});
    CHECK(contains.out.find("ForAllU(false)") != std::string::npos);

    auto inha = run_cli({"ultra", "in-ha", "--family", "prime_power_ramp:2", "--nmax", "20",
                         "--output", "json"});
    auto hdoc = json::parse(inha.out);
    CHECK(hdoc["result"]["verdict"] == "forall");
    CHECK(hdoc["result"]["value"] == false);

    auto trans = run_cli({"ultra", "realize-multiset", "--profile", "2=inf", "--output", "json"});
    auto tdoc = json::parse(trans.out);
    CHECK(tdoc["ok"] == true);

    auto fact = run_cli({"ultra", "factorial-check", "--family", "constant:z@2", "--family",
                         "constant:z@3", "--output", "json"});
    auto fdoc = json::parse(fact.out);
    CHECK(fdoc["ok"] == true);
    CHECK(fdoc["n"] == 2);

    auto fin = run_cli({"ultra", "finite-lengths", "--component",
                        "bg:c3@[1],[1],[1],[2],[2],[2]", "--component", "bg:c2@[1],[1]",
                        "--selected", "0", "--output", "json"});
    auto findoc = json::parse(fin.out);
    CHECK(findoc["lengths"] == json({{"2", 1}, {"3", 1}}));
}

TEST_CASE("fol commands") {
    auto t = run_cli({"fol", "eval", "--sentence", "exists x. x*x = 1 & !(x = 1)", "--group",
                      "c4", "--output", "json"});
    REQUIRE(t.exit_code == 0);
    auto doc = json::parse(t.out);
    CHECK(doc["value"] == true);

    auto f = run_cli({"fol", "eval", "--sentence", "exists x. x*x = 1 & !(x = 1)", "--group",
                      "c3", "--output", "json"});
    CHECK(json::parse(f.out)["value"] == false);

    auto los = run_cli({"los", "--sentence", "forall a. forall b. a*b = b*a", "--groups",
                        "c2,c3,c4", "--selected", "1", "--output", "json"});
    auto ldoc = json::parse(los.out);
    CHECK(ldoc["agree"] == true);
    CHECK(ldoc["quotient_value"] == true);

    auto bad = run_cli({"fol", "eval", "--sentence", "forall x. y = x", "--group", "c2"});
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("unbound variable: y") != std::string::npos);

    auto rand = run_cli({"fol", "random", "--depth", "2", "--seed", "4", "--group", "c3",
                         "--output", "json"});
    auto rdoc = json::parse(rand.out);
    CHECK(rdoc.contains("sentence"));
    CHECK(rdoc.contains("value"));
}

TEST_CASE("proto commands") {
    auto d = run_cli({"proto", "degree", "--monoid", "bg:c3", "--element", "[1],[1],[1]",
                      "--output", "json"});
    CHECK(json::parse(d.out)["degree"] == 3);

    auto pd = run_cli({"proto", "proto-degree", "--family", "prime_power_ramp:2", "--output",
                       "json"});
    CHECK(json::parse(pd.out)["result"] == json({{"verdict", "forall"}, {"value", "inf"}}));

    auto in = run_cli({"proto", "in", "--family", "constant:bg:c3@[1],[2]", "--output", "json"});
    CHECK(json::parse(in.out)["result"] == json({{"verdict", "forall"}, {"value", true}}));

    auto closed = run_cli({"proto", "closed", "--monoid", "bg:c3", "--bound", "5", "--output",
                           "json"});
    CHECK(json::parse(closed.out)["ok"] == true);

    auto iso = run_cli({"proto", "iso", "--group", "c3", "--bound", "4", "--output", "json"});
    auto idoc = json::parse(iso.out);
    CHECK(idoc["ok"] == true);
    CHECK(idoc["counts_match"] == true);

    auto div = run_cli({"proto", "divisor", "--group", "c3", "--sequence", "[1],[1],[1]",
                        "--output", "json"});
    auto ddoc = json::parse(div.out);
    CHECK(ddoc["degree"] == 3);
    CHECK(ddoc["inclusion_is_divisor_theory"] == true);

    auto cover = run_cli({"proto", "gcd-cover", "--group", "c3", "--max-len", "3", "--output",
                          "json"});
    CHECK(json::parse(cover.out)["ok"] == true);

    auto gap = run_cli({"gap", "--k", "1", "--output", "json"});
    auto gdoc = json::parse(gap.out);
    CHECK(gdoc["difference"] == "-21");
    CHECK(gdoc["verified"] == true);
}

TEST_CASE("selftest subcommand honors --only") {
    auto r = run_cli({"selftest", "--only", "1"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("criterion  1: PASS") != std::string::npos);
}
