#include "abnormal/cli.hpp"

#include "doctest.h"
#include "json.hpp"

#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = abnormal::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("envelope and exit codes") {
    Run r = run({"expand", "--rational", "1/3", "--base", "2", "--prefix", "6"});
    CHECK(r.code == 0);
    json j = r.doc();
    CHECK(j["command"] == "expand");
    CHECK(j["status"] == "ok");
    CHECK(j["version"] == 1);
    CHECK(j["payload"]["prefix"] == "010101");

    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"expand", "--base", "notanumber"}).code == 2);

    Run bad = run({"predict", "--params", "standard", "--base", "10", "--k", "3"});
    CHECK(bad.code == 1);
    json e = bad.doc();
    CHECK(e["status"] == "error");
    CHECK(e["error"]["kind"] == "precondition");

    Run parse = run({"normality", "--rational", "1/0", "--base", "2"});
    CHECK(parse.code == 1);
    CHECK(parse.doc()["error"]["kind"] == "parse");
}

TEST_CASE("construct reports the sequence and a stable hash") {
    Run a = run({"construct", "--params", "standard", "--k", "5"});
    REQUIRE(a.code == 0);
    json j = a.doc();
    CHECK(j["payload"]["alpha_k"].is_string());
    Run b = run({"construct", "--params", "a=3;n2=2;rule=ones", "--k", "5"});
    REQUIRE(b.code == 0);
    CHECK(j["payload"]["d_hash"] == b.doc()["payload"]["d_hash"]);
    CHECK(a.out.substr(a.out.find("\"payload\"")) == b.out.substr(b.out.find("\"payload\"")));
    // The printed parameter text parses back to the same sequence.
    std::string text = j["payload"]["params_text"];
    Run c = run({"construct", "--params", text, "--k", "5"});
    REQUIRE(c.code == 0);
    CHECK(c.doc()["payload"]["d_hash"] == j["payload"]["d_hash"]);
}

TEST_CASE("commands") {
    json p = run({"predict", "--params", "standard", "--nine-run"}).doc();
    CHECK(p["payload"]["nine_run"]["run_count"] == 23747291560LL);
    CHECK(p["payload"]["nine_run"]["post_run_digits"] == "8528404201690728");

    json c = run({"classify", "--denominator", "15"}).doc();
    CHECK(c["payload"]["absolutely_simply_abnormal"] == true);

    json n = run({"normality", "--rational", "11/63", "--all-bases"}).doc();
    CHECK(n["payload"]["simply_normal_bases"] == json::array({2, 3}));

    json s = run({"stats", "--champernowne", "20", "--pattern", "11"}).doc();
    CHECK(s["status"] == "ok");
    CHECK(s["payload"]["pattern_count"] == 2);

    json w = run({"witness", "--params", "standard", "--k", "5"}).doc();
    CHECK(w["payload"]["liouville"]["m"] == 63);

    json t = run({"target", "--lower", "1/3", "--upper", "1/2"}).doc();
    CHECK(t["payload"]["certificate"]["certified"] == true);

    json v = run({"verify", "--suite", "lemma3", "--k-max", "40"}).doc();
    CHECK(v["payload"]["all_passed"] == true);

    json d = run({"distinguish", "--params", "standard", "--other", "phi"}).doc();
    CHECK(d["payload"]["certificate"]["k"] == 2);
}

TEST_CASE("output is deterministic") {
    std::vector<std::string> args{"predict", "--params", "phi", "--base", "10", "--k", "4"};
    CHECK(run(args).out == run(args).out);
}
