#include <doctest.h>

#include <sstream>

#include "seqderiv/cli.hpp"
#include "seqderiv/extreal.hpp"

using seqderiv::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("eval reports the value with schema and config") {
  const auto r = invoke({"eval", "--fn", "weierstrass:a=0.5,b=13", "--x", "0"});
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["schema"] == "seqderiv/1");
  CHECK(j["command"] == "eval");
  CHECK(j["result"]["value"] == 2.0);
  CHECK(j["config"]["fn"] == "weierstrass:a=0.5,b=13");
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["config"]["budget"] == 100000);
}

TEST_CASE("cord-set of abs") {
  const auto r = invoke({"cord-set", "--fn", "abs", "--x", "0"});
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["result"]["classification"] == "closed_interval");
  const auto set = j["result"]["set"].get<seqderiv::ClosedExtSet>();
  CHECK(seqderiv::hausdorff(set, seqderiv::ClosedExtSet::interval(seqderiv::ext(-1), seqderiv::ext(1))) <= 0.02);
}

TEST_CASE("verify exits 0 on the commensurable suite and reports checks") {
  const auto r = invoke({"verify", "--suite", "thm4.6", "--a", "2", "--b", "4", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("suite,check,passed,detail\n") != std::string::npos);
  CHECK(r.out.find("exp-rate,") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify exits 1 on a failing check") {
  // 100 samples leave the cord set of |x| as scattered points.
  const auto r = invoke({"verify", "--suite", "abs-cord", "--budget", "100"});
  CHECK(r.code == 1);
  CHECK(parse(r)["result"]["passed"] == false);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"nosuch"}).code == 2);
  CHECK(invoke({"eval", "--fn", "nosuch", "--x", "0"}).code == 2);
  CHECK(invoke({"eval", "--fn", "abs"}).code == 2);
  CHECK(invoke({"cord-set", "--fn", "abs", "--x", "0", "--budget", "99"}).code == 2);
  CHECK(invoke({"cord-set", "--fn", "abs", "--x", "0", "--cluster-tol", "0"}).code == 2);
  CHECK(invoke({"eval", "--fn", "abs", "--x", "0", "--format", "xml"}).code == 2);
  CHECK(invoke({"verify", "--suite", "bogus"}).code == 2);
  const auto r = invoke({"eval", "--fn", "nosuch", "--x", "0"});
  CHECK(r.out.empty());
  CHECK(r.err.find("nosuch") != std::string::npos);
}

TEST_CASE("domain errors become structured records") {
  const auto r = invoke({"eval", "--fn", "sqrt", "--x", "-1"});
  CHECK(r.code == 1);
  const auto j = parse(r);
  CHECK(j["error"]["kind"] == "domain");
  CHECK_FALSE(j.contains("result"));
  const auto c = invoke({"eval", "--fn", "sqrt", "--x", "-1", "--format", "csv"});
  CHECK(c.code == 1);
  CHECK(c.out.find("error_kind,message\ndomain,") != std::string::npos);
}

TEST_CASE("csv output: config header, '.' decimals, LF endings, quoting") {
  const auto r = invoke({"trace", "--fn", "square", "--x", "1", "--h-seq", "harmonic:0,1", "--n", "3", "--format",
                         "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# schema=seqderiv/1\n", 0) == 0);
  CHECK(r.out.find("# h_seq=harmonic:0,1\n") != std::string::npos);
  CHECK(r.out.find("n,h,k,value\n1,1,,3\n2,0.5,,2.5\n") != std::string::npos);
  CHECK(r.out.find('\r') == std::string::npos);
  const auto g = invoke({"gallery", "--format", "csv"});
  CHECK(g.out.find("\"weierstrass:a=0.5,b=13\"") != std::string::npos);
}

TEST_CASE("predictions") {
  auto j = parse(invoke({"predict-poly", "--a", "1", "--b", "3", "--m", "2", "--i-max", "1", "--j-max", "1"}));
  CHECK(j["result"]["weights"][0]["r"] == 0.75);
  j = parse(invoke({"predict-exp", "--a", "2", "--b", "4", "--t-min", "-2", "--t-max", "2"}));
  CHECK(j["result"]["classification"] == "discrete_with_accumulation");
  CHECK(j["result"]["relation"] == "rational(1, 2)");
  j = parse(invoke({"solve-target", "--fn", "abs", "--x", "0", "--target", "0.25"}));
  CHECK(std::abs(j["result"]["value"].get<double>() - 0.25) <= 1e-9);
}

TEST_CASE("identical configurations give byte-identical output") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"secant-set", "--fn", "sine_envelope:a=-1,b=2", "--x", "0", "--side", "right", "--seed", "5"},
           {"cord-set", "--fn", "glued_g:a=-1,b=2,c=-3,d=1", "--x", "0", "--format", "csv"},
           {"verify", "--suite", "kernel", "--seed", "9"}}) {
    const auto a = invoke(args), b = invoke(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  const auto s1 = invoke({"verify", "--suite", "kernel", "--seed", "1"});
  const auto s2 = invoke({"verify", "--suite", "kernel", "--seed", "2"});
  CHECK(s1.out != s2.out);
}

TEST_CASE("help exits 0") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cord-set") != std::string::npos);
}
