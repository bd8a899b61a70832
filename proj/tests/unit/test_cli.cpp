#include "torcx/cli.hpp"
#include "torcx/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace torcx;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  fs::path dir;
  json report;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& tag) {
  auto d = fs::temp_directory_path() / ("torcx_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string scenario(const std::string& name) {
  return std::string(TORCX_SOURCE_DIR) + "/scenarios/" + name + ".json";
}

Run run(const std::string& command, const std::string& config, const std::string& tag,
        std::vector<std::string> extra = {}) {
  Run r;
  r.dir = scratch(tag);
  std::vector<std::string> args{command};
  if (!config.empty()) {
    args.push_back("--config");
    args.push_back(config);
  }
  args.push_back("--out");
  args.push_back((r.dir / "out").string());
  for (auto& e : extra) args.push_back(e);
  std::ostringstream o, e;
  r.code = run_cli(args, o, e);
  r.out = o.str();
  r.err = e.str();
  const auto rep = r.dir / "out" / (command + ".json");
  if (fs::exists(rep)) r.report = json::parse(slurp(rep));
  return r;
}

std::string write_config(const std::string& tag, const std::string& text) {
  const auto d = scratch(tag + "_cfg");
  const auto p = d / "config.json";
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("cli: rational a0 analyze") {
  const auto r = run("analyze", scenario("rational-a0"), "rat");
  REQUIRE(r.code == kExitOk);
  const auto& d = r.report["diophantine"];
  CHECK(d["verdict"]["tag"] == "rational");
  CHECK(d["verdict"]["q0"] == "6");
  CHECK(d["lower_bound"]["C0"] == "1/3");
  CHECK(d["lower_bound"]["C0_coarse"] == "1/12");
  CHECK(r.report["scan"]["exact_min_norm_sq"] == "1/9");
  CHECK(r.report["scan"]["zero_slices"] == 4);
  CHECK(r.report["precision"]["arithmetic"] == "exact");
  CHECK(r.report["box"]["H"] == 12);
  CHECK(r.report["config_hash"].get<std::string>().size() == 64);
  CHECK(r.report["tolerances"].contains("lambda_max"));
  const auto csv = slurp(r.dir / "out" / "scatter.csv");
  CHECK(csv.rfind("size,norm\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == r.report["scan"]["nonzero"].get<long>() + 1);
}

TEST_CASE("cli: reports are byte-identical across runs and thread counts") {
  const auto a = run("analyze", scenario("rational-a0"), "det_a", {"--threads", "1"});
  const auto b = run("analyze", scenario("rational-a0"), "det_b", {"--threads", "3"});
  CHECK(slurp(a.dir / "out" / "analyze.json") == slurp(b.dir / "out" / "analyze.json"));
  CHECK(slurp(a.dir / "out" / "scatter.csv") == slurp(b.dir / "out" / "scatter.csv"));
  const auto c = run("solve", scenario("rational-a0"), "det_c", {"--float", "--seed", "3"});
  const auto d = run("solve", scenario("rational-a0"), "det_d", {"--float", "--seed", "3"});
  CHECK(slurp(c.dir / "out" / "solve.json") == slurp(d.dir / "out" / "solve.json"));
  CHECK(slurp(c.dir / "out" / "solution.json") == slurp(d.dir / "out" / "solution.json"));
  CHECK(c.report["seed"] == 3);
}

TEST_CASE("cli: Liouville a0") {
  const auto a = run("analyze", scenario("liouville-a0"), "liou_a");
  REQUIRE(a.code == kExitOk);
  CHECK(a.report["diophantine"]["verdict"]["tag"] == "liouville_witnessed");
  CHECK_FALSE(a.report["diophantine"]["verdict"]["witness"].empty());
  CHECK(a.report["diophantine"]["verdict"]["precision_digits"] == 200);

  const auto w = run("witness", scenario("liouville-a0"), "liou_w");
  REQUIRE(w.code == kExitOk);
  const auto& terms = w.report["witness"]["terms"];
  REQUIRE(terms.size() == 3);
  for (const auto& t : terms) {
    CHECK(t["divisor_ok"] == true);
    CHECK(t["decay_ok"] == true);
  }
  CHECK(terms[2]["size"] == "1000000000000000000000000");
  CHECK(w.report["witness"]["forced_coeffs"].size() == 3);
  CHECK(w.report["blowup"]["solve_confirms"] == true);
  CHECK(fs::exists(w.dir / "out" / "witness_f.json"));
}

TEST_CASE("cli: golden ratio has no witness") {
  const auto a = run("analyze", scenario("golden"), "gold_a");
  CHECK(a.code == kExitOk);
  CHECK(a.report["diophantine"]["verdict"]["tag"] == "no_witness_found");
  const auto w = run("witness", scenario("golden"), "gold_w");
  CHECK(w.code == kExitNoWitness);
  CHECK(w.report["exit_code"] == kExitNoWitness);
}

TEST_CASE("cli: liouville pair") {
  const auto a = run("analyze", scenario("liouville-pair"), "pair");
  REQUIRE(a.code == kExitOk);
  const auto& d = a.report["diophantine"];
  CHECK(d["components"][0]["found"] == true);
  CHECK(d["components"][1]["found"] == true);
  CHECK(d["verdict"]["tag"] == "no_witness_found");
}

TEST_CASE("cli: config errors exit 2") {
  CHECK(run("analyze", "", "noconf").code == kExitConfig);
  CHECK(run("witness", "", "noconf_w").code == kExitConfig);
  CHECK(run("analyze", "/nonexistent/config.json", "missing").code == kExitConfig);

  const auto bad = run("analyze", write_config("syntax", "{\n  \"system\": {\n    \"n\": 1,,\n}\n"), "syntax");
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("line 3") != std::string::npos);

  const std::string sys = R"("system": {"n": 1, "N": 1, "symbols": [{"kind": "linear", "a": "1/2"}]})";
  const auto empty = run("analyze", write_config("empty", "{" + sys + R"(, "box": {"H": 0, "X": 0}})"), "empty");
  CHECK(empty.code == kExitConfig);
  CHECK(empty.err.find("empty box") != std::string::npos);

  const auto kind = run("analyze",
                        write_config("kind", R"({"system": {"n": 1, "N": 1, "symbols": [{"kind": "cubic"}]},
                                                 "box": {"H": 2, "X": 2}})"),
                        "kind");
  CHECK(kind.code == kExitConfig);
  CHECK(kind.err.find("/system/symbols/0/kind") != std::string::npos);

  CHECK(run("analyze", scenario("golden"), "flags", {"--exact", "--float"}).code == kExitConfig);
}

TEST_CASE("cli: solve") {
  const auto m = run("solve", scenario("rational-a0"), "solve_m");
  REQUIRE(m.code == kExitOk);
  CHECK(m.report["solve"]["residual_inf"] == 0.0);
  CHECK(m.report["rhs"]["manufactured"] == true);
  const auto mf = run("solve", scenario("rational-a0"), "solve_mf", {"--float"});
  REQUIRE(mf.code == kExitOk);
  CHECK(mf.report["solve"]["residual_inf"].get<double>() <= 1e-10);
  CHECK(mf.report["precision"]["arithmetic"] == "float");

  const std::string sys = R"("system": {"n": 2, "N": 1, "symbols": [{"kind": "linear", "a": "1/2"},
                                                                   {"kind": "linear", "a": "1/3"}]},
                               "box": {"H": 4, "X": 4}, "precision": {"arithmetic": "exact"})";
  const auto zero = run("solve", write_config("zero", "{" + sys + R"(, "solve": {"f": {"n": 2, "N": 1, "degree": 1, "terms": []}}})"),
                        "solve_zero");
  REQUIRE(zero.code == kExitOk);
  const auto u = json::parse(slurp(zero.dir / "out" / "solution.json"));
  CHECK(u["terms"].empty());
  CHECK(u["degree"] == 0);

  // L^(1, 0, 0) = i dt1 does not annihilate dt2
  const std::string f = R"({"n": 2, "N": 1, "degree": 1,
                             "terms": [{"K": [2], "eta": [1, 0], "xi": [0], "re": "1", "im": "0"}]})";
  const auto inc = run("solve", write_config("inc", "{" + sys + R"(, "solve": {"f": )" + f + "}}"), "solve_inc");
  CHECK(inc.code == kExitCompatibility);
  CHECK_FALSE(inc.report["compatibility"]["offenders"].empty());
  CHECK(inc.err.find("compatibility") != std::string::npos);

  const auto ff = write_config("ffile", f);
  const auto via = run("solve", write_config("via", "{" + sys + "}"), "solve_via", {"--f", ff});
  CHECK(via.code == kExitCompatibility);
}

TEST_CASE("cli: reduce") {
  const auto mg = run("reduce",
                      write_config("mg", R"({"name": "mixed-growth-small", "system": {"named": "mixed-growth"},
                                             "box": {"H": 8, "X": 8}, "seed": 5,
                                             "reduce": {"trials": 1, "degrees": [0, 1]}})"),
                      "red_mg");
  REQUIRE(mg.code == kExitOk);
  CHECK(mg.report["classification"]["L_set"] == json::array({1, 2, 3}));
  CHECK(mg.report["classification"]["reduction_applies"] == true);
  CHECK(mg.report["conjugation"]["max_residual"].get<double>() <= 1e-8);
  CHECK(mg.report["conjugation"]["seed"] == 5);
  CHECK(mg.report["condition_D"]["verdict"] == "pass");
  CHECK(mg.report["condition_D"]["fit"].contains("kappa"));
  CHECK(mg.report["condition_D"]["per_xi"][0].contains("sup_exp_im"));

  const auto sd = run("reduce", scenario("sign-definite"), "red_sd");
  REQUIRE(sd.code == kExitOk);
  CHECK(sd.report["condition_D"]["source"] == "decoupled partial integrals");
  CHECK(sd.report["condition_D"]["max_partial_S"].get<double>() <= 1.0);
  CHECK(sd.report["classification"]["L_set"].empty());

  const auto pi = run("reduce", scenario("positive-im"), "red_pi");
  REQUIRE(pi.code == kExitOk);
  CHECK(pi.report["condition_D"]["verdict"] == "fail");
  CHECK(pi.report["condition_D"]["fit"]["super_polynomial"] == true);
  CHECK_FALSE(pi.report["notes"].empty());

  const auto rf = run("reduce", scenario("real-form"), "red_rf");
  REQUIRE(rf.code == kExitOk);
  CHECK(rf.report["condition_D"]["im_identically_zero"] == true);
  CHECK(rf.report["condition_D"]["fit"]["kappa"] == 0.0);
  CHECK(rf.report["classification"].is_null());
}

TEST_CASE("cli: reduce edge profiles") {
  const std::string sys2 = R"("n": 2, "N": 1, "symbols": [{"kind": "linear", "a": "1"}, {"kind": "linear", "a": "1"}])";
  const auto c = run("reduce",
                     write_config("const", R"({"system": {)" + sys2 + R"(,
                        "coefficients": [{"j": 1, "kind": "constant", "value": "1/2"},
                                         {"j": 2, "kind": "constant", "value": {"re": "1", "im": "1/3"}}]},
                        "box": {"H": 4, "X": 4}, "reduce": {"trials": 2}})"),
                     "red_const");
  REQUIRE(c.code == kExitOk);
  CHECK(c.report["condition_D"]["im_identically_zero"] == true);
  CHECK(c.report["normal_form"]["max_C_bandwidth"] == 0);
  CHECK(c.report["conjugation"]["max_residual"].get<double>() <= 1e-12);

  const auto nc = run("reduce",
                      write_config("nonclosed", R"({"system": {)" + sys2 + R"(,
                         "coefficients": [{"j": 1, "kind": "trig", "terms": [{"eta": [0, 1], "re": "1/2"},
                                                                            {"eta": [0, -1], "re": "1/2"}]}]},
                         "box": {"H": 4, "X": 2}})"),
                      "red_nc");
  CHECK(nc.code == kExitClosedness);
  CHECK_FALSE(nc.report["closedness"]["offenders"].empty());

  const auto none = run("reduce", scenario("golden"), "red_none");
  CHECK(none.code == kExitConfig);
}

TEST_CASE("config: real constants") {
  CHECK(real_from_json(json("1/3")).is_exact());
  CHECK(real_from_json(json(0.25)).lo == Rational(1, 4));
  const auto d = real_from_json(json("0.333"));
  CHECK(d.digits == 3);
  const auto g = real_from_json(json::parse(R"({"golden": 30})"));
  CHECK(g.to_double() == doctest::Approx(1.6180339887));
  const auto f = real_from_json(json::parse(R"({"factorial_series": {"base": 2, "digits": 40}})"));
  CHECK(f.to_double() == doctest::Approx(0.5 + 0.25 + 1.0 / 64 + 1.0 / 16777216));
  CHECK(f.width() <= Rational(BigInt(1), ipow10(40)));
  const auto p = real_from_json(json::parse(R"({"product": [{"root": {"of": "9/4", "index": 2, "digits": 10}}, "2/3"]})"));
  CHECK(p.is_exact());
  CHECK(p.lo == 1);
  CHECK_THROWS_AS(real_from_json(json::parse(R"({"pi": 10})")), ConfigError);
  CHECK(config_hash(json::parse(R"({"b": 1, "a": 2})")) == config_hash(json::parse(R"({"a":2,"b":1})")));
}
