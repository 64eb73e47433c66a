#include "genfib/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = genfib::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parsed(const CliResult& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("seq prints the requested window") {
  auto r = run_cli({"seq", "--k", "2", "--family", "fib", "--from", "-3", "--to", "6"});
  CHECK(r.code == 0);
  CHECK(r.out == "5 -2 1 0 1 2 5 12 29 70\n");
  CHECK(r.err.empty());

  auto single = run_cli({"seq", "--k", "1", "--n", "10"});
  CHECK(single.code == 0);
  CHECK(single.out == "55\n");

  auto csv = run_cli({"--format", "csv", "seq", "--k", "1", "--from", "1", "--to", "3"});
  CHECK(csv.out == "n,value\n1,1\n2,1\n3,2\n");

  auto conflict = run_cli({"seq", "--k", "1", "--n", "2", "--from", "0", "--to", "4"});
  CHECK(conflict.code == 2);
  CHECK(conflict.err.find("--n excludes --from/--to") != std::string::npos);
}

TEST_CASE("json envelope carries the fixed keys") {
  auto r = run_cli({"--format", "json", "seq", "--k", "1", "--n", "3"});
  auto ordered = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = ordered.begin(); it != ordered.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "params", "payload", "summary", "elapsed_ms"});
  auto j = parsed(r);
  CHECK(j.at("command") == "seq");
  CHECK(j.contains("params"));
  CHECK(j.contains("payload"));
  CHECK(j.contains("summary"));
  CHECK(j.contains("elapsed_ms"));
  CHECK(j.at("payload").at("values") == nlohmann::json::array({2}));
}

TEST_CASE("binom rows and integrality flags") {
  auto lucas = run_cli({"binom", "--k", "1", "--family", "lucas", "--n", "4"});
  CHECK(lucas.out == "1 7 28/3 7 1\n");

  auto j = parsed(run_cli({"--format", "json", "binom", "--k", "1", "--family", "lucas", "--n", "4"}));
  CHECK(j.at("payload").at("all_integer") == false);
  CHECK(j.at("summary").get<std::string>().find("28/3") != std::string::npos);

  auto cell = run_cli({"binom", "--k", "2", "--n", "4", "--j", "2"});
  CHECK(cell.out == "30\n");

  auto bad = run_cli({"binom", "--k", "1", "--n", "3", "--j", "5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("hankel determinant output") {
  auto det = run_cli({"hankel", "--k", "1", "--alpha", "1", "--n", "2"});
  CHECK(det.code == 0);
  CHECK(det.out == "-1/360\n");

  auto verb = run_cli({"hankel", "--k", "1", "--alpha", "1", "--n", "2", "--mode", "verbatim"});
  CHECK(verb.code == 0);
  CHECK(verb.out == "-1/360\nprinted formula: -1/60 (differs from the oracle)\n");

  auto lucas = run_cli({"--format", "json", "hankel", "--k", "1", "--family", "lucas",
                        "--alpha", "1", "--n", "1"});
  auto payload = parsed(lucas).at("payload");
  CHECK(payload.at("det") == "5/36");
  CHECK(payload.at("printed_form") == "-1/12");
  CHECK(payload.at("printed_matches") == false);
}

TEST_CASE("hankel inverse output") {
  auto r = run_cli({"--format", "json", "hankel", "--k", "1", "--alpha", "1", "--n", "2",
                    "--show", "inverse"});
  auto payload = parsed(r).at("payload");
  nlohmann::json want = {{4, 12, -30}, {12, 18, -60}, {-30, -60, 180}};
  CHECK(payload.at("inverse") == want);
  CHECK(payload.at("all_integer") == true);
  CHECK(payload.at("matches_closed_form") == true);
  CHECK(payload.at("matches_kernel_form") == true);

  auto lucas = run_cli({"--format", "json", "hankel", "--k", "1", "--family", "lucas",
                        "--alpha", "1", "--n", "1", "--show", "inverse"});
  auto lp = parsed(lucas).at("payload");
  nlohmann::json lwant = nlohmann::json::array(
      {nlohmann::json::array({"9/5", "-12/5"}), nlohmann::json::array({"-12/5", "36/5"})});
  CHECK(lp.at("inverse") == lwant);
  CHECK(lp.at("all_integer") == false);
}

TEST_CASE("orthopoly views") {
  auto mom = run_cli({"orthopoly", "--k", "1", "--n", "4", "--show", "moments"});
  CHECK(mom.out == "1 1 1/2 1/3 1/5\n");

  auto basis = run_cli({"orthopoly", "--k", "1", "--n", "2"});
  CHECK(basis.out ==
        "P_0 = 1, h_0 = 1\n"
        "P_1 = x - 1, h_1 = -1/2\n"
        "P_2 = x^2 - (1/3)x - 1/6, h_2 = 1/180\n");

  auto qj = parsed(run_cli({"--format", "json", "orthopoly", "--k", "1", "--n", "1",
                            "--show", "qjacobi"}));
  CHECK(qj.at("payload").at("coefficients") == nlohmann::json::array({"1", "-1"}));

  auto gram = run_cli({"--format", "json", "orthopoly", "--k", "1", "--family", "lucas",
                       "--alpha", "1", "--n", "2", "--show", "gram"});
  auto gp = parsed(gram).at("payload");
  CHECK(gp.at("off_diagonal_zero") == false);
  CHECK(gp.at("violation").at("i") == 0);
  CHECK(gp.at("violation").at("j") == 2);
  CHECK(gp.at("violation").at("value") == "8/3");
  CHECK(parsed(gram).at("summary").get<std::string>().find("(0, 2) = 8/3") !=
        std::string::npos);

  auto fib_gram = run_cli({"--format", "json", "orthopoly", "--k", "1", "--n", "3",
                           "--show", "gram"});
  auto fp = parsed(fib_gram).at("payload");
  CHECK(fp.at("diagonal") == nlohmann::json::array({"1", "-1/2", "1/5", "-1/13"}));
  CHECK(fp.at("corrected_law_holds") == true);
  CHECK(fp.at("printed_law_first_failure") == 1);
}

TEST_CASE("identity verify at a single binding") {
  auto r = run_cli({"identity", "verify", "--id", "l-product-shift", "--k", "1", "--n", "1",
                    "--i", "0", "--j", "0", "--alpha", "1"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "verbatim : lhs = 14, rhs = 4 (fails)\n"
        "corrected: lhs = 4, rhs = 4 (holds)\n");

  auto j = parsed(run_cli({"--format", "json", "identity", "verify", "--id", "l-product-shift",
                           "--k", "1", "--n", "1", "--i", "0", "--j", "0", "--alpha", "1"}));
  CHECK(j.at("payload").at("verbatim").at("holds") == false);
  CHECK(j.at("payload").at("corrected").at("holds") == true);
  CHECK(j.at("payload").at("has_correction") == true);
}

TEST_CASE("identity verify sweeps one id when no binding is given") {
  auto r = parsed(run_cli({"--format", "json", "identity", "verify", "--id", "cassini",
                           "--k", "2"}));
  CHECK(r.at("payload").at("status") == "holds");
  CHECK(r.at("payload").at("instances").get<long long>() > 0);
  CHECK_FALSE(r.at("payload").contains("unexpected"));
}

TEST_CASE("identity sweep reports the pinned counts") {
  auto r = run_cli({"--format", "json", "identity", "sweep"});
  CHECK(r.code == 0);
  auto j = parsed(r);
  CHECK(j.at("summary") ==
        "identities: 34 corrected-pass, 13 printed-fail (documented), 0 unexpected");
  auto counts = j.at("payload").at("counts");
  CHECK(counts.at("total") == 34);
  CHECK(counts.at("hold") == 21);
  CHECK(counts.at("hold_with_correction") == 13);
  CHECK(counts.at("unexpected") == 0);
}

TEST_CASE("identity fit solves the ansatz") {
  auto r = parsed(run_cli({"--format", "json", "identity", "fit", "--id", "cube-diff-far-up-gen", "--k", "2"}));
  CHECK(r.at("payload").at("found") == true);
  CHECK(r.at("payload").at("coefficients") == nlohmann::json::array({"8", "15"}));

  auto no_route = run_cli({"identity", "fit", "--id", "cassini", "--k", "2"});
  CHECK(no_route.code == 2);
  CHECK(no_route.err.find("no solver route") != std::string::npos);
}

TEST_CASE("pell classify payload is exactly the contract") {
  auto r = run_cli({"--format", "json", "pell", "classify", "--k", "3", "--n", "33"});
  CHECK(r.code == 0);
  auto p = parsed(r).at("payload");
  CHECK(p.size() == 4);
  CHECK(p.at("member") == true);
  CHECK(p.at("index") == 4);
  CHECK(p.at("companion") == 119);
  nlohmann::json trace = {{33, 119}, {10, 36}, {3, 11}, {1, 3}};
  CHECK(p.at("trace") == trace);

  auto miss = parsed(run_cli({"--format", "json", "pell", "classify", "--k", "3", "--n", "2"}));
  auto mp = miss.at("payload");
  CHECK(mp.size() == 3);
  CHECK(mp.at("member") == false);
  CHECK(mp.at("disc_plus") == 56);
  CHECK(mp.at("disc_minus") == 48);

  auto even = run_cli({"--format", "json", "pell", "classify", "--k", "2", "--n", "2",
                       "--allow-even-k"});
  auto ep = parsed(even).at("payload");
  CHECK(ep.at("member") == true);
  CHECK(ep.at("index") == 2);
  CHECK(ep.at("companion") == 6);
  CHECK(ep.at("verified_by_theorem") == false);

  auto refused = run_cli({"pell", "classify", "--k", "2", "--n", "2"});
  CHECK(refused.code == 2);
  CHECK(refused.err.rfind("error: ", 0) == 0);
}

TEST_CASE("pell solve and enumerate") {
  auto r = run_cli({"pell", "solve", "--k", "2", "--x", "5", "--y", "12"});
  CHECK(r.out.rfind("(5, 12) = (F_3, F_4), sign -1\n", 0) == 0);

  auto empty = run_cli({"pell", "enumerate", "--k", "1", "--bound", "0"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "no solutions ≤ bound\n");
  auto ej = parsed(run_cli({"--format", "json", "pell", "enumerate", "--k", "1", "--bound", "0"}));
  CHECK(ej.at("payload").at("solutions") == nlohmann::json::array());

  auto csv = run_cli({"--format", "csv", "pell", "enumerate", "--k", "2", "--bound", "5"});
  CHECK(csv.out == "n,x,y,sign\n1,1,2,-1\n2,2,5,1\n3,5,12,-1\n");

  auto brute_guard = run_cli({"pell", "brute", "--k", "1", "--bound", "2000000"});
  CHECK(brute_guard.code == 2);
  CHECK(brute_guard.err.find("brute force bound exceeds 10^6") != std::string::npos);
}

TEST_CASE("pell surface and scan summaries") {
  auto s = parsed(run_cli({"--format", "json", "pell", "surface", "--k", "1", "--bound", "50"}));
  auto sp = s.at("payload");
  CHECK(sp.at("counts").at("total") == 1225);
  CHECK(sp.at("counts").at("consecutive") == 14);
  CHECK(sp.at("characterization_holds") == true);
  CHECK(sp.at("suspicion_refuted") == true);
  CHECK(sp.at("witness").at("x") == 2);
  CHECK(sp.at("witness").at("y") == 2);
  CHECK(sp.at("witness").at("z") == 4);

  auto sc = parsed(run_cli({"--format", "json", "pell", "scan", "--k", "3", "--bound", "1000"}));
  auto pp = sc.at("payload");
  CHECK(pp.at("members") == nlohmann::json::array({1, 3, 10, 33, 109, 360}));
  CHECK(pp.at("indices") == nlohmann::json::array({1, 2, 3, 4, 5, 6}));
  CHECK(pp.at("matches_sequence") == true);
}

TEST_CASE("convolve and cf output") {
  auto c = run_cli({"convolve", "--k", "1", "--m", "3", "--n", "5"});
  CHECK(c.out == "S_3(5) = 9\n");
  auto cj = parsed(run_cli({"--format", "json", "convolve", "--k", "1", "--m", "3", "--n", "5"}));
  CHECK(cj.at("payload").at("value") == 9);
  CHECK(cj.at("payload").at("all_agree") == true);

  auto f = run_cli({"cf", "--k", "1", "--m", "2", "--t", "2"});
  CHECK(f.out == "value = 8/3\nquotients: 3 3 (sign -1)\n");
  auto fj = parsed(run_cli({"--format", "json", "cf", "--k", "1", "--m", "2", "--t", "2"}));
  CHECK(fj.at("payload").at("quotients") == nlohmann::json::array({3, 3}));
  CHECK(fj.at("payload").at("sign") == -1);
  CHECK(fj.at("payload").at("value") == "8/3");
  CHECK(fj.at("payload").at("depth_matches_m") == true);
}

TEST_CASE("usage failures exit with 2") {
  auto unknown = run_cli({"bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.rfind("usage error: ", 0) == 0);

  auto missing = run_cli({"seq", "--n", "3"});
  CHECK(missing.code == 2);

  auto bad_format = run_cli({"--format", "xml", "seq", "--k", "1", "--n", "1"});
  CHECK(bad_format.code == 2);

  auto bad_show = run_cli({"hankel", "--k", "1", "--n", "2", "--show", "trace"});
  CHECK(bad_show.code == 2);

  auto bad_id = run_cli({"identity", "verify", "--id", "nope", "--k", "1"});
  CHECK(bad_id.code == 2);
  CHECK(bad_id.err.rfind("error: ", 0) == 0);

  auto too_big = run_cli({"hankel", "--k", "1", "--n", "13"});
  CHECK(too_big.code == 2);

  auto bad_n = run_cli({"pell", "classify", "--k", "3", "--n", "abc"});
  CHECK(bad_n.code == 2);

  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("genfib") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> plain_args = {"hankel", "--k", "1", "--alpha", "1", "--n", "2"};
  CHECK(run_cli(plain_args).out == run_cli(plain_args).out);

  std::vector<std::string> csv_args = {"--format", "csv", "pell", "enumerate", "--k", "2",
                                       "--bound", "100"};
  CHECK(run_cli(csv_args).out == run_cli(csv_args).out);

  std::vector<std::string> json_args = {"--format", "json", "identity", "verify", "--id",
                                        "cassini", "--k", "2"};
  auto a = parsed(run_cli(json_args));
  auto b = parsed(run_cli(json_args));
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  CHECK(a == b);
}

TEST_CASE("verify-all reports the errata ledger and exits clean") {
  auto r = run_cli({"--format", "json", "verify-all"});
  CHECK(r.code == 0);
  auto j = parsed(r);
  CHECK(j.at("summary") ==
        "identities: 34 corrected-pass, 13 printed-fail (documented), 0 unexpected");
  auto errata = j.at("payload").at("errata");
  REQUIRE(errata.is_array());
  CHECK(errata.size() >= 20);
  for (const auto& e : errata) {
    std::string status = e.at("status").get<std::string>();
    bool known = status == "holds-as-printed" || status == "holds-with-correction" ||
                 status == "refuted-as-stated" || status == "noted-open";
    CHECK(known);
    CHECK_FALSE(e.at("topic").get<std::string>().empty());
    CHECK_FALSE(e.at("evidence").get<std::string>().empty());
  }
  CHECK(j.at("payload").at("identities").at("unexpected") == 0);
  CHECK(j.at("payload").at("identities").at("total") == 34);
}
