#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "incidence_braid/braid.hpp"
#include "incidence_braid/json_io.hpp"
#include "test_support.hpp"

using namespace incidence_braid;
using test_support::make_spec;
using test_support::params_of;

namespace {

const std::string kCli = IB_CLI_PATH;
const std::string kTmp = IB_TEST_TMPDIR;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = kTmp + "/cli_stdout.txt";
  const std::string cmd = kCli + " " + args + " > " + out_path + " 2> " + kTmp + "/cli_stderr.txt";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return {WEXITSTATUS(status), buffer.str()};
}

std::string write_tmp(const std::string& name, const nlohmann::json& j) {
  const std::string path = kTmp + "/" + name;
  write_json_file(path, j);
  return path;
}

std::string params_file(const char* name, int u, int v, const FamilyParams& params) {
  return write_tmp(name, spec_params_to_json(make_spec(u, v), params));
}

}  // namespace

TEST_CASE("build writes a loadable table") {
  const Field q = Field::rationals();
  std::string in = params_file("params_row1.json", 1, 1, params_of(q, "1", "1", "2", "2", "3"));
  std::string out = kTmp + "/table_row1.json";
  RunResult res = run_cli("build " + in + " --out " + out);
  CHECK(res.exit_code == 0);

  LambdaTable lt = table_from_json(load_json_file(out));
  CHECK(lt.entry_count() == 25);
  CHECK(lt.coeff({0, 1}, {0, 1}, {1, 1}, {1, 1}) == Scalar(q, -11));
}

TEST_CASE("build rejects invalid parameters with exit 2") {
  const Field q = Field::rationals();
  nlohmann::json j = spec_params_to_json(make_spec(1, 1), params_of(q, "1", "1", "2", "2", "3"));
  j["alpha"] = "0";
  CHECK(run_cli("build " + write_tmp("params_alpha0.json", j)).exit_code == 2);

  nlohmann::json coprime = spec_params_to_json(make_spec(1, 1), params_of(q, "1", "1", "2", "2", "3"));
  coprime["u"] = 2;
  coprime["v"] = 2;
  coprime["sigma_a"] = {1, 0};
  coprime["tau_a"] = {0, 1};
  coprime["sigma_b"] = {1, 0};
  coprime["tau_b"] = {0, 1};
  CHECK(run_cli("build " + write_tmp("params_coprime.json", coprime)).exit_code == 2);
}

TEST_CASE("verify modes and exit codes") {
  const Field q = Field::rationals();
  LambdaTable lt = lambda_build(make_spec(1, 1), params_of(q, "1", "1", "2", "2", "3"));
  std::string table = write_tmp("table_verify.json", table_to_json(lt));

  RunResult all = run_cli("verify " + table + " --mode all");
  CHECK(all.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(all.out);
  CHECK(rep.at("pass").get<bool>());
  bool saw_full = false;
  for (const auto& check : rep.at("checks")) {
    if (check.at("check") == "braid_full") {
      saw_full = true;
      CHECK(check.at("checked").get<int>() == 125);
      CHECK(check.at("pass").get<bool>());
    }
  }
  CHECK(saw_full);

  for (const char* mode : {"full", "reduced", "matrix", "sts"}) {
    CHECK(run_cli("verify " + table + " --mode " + mode).exit_code == 0);
  }

  // A braid-failing table exits 1 and reports a witness inclusion.
  LambdaTable bad = lambda_build(make_spec(1, 1), params_of(q, "1", "2", "1", "1", "0"));
  std::string bad_table = write_tmp("table_bad.json", table_to_json(bad));
  RunResult failed = run_cli("verify " + bad_table + " --mode full");
  CHECK(failed.exit_code == 1);
  nlohmann::json bad_rep = nlohmann::json::parse(failed.out);
  CHECK_FALSE(bad_rep.at("pass").get<bool>());
  CHECK_FALSE(bad_rep.at("checks").at(0).at("counterexample").is_null());

  // Malformed input exits 2.
  std::ofstream truncated(kTmp + "/table_truncated.json");
  truncated << "{\"schema\": \"incidence-braid/1\", \"field\": {";
  truncated.close();
  CHECK(run_cli("verify " + kTmp + "/table_truncated.json").exit_code == 2);
}

TEST_CASE("reports are byte-identical across worker counts") {
  const Field q = Field::rationals();
  LambdaTable lt = lambda_build(make_spec(2, 1), params_of(q, "-1", "3", "1", "-2", "-5/6"));
  std::string table = write_tmp("table_workers.json", table_to_json(lt));
  RunResult one = run_cli("verify " + table + " --mode all --workers 1");
  RunResult four = run_cli("verify " + table + " --mode all --workers 4");
  CHECK(one.exit_code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("search sweeps and validates the modulus") {
  std::string spec = write_tmp("spec_11.json", nlohmann::json{{"u", 1}, {"v", 1}});
  RunResult res = run_cli("search " + spec + " --prime 3");
  CHECK(res.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(res.out);
  CHECK(rep.at("tuples").get<int>() == 108);
  CHECK(rep.at("soundness").at("pass").get<bool>());
  CHECK(rep.at("completeness").at("pass").get<bool>());
  CHECK(rep.at("sts_agreement").at("pass").get<bool>());

  CHECK(run_cli("search " + spec + " --prime 4").exit_code == 2);
}

TEST_CASE("count prints inclusion pair totals") {
  Poset chain = Poset::from_covers({"x", "y"}, {{"x", "y"}});
  std::string poset = write_tmp("poset_chain.json", poset_to_json(chain));
  RunResult res = run_cli("count " + poset + " --arity 3");
  CHECK(res.exit_code == 0);
  CHECK(res.out == "125\n");
  CHECK(run_cli("count " + poset + " --arity 2").out == "25\n");

  Poset point = Poset::from_covers({"x"}, {});
  std::string ppath = write_tmp("poset_point.json", poset_to_json(point));
  CHECK(run_cli("count " + ppath + " --arity 3").out == "1\n");
}

TEST_CASE("table files round trip") {
  const Field f5 = Field::prime(5);
  LambdaTable lt = lambda_build(make_spec(2, 1), params_of(f5, "-1", "2", "1", "4", "0"));
  LambdaTable back = table_from_json(table_to_json(lt));
  CHECK(back.entry_count() == lt.entry_count());
  const CoalgebraBasis& bas = lt.basis();
  for (std::size_t src = 0; src < bas.dim2(); ++src) {
    auto [y1, y2] = bas.split2(src);
    for (const auto& entry : lt.column(src)) {
      auto [ye, yg] = bas.split2(entry.dst);
      CHECK(back.coeff(y1, y2, ye, yg) == entry.value);
    }
  }
}

TEST_CASE("malformed table entries are rejected on load") {
  const Field q = Field::rationals();
  LambdaTable lt = lambda_build(make_spec(1, 1), params_of(q, "1", "1", "2", "2", "3"));
  nlohmann::json j = table_to_json(lt);
  // Out-of-support destination.
  j["entries"].push_back(nlohmann::json{
      {"src", {{"a0", "a0"}, {"a0", "a0"}}}, {"dst", {{"a0", "b0"}, {"a0", "a0"}}}, {"coeff", "1"}});
  CHECK_THROWS_AS(table_from_json(j), std::invalid_argument);
}

TEST_CASE("worker environment variable is honored") {
  const Field q = Field::rationals();
  LambdaTable lt = lambda_build(make_spec(1, 1), params_of(q, "1", "1", "2", "2", "3"));
  std::string table = write_tmp("table_env.json", table_to_json(lt));
  const std::string out_path = kTmp + "/cli_env_stdout.txt";
  const std::string cmd = "INCIDENCE_BRAID_WORKERS=3 " + kCli + " verify " + table +
                          " --mode reduced > " + out_path + " 2>/dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  RunResult direct = run_cli("verify " + table + " --mode reduced --workers 1");
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == direct.out);
}
