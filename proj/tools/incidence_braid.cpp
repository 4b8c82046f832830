#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "incidence_braid/braid.hpp"
#include "incidence_braid/families.hpp"
#include "incidence_braid/json_io.hpp"
#include "incidence_braid/sts.hpp"

namespace ib = incidence_braid;

namespace {

struct RunConfig {
  int workers = 0;
  std::size_t guard_dim = 20000;
  std::string out_path;
  bool verbose = false;
};

void emit(const RunConfig& cfg, const nlohmann::json& j) {
  if (cfg.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    ib::write_json_file(cfg.out_path, j);
  }
}

void stream_residuals(const ib::LambdaTable& lt, const std::vector<ib::BoxInclusion<3>>& set) {
  for (const auto& inc : set) {
    ib::Scalar l = ib::lbe(lt, inc.s, inc.t);
    ib::Scalar r = ib::rbe(lt, inc.s, inc.t);
    std::cerr << ib::box_to_json(lt.poset(), inc.t).dump() << " "
              << ib::box_to_json(lt.poset(), inc.s).dump() << " lbe=" << l.str()
              << " rbe=" << r.str() << (l == r ? "" : "  <-- mismatch") << "\n";
  }
}

int cmd_build(const RunConfig& cfg, const std::string& params_path) {
  auto [spec, params] = ib::spec_params_from_json(ib::load_json_file(params_path));
  ib::LambdaTable lt = ib::lambda_build(spec, params);
  emit(cfg, ib::table_to_json(lt));
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& table_path, const std::string& mode) {
  ib::LambdaTable lt = ib::table_from_json(ib::load_json_file(table_path));
  nlohmann::json checks = nlohmann::json::array();
  bool pass = true;

  auto push = [&](const ib::CheckReport& rep, bool affects_exit = true) {
    checks.push_back(rep.to_json());
    if (affects_exit) pass = pass && rep.pass;
  };

  if (mode == "full" || mode == "all") {
    if (cfg.verbose) stream_residuals(lt, ib::all_inclusions<3>(lt.poset()));
    push(ib::verify_braid_full(lt, cfg.workers));
  }
  if (mode == "reduced" || mode == "all") {
    if (cfg.verbose && mode == "reduced") stream_residuals(lt, ib::reduced_inclusion_set(lt.poset()));
    push(ib::verify_braid_reduced(lt, cfg.workers));
  }
  if (mode == "matrix" || mode == "all") {
    ib::DefectResult defect = ib::braid_defect_matrix(lt, cfg.guard_dim, cfg.workers);
    ib::CheckReport rep;
    rep.check = "braid_defect_matrix";
    rep.pass = defect.zero;
    rep.checked = defect.dimension;
    rep.failures = defect.entries.size();
    if (!defect.zero) {
      const auto& [row, col, value] = defect.entries.front();
      rep.counterexample = nlohmann::json{{"row", row}, {"col", col}, {"value", value.str()}};
    }
    push(rep);
  }
  if (mode == "all") {
    push(ib::structural_check(lt));
    push(ib::nondegeneracy_check(lt));
    // Square-type diagnostics are informational under "all": a valid braid
    // solution need not have set-type square.
    ib::CheckReport sts_rep = ib::sts_up_to_height1_check(lt);
    push(sts_rep, false);
    ib::RSquareResult sq = ib::r_squared_check(lt, cfg.guard_dim);
    checks.push_back(nlohmann::json{{"check", "r_squared"},
                                    {"is_sts", sq.is_sts},
                                    {"phi_form_consistent", sq.phi_form_consistent},
                                    {"witness", sq.witness.is_null() ? nlohmann::json() : sq.witness}});
  }
  if (mode == "sts") {
    ib::CheckReport h1 = ib::sts_up_to_height1_check(lt);
    push(h1);
    push(ib::alphabeta_relations_check(lt));
    push(ib::periodicity_check(lt), false);
    push(ib::invariance_constants_check(lt), false);
    ib::RSquareResult sq = ib::r_squared_check(lt, cfg.guard_dim);
    checks.push_back(nlohmann::json{{"check", "r_squared"},
                                    {"is_sts", sq.is_sts},
                                    {"phi_form_consistent", sq.phi_form_consistent},
                                    {"witness", sq.witness.is_null() ? nlohmann::json() : sq.witness}});
    if (lt.poset().height() == 1 && h1.pass) {
      push(ib::height1_full_sts_check(lt), false);
    }
  }

  emit(cfg, nlohmann::json{{"schema", ib::kSchemaTag},
                           {"mode", mode},
                           {"pass", pass},
                           {"checks", checks}});
  return pass ? 0 : 1;
}

int cmd_search(const RunConfig& cfg, const std::string& spec_path, std::uint64_t prime) {
  ib::BipartiteSpec spec = ib::spec_from_json(ib::load_json_file(spec_path));
  ib::SearchOptions options;
  options.workers = cfg.workers;
  options.guard_dim = cfg.guard_dim;
  ib::SearchReport rep = ib::classify_search(spec, prime, options);
  emit(cfg, rep.to_json());
  return rep.ok() ? 0 : 1;
}

int cmd_count(const RunConfig& cfg, const std::string& poset_path, int arity) {
  ib::Poset p = ib::poset_from_json(ib::load_json_file(poset_path));
  unsigned long long n = ib::count_inclusion_pairs(p, arity);
  if (cfg.out_path.empty()) {
    std::cout << n << "\n";
  } else {
    ib::write_json_file(cfg.out_path, nlohmann::json{{"schema", ib::kSchemaTag}, {"count", n}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incidence-braid: exact construction and verification of braid-equation solutions "
               "on incidence coalgebras of finite posets"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  app.add_option("--workers", cfg.workers,
                 "Worker threads (default: INCIDENCE_BRAID_WORKERS, else 1)");
  app.add_option("--guard-dim", cfg.guard_dim, "Dimension guard for the matrix oracles");
  app.add_option("--out", cfg.out_path, "Write output to this path instead of stdout");
  app.add_flag("--verbose", cfg.verbose, "Stream per-inclusion residuals to stderr");

  std::string params_path, table_path, spec_path, poset_path;
  std::string mode = "all";
  std::uint64_t prime = 0;
  int arity = 3;

  CLI::App* build = app.add_subcommand("build", "Build a coefficient table from a params file");
  build->add_option("params", params_path, "Params JSON file")->required();

  CLI::App* verify = app.add_subcommand("verify", "Verify a coefficient table file");
  verify->add_option("table", table_path, "Table JSON file")->required();
  verify->add_option("--mode", mode, "full | reduced | matrix | sts | all")
      ->check(CLI::IsMember({"full", "reduced", "matrix", "sts", "all"}));

  CLI::App* search = app.add_subcommand("search", "Classification sweep over a prime field");
  search->add_option("spec", spec_path, "Bipartite spec JSON file")->required();
  search->add_option("--prime", prime, "Field modulus")->required();

  CLI::App* count = app.add_subcommand("count", "Count box inclusion pairs of a poset");
  count->add_option("poset", poset_path, "Poset JSON file")->required();
  count->add_option("--arity", arity, "Tensor arity (2 or 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(cfg, params_path);
    if (verify->parsed()) return cmd_verify(cfg, table_path, mode);
    if (search->parsed()) return cmd_search(cfg, spec_path, prime);
    if (count->parsed()) return cmd_count(cfg, poset_path, arity);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
