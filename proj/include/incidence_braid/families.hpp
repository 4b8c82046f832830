#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "incidence_braid/lambda_table.hpp"
#include "incidence_braid/report.hpp"

namespace incidence_braid {

/// Combinatorial data of the two-level family: u minimal and v maximal
/// elements with coprime u, v, and the four index permutations describing a
/// commuting pair of poset automorphisms whose composites act as full cycles
/// on each level.
struct BipartiteSpec {
  int u = 1;
  int v = 1;
  std::vector<int> sigma_a, tau_a;  // permutations of 0..u-1
  std::vector<int> sigma_b, tau_b;  // permutations of 0..v-1

  /// Shift permutations: sigma_a(i) = i + sa, tau_a(i) = i + ta (mod u) and
  /// likewise on the top level.
  static BipartiteSpec cyclic(int u, int v, int sa, int ta, int sb = 0, int tb = 0);

  /// Throws std::invalid_argument naming the violated clause.
  void validate() const;
};

/// The height-one poset with u minimal elements a0..a(u-1), v maximal
/// elements b0..b(v-1) and every a_i below every b_j.
Poset bipartite_poset(int u, int v);

/// Builds the set solution (x, y) -> (phi_l(y), phi_r(x)) from the spec's
/// permutations and validates every structural requirement.
SetSolution automorphisms_validate(const Poset& p, const BipartiteSpec& spec);

/// The scalar parameters of a candidate solution. eps squares to one and
/// alpha is nonzero; both are validated by make().
struct FamilyParams {
  Field field = Field::rationals();
  Scalar eps, alpha, beta_a, beta_b, gamma;

  static FamilyParams make(const Field& f, Scalar eps, Scalar alpha, Scalar beta_a, Scalar beta_b,
                           Scalar gamma);
};

/// Identifiers (1..8) of the parameter families containing the tuple; rows
/// may overlap. Characteristic-2 fields identify eps = 1 with eps = -1.
std::vector<int> family_membership(const FamilyParams& params);

/// Instantiates the full coefficient table for the spec and parameters:
/// the group-like entries plus every listed pattern, at all index tuples.
LambdaTable lambda_build(const BipartiteSpec& spec, const FamilyParams& params);
/// Variant reusing a prebuilt poset and solution (the per-tuple path of the
/// classification sweep).
LambdaTable lambda_build(const Poset& p, const SetSolution& sol, const BipartiteSpec& spec,
                         const FamilyParams& params);

/// beta_b (alpha - 1) = beta_a (eps alpha - 1).
bool epsilon_identity_check(const FamilyParams& params);

/// The parameter-level criterion for set-type square among the classified
/// solutions: eps = -1 with 2 Gamma = 0, or eps = 1 with
/// 2 Gamma = -2 beta_a beta_b / alpha.
bool sts_condition_check(const FamilyParams& params);

/// The equation suite tying the table to the braid verdict: constancy of the
/// distinguished coefficients, the reciprocal alpha/beta identities, the
/// epsilon identity, the seven shifted Gamma equations over every index
/// tuple, and the closed-form Gamma conditions, with their internal
/// equivalence cross-checked.
CheckReport section4_equation_suite(const LambdaTable& lt, const BipartiteSpec& spec,
                                    const FamilyParams& params);

struct SearchOptions {
  std::uint64_t max_tuples = 500000;
  int workers = 0;
  /// Every stride-th tuple is re-verified with the full enumeration.
  std::uint64_t full_crosscheck_stride = 97;
  std::size_t guard_dim = 20000;
};

struct SearchReport {
  std::uint64_t prime = 0;
  std::uint64_t tuples = 0;
  std::uint64_t braid_passing = 0;
  std::uint64_t members = 0;
  std::vector<nlohmann::json> soundness_failures;       // family member, braid fails
  std::vector<nlohmann::json> completeness_mismatches;  // braid passes outside the table
  std::uint64_t sts_checked = 0;
  std::vector<nlohmann::json> sts_agreement_mismatches;
  std::uint64_t suite_checked = 0;
  std::vector<nlohmann::json> suite_divergences;
  std::uint64_t full_crosschecked = 0;
  std::vector<nlohmann::json> full_reduced_divergences;
  std::map<int, std::uint64_t> family_counts;

  bool ok() const { return soundness_failures.empty() && sts_agreement_mismatches.empty(); }
  nlohmann::json to_json() const;
};

/// Exhaustive sweep over (eps, alpha, beta_a, beta_b, gamma) in the prime
/// field: soundness of the family table, completeness of the classification,
/// square-criterion agreement and equation-suite agreement per tuple.
/// Throws std::length_error when the tuple count exceeds the guard.
SearchReport classify_search(const BipartiteSpec& spec, std::uint64_t prime,
                             const SearchOptions& options = {});

}  // namespace incidence_braid
