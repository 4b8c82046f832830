#pragma once

#include <string>
#include <vector>

#include "incidence_braid/families.hpp"

namespace test_support {

using namespace incidence_braid;

/// Shift-permutation specs used across the suites. The (4,1) instance uses
/// distinct shifts for the two automorphisms; the others compose a one-step
/// shift with the identity.
inline BipartiteSpec make_spec(int u, int v) {
  if (u == 1 && v == 1) return BipartiteSpec::cyclic(1, 1, 0, 0, 0, 0);
  if (u == 2 && v == 1) return BipartiteSpec::cyclic(2, 1, 1, 0, 0, 0);
  if (u == 4 && v == 1) return BipartiteSpec::cyclic(4, 1, 2, 1, 0, 0);
  if (u == 3 && v == 2) return BipartiteSpec::cyclic(3, 2, 1, 0, 1, 0);
  return BipartiteSpec::cyclic(u, v, 1, 0, 1, 0);
}

inline FamilyParams params_of(const Field& f, const std::string& eps, const std::string& alpha,
                              const std::string& beta_a, const std::string& beta_b,
                              const std::string& gamma) {
  return FamilyParams::make(f, Scalar::parse(f, eps), Scalar::parse(f, alpha),
                            Scalar::parse(f, beta_a), Scalar::parse(f, beta_b),
                            Scalar::parse(f, gamma));
}

/// One concrete member of each classified family, as used by the acceptance
/// suite: rows 1..8 in order.
inline std::vector<FamilyParams> table_rows() {
  const Field q = Field::rationals();
  const Field f2 = Field::prime(2);
  return {
      params_of(q, "1", "1", "2", "2", "3"),        // row 1
      params_of(q, "1", "1", "1", "2", "-2"),       // row 2
      params_of(f2, "1", "1", "0", "1", "1"),       // row 3
      params_of(q, "1", "-1", "1", "1", "5"),       // row 4
      params_of(q, "1", "2", "1", "1", "-1/2"),     // row 5
      params_of(q, "-1", "1", "0", "3", "7"),       // row 6
      params_of(q, "-1", "-1", "2", "0", "0"),      // row 7
      params_of(q, "-1", "3", "1", "-2", "-5/6"),   // row 8
  };
}

/// Adds one to the k-th non-group-like coefficient in deterministic order.
/// Returns false when the table has no k-th such entry.
inline bool perturb_entry(LambdaTable& lt, std::size_t k) {
  const CoalgebraBasis& bas = lt.basis();
  const Scalar one = Scalar::one(lt.field());
  std::size_t seen = 0;
  for (std::size_t src = 0; src < bas.dim2(); ++src) {
    auto [y1, y2] = bas.split2(src);
    Interval ab = bas.pair_at(y1), cd = bas.pair_at(y2);
    if (ab.lo == ab.hi && cd.lo == cd.hi) continue;
    for (const auto& entry : lt.column(src)) {
      if (seen++ == k) {
        auto [ye, yg] = bas.split2(entry.dst);
        lt.add_to_entry(ab, cd, bas.pair_at(ye), bas.pair_at(yg), one);
        return true;
      }
    }
  }
  return false;
}

}  // namespace test_support
