#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "incidence_braid/coalgebra.hpp"
#include "incidence_braid/lambda_table.hpp"
#include "incidence_braid/report.hpp"

namespace incidence_braid {

/// Verifies the structural conditions a coefficient table must satisfy to
/// define a non-degenerate coalgebra automorphism inducing its set solution:
/// the counit sums, the action invariants, the support sandwich of every
/// entry, and the two-factor product identity at every admissible index
/// choice. Failures are reported, not thrown.
CheckReport structural_check(const LambdaTable& lt);

/// Builds the two degree-2 coherence operators and the matrix of r itself
/// and checks exact invertibility of all three.
CheckReport nondegeneracy_check(const LambdaTable& lt);

/// Left- and right-hand braid coefficient sums attached to an inclusion of
/// boxes S inside T in X^3. Throws std::invalid_argument on malformed
/// inclusions.
Scalar lbe(const LambdaTable& lt, const Box3& s, const Box3& t);
Scalar rbe(const LambdaTable& lt, const Box3& s, const Box3& t);

/// The basis triple the composed maps send an inclusion's contribution to.
std::array<Interval, 3> psi_components(const SetSolution& ls, const Box3& s);

/// lbe == rbe over every inclusion S inside T of boxes in X^3.
CheckReport verify_braid_full(const LambdaTable& lt, int workers = 0);

/// lbe == rbe over the reduced set: lower-extremal inclusions with
/// box height >= 1 plus S = T with box height exactly 1. The height-0 part
/// is carried by the set solution, which is validated at construction.
CheckReport verify_braid_reduced(const LambdaTable& lt, int workers = 0);

/// The reduced verification set in deterministic order.
std::vector<BoxInclusion<3>> reduced_inclusion_set(const Poset& p);

/// Applies r to tensor slots (pos, pos+1) of a sparse degree-2 or degree-3
/// vector.
TensorVector apply_r(const LambdaTable& lt, const TensorVector& tv, int pos);

struct DefectResult {
  bool zero = true;
  std::size_t dimension = 0;
  /// Nonzero entries of r12 r23 r12 - r23 r12 r23 as (row, column, value),
  /// column-major deterministic order.
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> entries;
};

/// Materializes the braid defect on D x D x D. Throws std::length_error when
/// the tensor dimension exceeds guard_dim.
DefectResult braid_defect_matrix(const LambdaTable& lt, std::size_t guard_dim = 20000,
                                 int workers = 0);
/// Verdict-only variant; stops at the first nonzero column.
bool braid_defect_is_zero(const LambdaTable& lt, std::size_t guard_dim = 20000, int workers = 0);

/// The counit-sum identities for one box T in X^3: summing lbe (and rbe)
/// over the height-0 subboxes yields 1 exactly when T is a point.
bool lbe_counit_sum_check(const LambdaTable& lt, const Box3& t);

/// The four displayed height-one equation shapes, by which coordinates of T
/// are covers. S is always the bottom point of T.
enum class BraidCase { C110, C101, C011, C111 };

/// Left minus right side of the selected case equation. Labels supply the
/// elements in order: C110 (a,b,c,d,e), C101 (a,b,c,e,f), C011 (a,c,d,e,f),
/// C111 (a,b,c,d,e,f); cover constraints are validated. Requires a height-one
/// poset.
Scalar case_equation_residual(const LambdaTable& lt, BraidCase kind, const std::vector<int>& labels);

/// Triple-composition columns used by the defect oracle, exposed for
/// cross-validation against the lbe/rbe expansions.
TensorVector triple_composition_left(const LambdaTable& lt, int y1, int y2, int y3);
TensorVector triple_composition_right(const LambdaTable& lt, int y1, int y2, int y3);

nlohmann::json box_to_json(const Poset& p, const Box3& b);
nlohmann::json box_to_json(const Poset& p, const Box2& b);

}  // namespace incidence_braid
