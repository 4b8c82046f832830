#pragma once

#include <utility>
#include <vector>

#include "incidence_braid/poset.hpp"

namespace incidence_braid {

/// A non-degenerate set-theoretic solution of the braid equation on the
/// elements of a poset, given by its two coordinate actions. Construction
/// validates every structural requirement and throws std::invalid_argument
/// naming the violated clause:
///   - each left action c -> left(a, c) and each right action
///     a -> right(a, c) is a bijection,
///   - every action is a poset automorphism,
///   - actions agree across elements of the same connected component,
///   - the induced map (a, c) -> (left(a, c), right(a, c)) satisfies the
///     braid equation on X^3 (checked by brute force).
class SetSolution {
public:
  /// left[a][c] is the image of c under the action of a on the left;
  /// right[a][c] is the image of a under the action of c on the right.
  static SetSolution create(const Poset& p, std::vector<std::vector<int>> left,
                            std::vector<std::vector<int>> right);

  int size() const { return n_; }
  int left(int a, int c) const { return left_[a][c]; }
  int right(int a, int c) const { return right_[a][c]; }
  /// Inverse of the left action of a.
  int left_inv(int a, int y) const { return left_inv_[a][y]; }
  /// Inverse of the right action of c.
  int right_inv(int z, int c) const { return right_inv_[c][z]; }

  std::pair<int, int> apply(int a, int c) const { return {left(a, c), right(a, c)}; }

private:
  SetSolution() = default;

  int n_ = 0;
  std::vector<std::vector<int>> left_, right_;
  std::vector<std::vector<int>> left_inv_;   // by acting element
  std::vector<std::vector<int>> right_inv_;  // by acting element
};

}  // namespace incidence_braid
