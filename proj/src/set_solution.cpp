#include "incidence_braid/set_solution.hpp"

#include <array>
#include <stdexcept>

namespace incidence_braid {

namespace {

void require_permutation(const std::vector<int>& image, int n, const char* what) {
  std::vector<char> seen(n, 0);
  for (int y : image) {
    if (y < 0 || y >= n || seen[y]) throw std::invalid_argument(what);
    seen[y] = 1;
  }
}

void require_automorphism(const Poset& p, const std::vector<int>& image, const char* what) {
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(x, y) != p.leq(image[x], image[y])) throw std::invalid_argument(what);
}

}  // namespace

SetSolution SetSolution::create(const Poset& p, std::vector<std::vector<int>> left,
                                std::vector<std::vector<int>> right) {
  const int n = p.size();
  if (static_cast<int>(left.size()) != n || static_cast<int>(right.size()) != n) {
    throw std::invalid_argument("action tables must be square over the carrier");
  }
  for (const auto& row : left)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("ragged left action table");
  for (const auto& row : right)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("ragged right action table");

  // Non-degeneracy and automorphism, per acting element.
  for (int a = 0; a < n; ++a) {
    require_permutation(left[a], n, "left action is not bijective");
    require_automorphism(p, left[a], "left action is not a poset automorphism");
  }
  for (int c = 0; c < n; ++c) {
    std::vector<int> col(n);
    for (int a = 0; a < n; ++a) col[a] = right[a][c];
    require_permutation(col, n, "right action is not bijective");
    require_automorphism(p, col, "right action is not a poset automorphism");
  }

  // Same-component constancy of both actions.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (p.component_of(a) != p.component_of(b)) continue;
      for (int x = 0; x < n; ++x) {
        if (left[a][x] != left[b][x] || right[x][a] != right[x][b]) {
          throw std::invalid_argument("actions differ within a connected component");
        }
      }
    }

  SetSolution s;
  s.n_ = n;
  s.left_ = std::move(left);
  s.right_ = std::move(right);
  s.left_inv_.assign(n, std::vector<int>(n, -1));
  s.right_inv_.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      s.left_inv_[a][s.left_[a][c]] = c;
      s.right_inv_[c][s.right_[a][c]] = a;
    }

  // Brute-force braid equation on X^3.
  auto r12 = [&](std::array<int, 3> t) {
    auto [l, r] = s.apply(t[0], t[1]);
    return std::array<int, 3>{l, r, t[2]};
  };
  auto r23 = [&](std::array<int, 3> t) {
    auto [l, r] = s.apply(t[1], t[2]);
    return std::array<int, 3>{t[0], l, r};
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        std::array<int, 3> t{x, y, z};
        if (r12(r23(r12(t))) != r23(r12(r23(t)))) {
          throw std::invalid_argument("induced set map does not satisfy the braid equation");
        }
      }
  return s;
}

}  // namespace incidence_braid
