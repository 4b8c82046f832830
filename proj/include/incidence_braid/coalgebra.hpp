#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "incidence_braid/poset.hpp"
#include "incidence_braid/scalar.hpp"

namespace incidence_braid {

/// Basis bookkeeping for the incidence coalgebra of a poset: the ordered
/// pairs (a, b) with a <= b, plus index maps for degree-2 and degree-3
/// tensor bases.
class CoalgebraBasis {
public:
  explicit CoalgebraBasis(const Poset& p);

  int dim() const { return static_cast<int>(pairs_.size()); }
  std::size_t dim2() const { return static_cast<std::size_t>(dim()) * dim(); }
  std::size_t dim3() const { return dim2() * dim(); }

  Interval pair_at(int yi) const { return pairs_[yi]; }
  /// Throws std::invalid_argument when a is not below b.
  int index_of(int a, int b) const;
  int index_of(Interval iv) const { return index_of(iv.lo, iv.hi); }

  std::size_t idx2(int y1, int y2) const { return static_cast<std::size_t>(y1) * dim() + y2; }
  std::size_t idx3(int y1, int y2, int y3) const { return idx2(y1, y2) * dim() + y3; }
  std::pair<int, int> split2(std::size_t k) const {
    return {static_cast<int>(k / dim()), static_cast<int>(k % dim())};
  }
  std::array<int, 3> split3(std::size_t k) const {
    int y3 = static_cast<int>(k % dim());
    k /= dim();
    return {static_cast<int>(k / dim()), static_cast<int>(k % dim()), y3};
  }

  /// Comultiplication on a basis element: one ((a,c),(c,b)) term per c in
  /// [a, b], coefficient one each.
  std::vector<std::pair<int, int>> delta(int yi) const;

private:
  const Poset* poset_;
  std::vector<Interval> pairs_;
  std::vector<std::vector<int>> index_;  // -1 where a is not below b
};

/// Counit: 1 at diagonal pairs, 0 elsewhere.
Scalar counit(const Field& f, Interval y);

/// Sparse element of D, D tensor D or D tensor D tensor D. Keys are basis
/// indices for the stated degree; zero coefficients are never stored.
struct TensorVector {
  int degree = 1;
  std::map<std::size_t, Scalar> coeffs;

  void add(std::size_t key, const Scalar& value);
  bool operator==(const TensorVector& other) const {
    return degree == other.degree && coeffs == other.coeffs;
  }
};

/// (Delta x id) Delta = (id x Delta) Delta and the counit laws, on every
/// basis element.
bool coassociativity_check(const Poset& p);

}  // namespace incidence_braid
