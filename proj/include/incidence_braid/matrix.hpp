#pragma once

#include <cstddef>
#include <vector>

#include "incidence_braid/scalar.hpp"

namespace incidence_braid {

/// Dense square matrix over an exact field, used by the desk-scale matrix
/// oracles only.
class DenseMatrix {
public:
  DenseMatrix(std::size_t n, const Field& f)
      : n_(n), field_(f), a_(n * n, Scalar::zero(f)) {}

  std::size_t size() const { return n_; }
  const Field& field() const { return field_; }
  Scalar& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// Exact invertibility. Over a prime field this is Gaussian elimination
  /// mod p. Over the rationals a nonzero determinant modulo a large prime
  /// certifies invertibility; only when that is inconclusive does the check
  /// fall back to exact rational elimination.
  bool invertible() const;

private:
  bool invertible_mod(std::uint64_t p, bool& conclusive) const;
  bool invertible_exact_rational() const;

  std::size_t n_;
  Field field_;
  std::vector<Scalar> a_;
};

}  // namespace incidence_braid
