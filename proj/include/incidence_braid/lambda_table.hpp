#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "incidence_braid/coalgebra.hpp"
#include "incidence_braid/poset.hpp"
#include "incidence_braid/scalar.hpp"
#include "incidence_braid/set_solution.hpp"

namespace incidence_braid {

/// The coefficient table of a candidate coalgebra automorphism r of D x D:
/// a sparse map ((a,b),(c,d)) -> ((e,f),(g,h)) -> scalar. Omitted entries
/// are zero. The table owns its poset, field and induced set solution; it is
/// immutable once built apart from set_entry/add_to_entry, which validate the
/// interval-sandwich support condition and the group-like normalization on
/// every write.
class LambdaTable {
public:
  LambdaTable(Poset poset, Field field, SetSolution solution);

  const Poset& poset() const { return poset_; }
  const Field& field() const { return field_; }
  const SetSolution& solution() const { return solution_; }
  const CoalgebraBasis& basis() const { return basis_; }

  /// Writes one coefficient; a zero value erases the entry. Throws
  /// std::invalid_argument when the destination violates the support
  /// condition for the source, or when a group-like source is given
  /// anything but coefficient one at its induced destination.
  void set_entry(Interval ab, Interval cd, Interval ef, Interval gh, const Scalar& value);
  /// Adds to an entry (used to plant perturbations); same validation.
  void add_to_entry(Interval ab, Interval cd, Interval ef, Interval gh, const Scalar& delta);

  /// Coefficient lookup; returns zero for absent entries.
  Scalar coeff(Interval ab, Interval cd, Interval ef, Interval gh) const;
  Scalar coeff(int y_ab, int y_cd, int y_ef, int y_gh) const;

  struct Entry {
    std::uint32_t dst;  // degree-2 basis index of (e,f) x (g,h)
    Scalar value;
  };
  /// Entries of one source column, ascending by destination index.
  const std::vector<Entry>& column(std::size_t src2) const { return columns_[src2]; }
  std::size_t column_count() const { return columns_.size(); }
  std::size_t entry_count() const;

  /// True when the destination obeys the support sandwich
  /// right(a,c) <= g <= h <= right(b,c), left(a,c) <= e <= f <= left(a,d).
  bool support_allows(Interval ab, Interval cd, Interval ef, Interval gh) const;

  /// Destination prescribed by the set solution for a group-like source.
  std::pair<Interval, Interval> group_like_destination(int x, int y) const;

private:
  const Scalar& zero() const { return zero_; }

  Poset poset_;
  Field field_;
  SetSolution solution_;
  CoalgebraBasis basis_;
  Scalar zero_;
  std::vector<std::vector<Entry>> columns_;
};

}  // namespace incidence_braid
