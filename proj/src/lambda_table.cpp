#include "incidence_braid/lambda_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace incidence_braid {

LambdaTable::LambdaTable(Poset poset, Field field, SetSolution solution)
    : poset_(std::move(poset)),
      field_(field),
      solution_(std::move(solution)),
      basis_(poset_),
      zero_(Scalar::zero(field)) {
  if (solution_.size() != poset_.size()) {
    throw std::invalid_argument("set solution carrier does not match the poset");
  }
  columns_.assign(basis_.dim2(), {});
}

bool LambdaTable::support_allows(Interval ab, Interval cd, Interval ef, Interval gh) const {
  const auto& ls = solution_;
  int e_lo = ls.left(ab.lo, cd.lo);
  int e_hi = ls.left(ab.lo, cd.hi);
  int g_lo = ls.right(ab.lo, cd.lo);
  int g_hi = ls.right(ab.hi, cd.lo);
  return poset_.leq(e_lo, ef.lo) && poset_.leq(ef.hi, e_hi) && poset_.leq(g_lo, gh.lo) &&
         poset_.leq(gh.hi, g_hi);
}

std::pair<Interval, Interval> LambdaTable::group_like_destination(int x, int y) const {
  int l = solution_.left(x, y);
  int r = solution_.right(x, y);
  return {Interval{l, l}, Interval{r, r}};
}

void LambdaTable::set_entry(Interval ab, Interval cd, Interval ef, Interval gh, const Scalar& value) {
  int y_ab = basis_.index_of(ab), y_cd = basis_.index_of(cd);
  int y_ef = basis_.index_of(ef), y_gh = basis_.index_of(gh);
  if (!(value.field() == field_)) throw std::invalid_argument("coefficient from a different field");
  if (!support_allows(ab, cd, ef, gh)) {
    throw std::invalid_argument("coefficient outside the support sandwich");
  }
  if (ab.lo == ab.hi && cd.lo == cd.hi) {
    auto [ef0, gh0] = group_like_destination(ab.lo, cd.lo);
    if (!(ef == ef0 && gh == gh0 && value.is_one())) {
      throw std::invalid_argument("group-like coefficient must be one at the induced destination");
    }
  }
  auto& col = columns_[basis_.idx2(y_ab, y_cd)];
  std::uint32_t dst = static_cast<std::uint32_t>(basis_.idx2(y_ef, y_gh));
  auto it = std::lower_bound(col.begin(), col.end(), dst,
                             [](const Entry& e, std::uint32_t k) { return e.dst < k; });
  if (value.is_zero()) {
    if (it != col.end() && it->dst == dst) col.erase(it);
    return;
  }
  if (it != col.end() && it->dst == dst) {
    it->value = value;
  } else {
    col.insert(it, Entry{dst, value});
  }
}

void LambdaTable::add_to_entry(Interval ab, Interval cd, Interval ef, Interval gh, const Scalar& delta) {
  set_entry(ab, cd, ef, gh, coeff(ab, cd, ef, gh) + delta);
}

Scalar LambdaTable::coeff(Interval ab, Interval cd, Interval ef, Interval gh) const {
  return coeff(basis_.index_of(ab), basis_.index_of(cd), basis_.index_of(ef), basis_.index_of(gh));
}

Scalar LambdaTable::coeff(int y_ab, int y_cd, int y_ef, int y_gh) const {
  const auto& col = columns_[basis_.idx2(y_ab, y_cd)];
  std::uint32_t dst = static_cast<std::uint32_t>(basis_.idx2(y_ef, y_gh));
  auto it = std::lower_bound(col.begin(), col.end(), dst,
                             [](const Entry& e, std::uint32_t k) { return e.dst < k; });
  if (it != col.end() && it->dst == dst) return it->value;
  return zero_;
}

std::size_t LambdaTable::entry_count() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

}  // namespace incidence_braid
