#include "incidence_braid/coalgebra.hpp"

#include <stdexcept>

namespace incidence_braid {

CoalgebraBasis::CoalgebraBasis(const Poset& p) : poset_(&p), pairs_(p.intervals()) {
  index_.assign(p.size(), std::vector<int>(p.size(), -1));
  for (int i = 0; i < dim(); ++i) index_[pairs_[i].lo][pairs_[i].hi] = i;
}

int CoalgebraBasis::index_of(int a, int b) const {
  int yi = index_[a][b];
  if (yi < 0) {
    throw std::invalid_argument("not a basis pair: (" + poset_->label(a) + ", " + poset_->label(b) + ")");
  }
  return yi;
}

std::vector<std::pair<int, int>> CoalgebraBasis::delta(int yi) const {
  Interval ab = pairs_[yi];
  std::vector<std::pair<int, int>> out;
  for (int c : poset_->interval(ab.lo, ab.hi)) {
    out.emplace_back(index_of(ab.lo, c), index_of(c, ab.hi));
  }
  return out;
}

Scalar counit(const Field& f, Interval y) {
  return y.lo == y.hi ? Scalar::one(f) : Scalar::zero(f);
}

void TensorVector::add(std::size_t key, const Scalar& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = coeffs.emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

bool coassociativity_check(const Poset& p) {
  CoalgebraBasis bas(p);
  for (int yi = 0; yi < bas.dim(); ++yi) {
    // Integer multiplicities suffice: all Delta coefficients are one.
    std::map<std::size_t, long> lhs, rhs;
    for (auto [u, w] : bas.delta(yi)) {
      for (auto [u1, u2] : bas.delta(u)) lhs[bas.idx3(u1, u2, w)] += 1;
      for (auto [w1, w2] : bas.delta(w)) rhs[bas.idx3(u, w1, w2)] += 1;
    }
    if (lhs != rhs) return false;

    // Counit laws: collapsing either tensor slot returns the element itself.
    std::map<int, long> left_collapse, right_collapse;
    for (auto [u, w] : bas.delta(yi)) {
      Interval iu = bas.pair_at(u), iw = bas.pair_at(w);
      if (iu.lo == iu.hi) left_collapse[w] += 1;
      if (iw.lo == iw.hi) right_collapse[u] += 1;
    }
    std::map<int, long> expect{{yi, 1}};
    if (left_collapse != expect || right_collapse != expect) return false;
  }
  return true;
}

}  // namespace incidence_braid
