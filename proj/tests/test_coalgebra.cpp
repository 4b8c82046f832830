#include <doctest.h>

#include <stdexcept>

#include <random>

#include "incidence_braid/coalgebra.hpp"

using namespace incidence_braid;

namespace {

Poset two_chain() { return Poset::from_covers({"x", "y"}, {{"x", "y"}}); }

}  // namespace

TEST_CASE("basis indexing") {
  Poset p = two_chain();
  CoalgebraBasis bas(p);
  CHECK(bas.dim() == 3);
  CHECK(bas.dim2() == 9);
  CHECK(bas.dim3() == 27);
  for (int yi = 0; yi < bas.dim(); ++yi) {
    Interval iv = bas.pair_at(yi);
    CHECK(bas.index_of(iv) == yi);
  }
  CHECK_THROWS_AS(bas.index_of(1, 0), std::invalid_argument);
  for (int y1 = 0; y1 < bas.dim(); ++y1)
    for (int y2 = 0; y2 < bas.dim(); ++y2) {
      auto [u, w] = bas.split2(bas.idx2(y1, y2));
      CHECK(u == y1);
      CHECK(w == y2);
    }
}

TEST_CASE("comultiplication terms") {
  Poset p = two_chain();
  CoalgebraBasis bas(p);
  int xx = bas.index_of(0, 0), yy = bas.index_of(1, 1), xy = bas.index_of(0, 1);

  CHECK(bas.delta(xx) == std::vector<std::pair<int, int>>{{xx, xx}});
  CHECK(bas.delta(xy) == std::vector<std::pair<int, int>>{{xx, xy}, {xy, yy}});

  Poset b = Poset::from_covers({"a0", "a1", "b0"}, {{"a0", "b0"}, {"a1", "b0"}});
  CoalgebraBasis bb(b);
  int edge = bb.index_of(b.index_of("a0"), b.index_of("b0"));
  CHECK(bb.delta(edge).size() == 2);
}

TEST_CASE("counit") {
  Field q = Field::rationals();
  CHECK(counit(q, {0, 0}).is_one());
  CHECK(counit(q, {0, 1}).is_zero());
}

TEST_CASE("tensor vectors drop zeros") {
  Field q = Field::rationals();
  TensorVector tv;
  tv.degree = 2;
  tv.add(3, Scalar::one(q));
  tv.add(3, -Scalar::one(q));
  CHECK(tv.coeffs.empty());
}

TEST_CASE("counit extends linearly over tensors") {
  Poset p = two_chain();
  CoalgebraBasis bas(p);
  Field q = Field::rationals();
  TensorVector tv;
  tv.degree = 2;
  tv.add(bas.idx2(bas.index_of(0, 0), bas.index_of(0, 1)), Scalar(q, 5));
  tv.add(bas.idx2(bas.index_of(0, 0), bas.index_of(1, 1)), Scalar(q, 7));
  Scalar applied = Scalar::zero(q);
  for (const auto& [key, coeff] : tv.coeffs) {
    auto [y1, y2] = bas.split2(key);
    applied += coeff * counit(q, bas.pair_at(y1)) * counit(q, bas.pair_at(y2));
  }
  CHECK(applied == Scalar(q, 7));  // the (x,x) tensor (x,y) term dies
}

TEST_CASE("coassociativity on fixed posets") {
  CHECK(coassociativity_check(two_chain()));
  CHECK(coassociativity_check(Poset::from_covers({"a0", "a1", "b0"}, {{"a0", "b0"}, {"a1", "b0"}})));
  CHECK(coassociativity_check(Poset::from_covers({"x"}, {})));
  CHECK(coassociativity_check(
      Poset::from_covers({"p", "q", "r", "s"}, {{"p", "q"}, {"q", "r"}, {"p", "s"}, {"s", "r"}})));
}

TEST_CASE("coassociativity on random posets") {
  std::mt19937 rng(7);
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<int> size_d(1, 6);
    const int n = size_d(rng);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    // Random edges oriented low index -> high index always form a DAG.
    std::vector<std::pair<std::string, std::string>> covers;
    std::uniform_int_distribution<int> coin(0, 3);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng) == 0) covers.emplace_back(labels[i], labels[j]);
    CHECK(coassociativity_check(Poset::from_covers(labels, covers)));
  }
}
