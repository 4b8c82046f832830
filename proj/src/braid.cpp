#include "incidence_braid/braid.hpp"

#include <atomic>
#include <stdexcept>

#include "incidence_braid/matrix.hpp"
#include "incidence_braid/parallel.hpp"

namespace incidence_braid {

namespace {

nlohmann::json interval_json(const Poset& p, Interval iv) {
  return nlohmann::json::array({p.label(iv.lo), p.label(iv.hi)});
}

}  // namespace

nlohmann::json box_to_json(const Poset& p, const Box3& b) {
  return nlohmann::json::array({interval_json(p, b.c[0]), interval_json(p, b.c[1]), interval_json(p, b.c[2])});
}

nlohmann::json box_to_json(const Poset& p, const Box2& b) {
  return nlohmann::json::array({interval_json(p, b.c[0]), interval_json(p, b.c[1])});
}

Scalar lbe(const LambdaTable& lt, const Box3& s, const Box3& t) {
  const Poset& p = lt.poset();
  if (!box_contains(p, t, s)) throw std::invalid_argument("malformed inclusion for lbe");
  const SetSolution& ls = lt.solution();
  const auto [a, c, e] = t.bottom();
  const auto [b, d, f] = t.top();
  const auto [g, i, k] = s.bottom();
  const auto [h, j, l] = s.top();

  // Upper indices that do not depend on the summation variables.
  const Interval up3_ef{ls.left(a, ls.left(c, k)), ls.left(a, ls.left(c, l))};
  const Interval up3_gh{ls.right(ls.left(a, i), ls.left(ls.right(a, i), e)),
                        ls.right(ls.left(a, j), ls.left(ls.right(a, j), e))};
  const Interval up2_gh{ls.right(ls.right(g, c), e), ls.right(ls.right(h, c), e)};

  Scalar acc = Scalar::zero(lt.field());
  for (int x : p.interval(a, g)) {
    for (int y : p.interval(h, b)) {
      const Interval xyc{ls.right(x, c), ls.right(y, c)};
      for (int w : p.interval(c, i)) {
        for (int z : p.interval(j, d)) {
          const Interval awz{ls.left(a, w), ls.left(a, z)};
          const Scalar f1 = lt.coeff({a, b}, {c, d}, awz, xyc);
          if (f1.is_zero()) continue;
          for (int u : p.interval(e, k)) {
            for (int v : p.interval(l, f)) {
              const Interval up2_ef{ls.left(xyc.lo, u), ls.left(xyc.lo, v)};
              const Scalar f2 = lt.coeff(xyc, {e, f}, up2_ef, up2_gh);
              if (f2.is_zero()) continue;
              const Scalar f3 = lt.coeff(awz, up2_ef, up3_ef, up3_gh);
              if (f3.is_zero()) continue;
              acc += f1 * f2 * f3;
            }
          }
        }
      }
    }
  }
  return acc;
}

Scalar rbe(const LambdaTable& lt, const Box3& s, const Box3& t) {
  const Poset& p = lt.poset();
  if (!box_contains(p, t, s)) throw std::invalid_argument("malformed inclusion for rbe");
  const SetSolution& ls = lt.solution();
  const auto [a, c, e] = t.bottom();
  const auto [b, d, f] = t.top();
  const auto [g, i, k] = s.bottom();
  const auto [h, j, l] = s.top();

  const Interval up2_ef{ls.left(a, ls.left(c, k)), ls.left(a, ls.left(c, l))};
  const Interval up3_ef{ls.left(ls.right(a, ls.left(i, e)), ls.right(i, e)),
                        ls.left(ls.right(a, ls.left(j, e)), ls.right(j, e))};
  const Interval up3_gh{ls.right(ls.right(g, c), e), ls.right(ls.right(h, c), e)};

  Scalar acc = Scalar::zero(lt.field());
  for (int u : p.interval(e, k)) {
    for (int v : p.interval(l, f)) {
      const Interval cuv{ls.left(c, u), ls.left(c, v)};
      for (int w : p.interval(c, i)) {
        for (int z : p.interval(j, d)) {
          const Interval wze{ls.right(w, e), ls.right(z, e)};
          const Scalar g1 = lt.coeff({c, d}, {e, f}, cuv, wze);
          if (g1.is_zero()) continue;
          for (int x : p.interval(a, g)) {
            for (int y : p.interval(h, b)) {
              const Interval xy_cu{ls.right(x, cuv.lo), ls.right(y, cuv.lo)};
              const Scalar g2 = lt.coeff({a, b}, cuv, up2_ef, xy_cu);
              if (g2.is_zero()) continue;
              const Scalar g3 = lt.coeff(xy_cu, wze, up3_ef, up3_gh);
              if (g3.is_zero()) continue;
              acc += g1 * g2 * g3;
            }
          }
        }
      }
    }
  }
  return acc;
}

std::array<Interval, 3> psi_components(const SetSolution& ls, const Box3& s) {
  const auto [g, i, k] = s.bottom();
  const auto [h, j, l] = s.top();
  const int lik = ls.left(i, k);
  const int act = ls.right(g, lik);
  return {Interval{ls.left(g, lik), ls.left(g, ls.left(i, l))},
          Interval{ls.left(act, ls.right(i, k)), ls.left(act, ls.right(j, k))},
          Interval{ls.right(ls.right(g, i), k), ls.right(ls.right(h, i), k)}};
}

namespace {

CheckReport verify_inclusions(const LambdaTable& lt, const std::vector<BoxInclusion<3>>& set,
                              const char* name, int workers) {
  const Poset& p = lt.poset();
  CheckReport rep;
  rep.check = name;
  rep.checked = set.size();
  std::vector<std::uint8_t> ok(set.size(), 1);
  std::vector<std::pair<std::string, std::string>> values(set.size());
  parallel_for(set.size(), workers, [&](std::size_t idx) {
    const auto& inc = set[idx];
    Scalar l = lbe(lt, inc.s, inc.t);
    Scalar r = rbe(lt, inc.s, inc.t);
    if (!(l == r)) {
      ok[idx] = 0;
      values[idx] = {l.str(), r.str()};
    }
  });
  for (std::size_t idx = 0; idx < set.size(); ++idx) {
    if (ok[idx]) continue;
    rep.fail(nlohmann::json{{"t", box_to_json(p, set[idx].t)},
                            {"s", box_to_json(p, set[idx].s)},
                            {"lbe", values[idx].first},
                            {"rbe", values[idx].second}});
  }
  return rep;
}

}  // namespace

CheckReport verify_braid_full(const LambdaTable& lt, int workers) {
  auto set = all_inclusions<3>(lt.poset());
  return verify_inclusions(lt, set, "braid_full", workers);
}

std::vector<BoxInclusion<3>> reduced_inclusion_set(const Poset& p) {
  std::vector<BoxInclusion<3>> out;
  for (const Box3& t : all_boxes<3>(p)) {
    const int h = box_height(p, t);
    if (h < 1) continue;
    Box3 bottom;
    for (int idx = 0; idx < 3; ++idx) bottom.c[idx] = {t.c[idx].lo, t.c[idx].lo};
    out.push_back({bottom, t});
    if (h == 1) out.push_back({t, t});
  }
  return out;
}

CheckReport verify_braid_reduced(const LambdaTable& lt, int workers) {
  auto set = reduced_inclusion_set(lt.poset());
  CheckReport rep = verify_inclusions(lt, set, "braid_reduced", workers);
  rep.details["height0_delegated_to_set_solution"] = true;
  return rep;
}

TensorVector apply_r(const LambdaTable& lt, const TensorVector& tv, int pos) {
  const CoalgebraBasis& bas = lt.basis();
  if (pos < 0 || pos + 1 >= tv.degree) throw std::invalid_argument("bad tensor position");
  TensorVector out;
  out.degree = tv.degree;
  for (const auto& [key, coeff] : tv.coeffs) {
    int ys[3] = {0, 0, 0};
    if (tv.degree == 2) {
      auto [y1, y2] = bas.split2(key);
      ys[0] = y1;
      ys[1] = y2;
    } else {
      auto t = bas.split3(key);
      ys[0] = t[0];
      ys[1] = t[1];
      ys[2] = t[2];
    }
    const auto& col = lt.column(bas.idx2(ys[pos], ys[pos + 1]));
    for (const auto& entry : col) {
      auto [ye, yg] = bas.split2(entry.dst);
      int out_ys[3] = {ys[0], ys[1], ys[2]};
      out_ys[pos] = ye;
      out_ys[pos + 1] = yg;
      std::size_t out_key = tv.degree == 2 ? bas.idx2(out_ys[0], out_ys[1])
                                           : bas.idx3(out_ys[0], out_ys[1], out_ys[2]);
      out.add(out_key, coeff * entry.value);
    }
  }
  return out;
}

TensorVector triple_composition_left(const LambdaTable& lt, int y1, int y2, int y3) {
  TensorVector unit;
  unit.degree = 3;
  unit.add(lt.basis().idx3(y1, y2, y3), Scalar::one(lt.field()));
  return apply_r(lt, apply_r(lt, apply_r(lt, unit, 0), 1), 0);
}

TensorVector triple_composition_right(const LambdaTable& lt, int y1, int y2, int y3) {
  TensorVector unit;
  unit.degree = 3;
  unit.add(lt.basis().idx3(y1, y2, y3), Scalar::one(lt.field()));
  return apply_r(lt, apply_r(lt, apply_r(lt, unit, 1), 0), 1);
}

namespace {

void defect_guard(const LambdaTable& lt, std::size_t guard_dim) {
  if (lt.basis().dim3() > guard_dim) {
    throw std::length_error("defect oracle dimension " + std::to_string(lt.basis().dim3()) +
                            " exceeds guard " + std::to_string(guard_dim));
  }
}

TensorVector defect_column(const LambdaTable& lt, int y1, int y2, int y3) {
  TensorVector lhs = triple_composition_left(lt, y1, y2, y3);
  TensorVector rhs = triple_composition_right(lt, y1, y2, y3);
  for (const auto& [key, coeff] : rhs.coeffs) lhs.add(key, -coeff);
  return lhs;
}

}  // namespace

DefectResult braid_defect_matrix(const LambdaTable& lt, std::size_t guard_dim, int workers) {
  defect_guard(lt, guard_dim);
  const CoalgebraBasis& bas = lt.basis();
  DefectResult out;
  out.dimension = bas.dim3();
  std::vector<TensorVector> cols(bas.dim3());
  parallel_for(bas.dim3(), workers, [&](std::size_t col) {
    auto [y1, y2, y3] = bas.split3(col);
    cols[col] = defect_column(lt, y1, y2, y3);
  });
  for (std::size_t col = 0; col < cols.size(); ++col) {
    for (const auto& [row, value] : cols[col].coeffs) out.entries.emplace_back(row, col, value);
  }
  out.zero = out.entries.empty();
  return out;
}

bool braid_defect_is_zero(const LambdaTable& lt, std::size_t guard_dim, int workers) {
  defect_guard(lt, guard_dim);
  const CoalgebraBasis& bas = lt.basis();
  std::atomic_bool zero{true};
  parallel_for(bas.dim3(), workers, [&](std::size_t col) {
    if (!zero.load(std::memory_order_relaxed)) return;
    auto [y1, y2, y3] = bas.split3(col);
    if (!defect_column(lt, y1, y2, y3).coeffs.empty()) {
      zero.store(false, std::memory_order_relaxed);
    }
  });
  return zero.load();
}

bool lbe_counit_sum_check(const LambdaTable& lt, const Box3& t) {
  const Poset& p = lt.poset();
  const Field& f = lt.field();
  Scalar sum_l = Scalar::zero(f);
  Scalar sum_r = Scalar::zero(f);
  for (int p1 : p.interval(t.c[0].lo, t.c[0].hi))
    for (int p2 : p.interval(t.c[1].lo, t.c[1].hi))
      for (int p3 : p.interval(t.c[2].lo, t.c[2].hi)) {
        Box3 s{{Interval{p1, p1}, Interval{p2, p2}, Interval{p3, p3}}};
        sum_l += lbe(lt, s, t);
        sum_r += rbe(lt, s, t);
      }
  Scalar expect = t.is_point() ? Scalar::one(f) : Scalar::zero(f);
  return sum_l == expect && sum_r == expect;
}

Scalar case_equation_residual(const LambdaTable& lt, BraidCase kind, const std::vector<int>& labels) {
  const Poset& p = lt.poset();
  if (p.height() != 1) throw std::invalid_argument("case equations require a height-one poset");
  auto need_cover = [&](int lo, int hi) {
    if (!p.covers(lo, hi)) throw std::invalid_argument("case labels must respect the cover pattern");
  };
  auto need_size = [&](std::size_t n) {
    if (labels.size() != n) throw std::invalid_argument("wrong label count for case");
  };
  Box3 t;
  switch (kind) {
    case BraidCase::C110:
      need_size(5);
      need_cover(labels[0], labels[1]);
      need_cover(labels[2], labels[3]);
      t = Box3{{Interval{labels[0], labels[1]}, Interval{labels[2], labels[3]},
                Interval{labels[4], labels[4]}}};
      break;
    case BraidCase::C101:
      need_size(5);
      need_cover(labels[0], labels[1]);
      need_cover(labels[3], labels[4]);
      t = Box3{{Interval{labels[0], labels[1]}, Interval{labels[2], labels[2]},
                Interval{labels[3], labels[4]}}};
      break;
    case BraidCase::C011:
      need_size(5);
      need_cover(labels[1], labels[2]);
      need_cover(labels[3], labels[4]);
      t = Box3{{Interval{labels[0], labels[0]}, Interval{labels[1], labels[2]},
                Interval{labels[3], labels[4]}}};
      break;
    case BraidCase::C111:
      need_size(6);
      need_cover(labels[0], labels[1]);
      need_cover(labels[2], labels[3]);
      need_cover(labels[4], labels[5]);
      t = Box3{{Interval{labels[0], labels[1]}, Interval{labels[2], labels[3]},
                Interval{labels[4], labels[5]}}};
      break;
  }
  Box3 s;
  for (int idx = 0; idx < 3; ++idx) s.c[idx] = {t.c[idx].lo, t.c[idx].lo};
  return lbe(lt, s, t) - rbe(lt, s, t);
}

CheckReport structural_check(const LambdaTable& lt) {
  const Poset& p = lt.poset();
  const SetSolution& ls = lt.solution();
  const CoalgebraBasis& bas = lt.basis();
  const Field& f = lt.field();
  CheckReport rep;
  rep.check = "structural";

  // Conditions on the set solution (bijectivity, automorphism, component
  // constancy, set-level braid) are revalidated wholesale.
  bool solution_ok = true;
  try {
    std::vector<std::vector<int>> left(p.size()), right(p.size());
    for (int a = 0; a < p.size(); ++a) {
      left[a].resize(p.size());
      right[a].resize(p.size());
      for (int c = 0; c < p.size(); ++c) {
        left[a][c] = ls.left(a, c);
        right[a][c] = ls.right(a, c);
      }
    }
    SetSolution::create(p, left, right);
  } catch (const std::invalid_argument& err) {
    solution_ok = false;
    rep.fail(nlohmann::json{{"condition", "set_solution"}, {"clause", err.what()}});
  }
  ++rep.checked;
  rep.details["set_solution"] = solution_ok;

  // Counit sums: over each source, the diagonal-destination coefficients
  // add to 1 on group-like sources and 0 elsewhere.
  bool counit_ok = true;
  for (int y1 = 0; y1 < bas.dim(); ++y1) {
    for (int y2 = 0; y2 < bas.dim(); ++y2) {
      Interval ab = bas.pair_at(y1), cd = bas.pair_at(y2);
      Scalar sum = Scalar::zero(f);
      for (const auto& entry : lt.column(bas.idx2(y1, y2))) {
        auto [ye, yg] = bas.split2(entry.dst);
        Interval ef = bas.pair_at(ye), gh = bas.pair_at(yg);
        if (ef.lo == ef.hi && gh.lo == gh.hi) sum += entry.value;
      }
      Scalar expect = (ab.lo == ab.hi && cd.lo == cd.hi) ? Scalar::one(f) : Scalar::zero(f);
      ++rep.checked;
      if (!(sum == expect)) {
        counit_ok = false;
        rep.fail(nlohmann::json{{"condition", "counit_sum"},
                                {"src", nlohmann::json::array({interval_json(p, ab), interval_json(p, cd)})},
                                {"sum", sum.str()},
                                {"expected", expect.str()}});
      }
    }
  }
  rep.details["counit_sums"] = counit_ok;

  // Support sandwich of every stored entry, plus group-like normalization.
  bool support_ok = true;
  for (int y1 = 0; y1 < bas.dim(); ++y1) {
    for (int y2 = 0; y2 < bas.dim(); ++y2) {
      Interval ab = bas.pair_at(y1), cd = bas.pair_at(y2);
      for (const auto& entry : lt.column(bas.idx2(y1, y2))) {
        auto [ye, yg] = bas.split2(entry.dst);
        ++rep.checked;
        if (!lt.support_allows(ab, cd, bas.pair_at(ye), bas.pair_at(yg))) {
          support_ok = false;
          rep.fail(nlohmann::json{{"condition", "support"},
                                  {"src", nlohmann::json::array({interval_json(p, ab), interval_json(p, cd)})}});
        }
      }
      if (ab.lo == ab.hi && cd.lo == cd.hi) {
        auto [ef0, gh0] = lt.group_like_destination(ab.lo, cd.lo);
        ++rep.checked;
        if (!lt.coeff(ab, cd, ef0, gh0).is_one()) {
          support_ok = false;
          rep.fail(nlohmann::json{{"condition", "group_like"},
                                  {"src", nlohmann::json::array({interval_json(p, ab), interval_json(p, cd)})}});
        }
      }
    }
  }
  rep.details["support"] = support_ok;

  // Two-factor product identity at every admissible interior choice.
  bool split_ok = true;
  for (int y1 = 0; y1 < bas.dim(); ++y1) {
    for (int y2 = 0; y2 < bas.dim(); ++y2) {
      Interval ab = bas.pair_at(y1), cd = bas.pair_at(y2);
      const int a = ab.lo, b = ab.hi, c = cd.lo, d = cd.hi;
      Interval e_range{ls.left(a, c), ls.left(a, d)};
      Interval g_range{ls.right(a, c), ls.right(b, c)};
      for (Interval ef : subintervals(p, e_range)) {
        for (Interval gh : subintervals(p, g_range)) {
          const Scalar lhs = lt.coeff(ab, cd, ef, gh);
          for (int y : p.interval(ef.lo, ef.hi)) {
            for (int z : p.interval(gh.lo, gh.hi)) {
              const int b1 = ls.right_inv(z, c);
              const int d1 = ls.left_inv(a, y);
              const Scalar rhs = lt.coeff({a, b1}, {c, d1}, {ef.lo, y}, {gh.lo, z}) *
                                 lt.coeff({b1, b}, {d1, d}, {y, ef.hi}, {z, gh.hi});
              ++rep.checked;
              if (!(lhs == rhs)) {
                split_ok = false;
                rep.fail(nlohmann::json{
                    {"condition", "split"},
                    {"src", nlohmann::json::array({interval_json(p, ab), interval_json(p, cd)})},
                    {"dst", nlohmann::json::array({interval_json(p, ef), interval_json(p, gh)})},
                    {"at", nlohmann::json::array({p.label(y), p.label(z)})},
                    {"lhs", lhs.str()},
                    {"rhs", rhs.str()}});
              }
            }
          }
        }
      }
    }
  }
  rep.details["split"] = split_ok;
  return rep;
}

CheckReport nondegeneracy_check(const LambdaTable& lt) {
  const CoalgebraBasis& bas = lt.basis();
  const Poset& p = lt.poset();
  const Field& f = lt.field();
  const std::size_t dim2 = bas.dim2();
  CheckReport rep;
  rep.check = "nondegeneracy";

  DenseMatrix left_op(dim2, f), right_op(dim2, f), r_matrix(dim2, f);
  for (int y1 = 0; y1 < bas.dim(); ++y1) {
    for (int y2 = 0; y2 < bas.dim(); ++y2) {
      const std::size_t src = bas.idx2(y1, y2);
      for (const auto& entry : lt.column(src)) r_matrix.at(entry.dst, src) += entry.value;

      Interval ab = bas.pair_at(y1);
      // (D x sigma)(Delta x D): split (a,b) at m, collapse the second slot
      // of r((m,b) x (c,d)) with the counit.
      for (int m : p.interval(ab.lo, ab.hi)) {
        const int y_am = bas.index_of(ab.lo, m);
        const int y_mb = bas.index_of(m, ab.hi);
        for (const auto& entry : lt.column(bas.idx2(y_mb, y2))) {
          auto [ye, yg] = bas.split2(entry.dst);
          Interval gh = bas.pair_at(yg);
          if (gh.lo != gh.hi) continue;
          left_op.at(bas.idx2(y_am, ye), src) += entry.value;
        }
      }
      // (tau x D)(D x Delta).
      Interval cd = bas.pair_at(y2);
      for (int m : p.interval(cd.lo, cd.hi)) {
        const int y_cm = bas.index_of(cd.lo, m);
        const int y_md = bas.index_of(m, cd.hi);
        for (const auto& entry : lt.column(bas.idx2(y1, y_cm))) {
          auto [ye, yg] = bas.split2(entry.dst);
          Interval ef = bas.pair_at(ye);
          if (ef.lo != ef.hi) continue;
          right_op.at(bas.idx2(yg, y_md), src) += entry.value;
        }
      }
    }
  }

  const bool left_inv = left_op.invertible();
  const bool right_inv = right_op.invertible();
  const bool r_inv = r_matrix.invertible();
  rep.checked = 3;
  rep.details["left_operator_invertible"] = left_inv;
  rep.details["right_operator_invertible"] = right_inv;
  rep.details["r_invertible"] = r_inv;
  if (!left_inv) rep.fail(nlohmann::json{{"condition", "left_operator_singular"}});
  if (!right_inv) rep.fail(nlohmann::json{{"condition", "right_operator_singular"}});
  if (!r_inv) rep.fail(nlohmann::json{{"condition", "r_singular"}});
  return rep;
}

}  // namespace incidence_braid
