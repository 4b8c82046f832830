#include "incidence_braid/poset.hpp"

#include <algorithm>
#include <stdexcept>

namespace incidence_braid {

Poset Poset::from_covers(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& cover_pairs) {
  Poset p;
  p.n_ = static_cast<int>(elements.size());
  p.labels_ = std::move(elements);
  for (int i = 0; i < p.n_; ++i) {
    if (!p.index_.emplace(p.labels_[i], i).second) {
      throw std::invalid_argument("duplicate element label: " + p.labels_[i]);
    }
  }

  const int n = p.n_;
  p.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) p.leq_[static_cast<std::size_t>(i) * n + i] = 1;
  for (const auto& [lo, hi] : cover_pairs) {
    auto a = p.index_.find(lo);
    auto b = p.index_.find(hi);
    if (a == p.index_.end() || b == p.index_.end()) {
      throw std::invalid_argument("cover pair references unknown label");
    }
    p.leq_[static_cast<std::size_t>(a->second) * n + b->second] = 1;
  }

  // Warshall closure, then antisymmetry.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (p.leq(i, k))
        for (int j = 0; j < n; ++j)
          if (p.leq(k, j)) p.leq_[static_cast<std::size_t>(i) * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.leq(i, j) && p.leq(j, i)) {
        throw std::invalid_argument("not a partial order: cycle through " + p.labels_[i] + " and " +
                                    p.labels_[j]);
      }

  p.interval_elems_.assign(n, std::vector<std::vector<int>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(a, b)) {
        auto& elems = p.interval_elems_[a][b];
        for (int c = 0; c < n; ++c)
          if (p.leq(a, c) && p.leq(c, b)) elems.push_back(c);
      }

  p.cover_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && p.leq(a, b) && p.interval_elems_[a][b].size() == 2) {
        p.cover_[static_cast<std::size_t>(a) * n + b] = 1;
        p.cover_list_.emplace_back(a, b);
      }

  // Longest chain inside each interval, by increasing interval size.
  p.interval_height_.assign(n, std::vector<int>(n, -1));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(a, b)) pairs.emplace_back(a, b);
  std::sort(pairs.begin(), pairs.end(), [&](auto l, auto r) {
    return p.interval_elems_[l.first][l.second].size() < p.interval_elems_[r.first][r.second].size();
  });
  for (auto [a, b] : pairs) {
    if (a == b) {
      p.interval_height_[a][b] = 0;
      continue;
    }
    int best = 0;
    for (int c : p.interval_elems_[a][b]) {
      if (c != b && p.covers(c, b)) best = std::max(best, p.interval_height_[a][c] + 1);
    }
    p.interval_height_[a][b] = best;
  }
  p.height_ = 0;
  for (auto [a, b] : pairs) p.height_ = std::max(p.height_, p.interval_height_[a][b]);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(a, b)) p.intervals_.push_back({a, b});

  // Connected components of the comparability graph.
  p.comp_.assign(n, -1);
  p.comp_count_ = 0;
  for (int s = 0; s < n; ++s) {
    if (p.comp_[s] != -1) continue;
    std::vector<int> stack{s};
    p.comp_[s] = p.comp_count_;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y) {
        if (p.comp_[y] == -1 && (p.leq(x, y) || p.leq(y, x))) {
          p.comp_[y] = p.comp_count_;
          stack.push_back(y);
        }
      }
    }
    ++p.comp_count_;
  }
  return p;
}

int Poset::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw std::invalid_argument("unknown element label: " + std::string(label));
  return it->second;
}

const std::vector<int>& Poset::interval(int a, int b) const {
  if (!leq(a, b)) {
    throw std::invalid_argument("interval endpoints not ordered: " + labels_[a] + ", " + labels_[b]);
  }
  return interval_elems_[a][b];
}

int Poset::interval_height(int a, int b) const {
  if (!leq(a, b)) {
    throw std::invalid_argument("interval endpoints not ordered: " + labels_[a] + ", " + labels_[b]);
  }
  return interval_height_[a][b];
}

std::vector<Interval> subintervals(const Poset& p, Interval iv) {
  std::vector<Interval> out;
  const auto& elems = p.interval(iv.lo, iv.hi);
  for (int g : elems)
    for (int h : elems)
      if (p.leq(g, h)) out.push_back({g, h});
  std::sort(out.begin(), out.end());
  return out;
}

template <int N>
int box_height(const Poset& p, const Box<N>& b) {
  int h = 0;
  for (const auto& iv : b.c) h += p.interval_height(iv);
  return h;
}

template <int N>
bool box_contains(const Poset& p, const Box<N>& outer, const Box<N>& inner) {
  for (int i = 0; i < N; ++i) {
    if (!p.leq(outer.c[i].lo, inner.c[i].lo) || !p.leq(inner.c[i].hi, outer.c[i].hi)) return false;
    if (!p.leq(inner.c[i].lo, inner.c[i].hi)) return false;
  }
  return true;
}

template <int N>
bool box_has_point(const Poset& p, const Box<N>& b, const std::array<int, N>& pt) {
  for (int i = 0; i < N; ++i) {
    if (!p.leq(b.c[i].lo, pt[i]) || !p.leq(pt[i], b.c[i].hi)) return false;
  }
  return true;
}

template <int N>
std::vector<Box<N>> box_subboxes(const Poset& p, const Box<N>& t) {
  std::array<std::vector<Interval>, N> choices;
  std::size_t total = 1;
  for (int i = 0; i < N; ++i) {
    choices[i] = subintervals(p, t.c[i]);
    total *= choices[i].size();
  }
  std::vector<Box<N>> out;
  out.reserve(total);
  std::array<std::size_t, N> idx{};
  for (std::size_t k = 0; k < total; ++k) {
    Box<N> b;
    for (int i = 0; i < N; ++i) b.c[i] = choices[i][idx[i]];
    out.push_back(b);
    for (int i = N - 1; i >= 0; --i) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

template <int N>
std::pair<BoxInclusion<N>, BoxInclusion<N>> box_split(const Poset& p, const BoxInclusion<N>& inc,
                                                      const std::array<int, N>& pt) {
  if (!box_has_point<N>(p, inc.s, pt)) {
    throw std::invalid_argument("split point does not lie in the inner box");
  }
  BoxInclusion<N> lower, upper;
  for (int i = 0; i < N; ++i) {
    lower.s.c[i] = {inc.s.c[i].lo, pt[i]};
    lower.t.c[i] = {inc.t.c[i].lo, pt[i]};
    upper.s.c[i] = {pt[i], inc.s.c[i].hi};
    upper.t.c[i] = {pt[i], inc.t.c[i].hi};
  }
  return {lower, upper};
}

template <int N>
bool is_lower_extremal(const Poset& p, const BoxInclusion<N>& inc) {
  if (box_height(p, inc.t) < 1) return false;
  for (int i = 0; i < N; ++i) {
    if (inc.s.c[i].lo != inc.t.c[i].lo || inc.s.c[i].hi != inc.t.c[i].lo) return false;
  }
  return true;
}

unsigned long long count_inclusion_pairs(const Poset& p, int arity) {
  if (arity != 2 && arity != 3) throw std::invalid_argument("arity must be 2 or 3");
  unsigned long long per_coordinate = 0;
  for (Interval iv : p.intervals()) per_coordinate += subintervals(p, iv).size();
  unsigned long long out = 1;
  for (int i = 0; i < arity; ++i) out *= per_coordinate;
  return out;
}

template <int N>
std::vector<Box<N>> all_boxes(const Poset& p) {
  const auto& ivs = p.intervals();
  std::vector<Box<N>> out;
  std::array<std::size_t, N> idx{};
  std::size_t total = 1;
  for (int i = 0; i < N; ++i) total *= ivs.size();
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    Box<N> b;
    for (int i = 0; i < N; ++i) b.c[i] = ivs[idx[i]];
    out.push_back(b);
    for (int i = N - 1; i >= 0; --i) {
      if (++idx[i] < ivs.size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

template <int N>
std::vector<BoxInclusion<N>> all_inclusions(const Poset& p) {
  std::vector<BoxInclusion<N>> out;
  for (const Box<N>& t : all_boxes<N>(p)) {
    for (const Box<N>& s : box_subboxes(p, t)) out.push_back({s, t});
  }
  return out;
}

template int box_height<2>(const Poset&, const Box<2>&);
template int box_height<3>(const Poset&, const Box<3>&);
template bool box_contains<2>(const Poset&, const Box<2>&, const Box<2>&);
template bool box_contains<3>(const Poset&, const Box<3>&, const Box<3>&);
template bool box_has_point<2>(const Poset&, const Box<2>&, const std::array<int, 2>&);
template bool box_has_point<3>(const Poset&, const Box<3>&, const std::array<int, 3>&);
template std::vector<Box<2>> box_subboxes<2>(const Poset&, const Box<2>&);
template std::vector<Box<3>> box_subboxes<3>(const Poset&, const Box<3>&);
template std::pair<BoxInclusion<2>, BoxInclusion<2>> box_split<2>(const Poset&, const BoxInclusion<2>&,
                                                                  const std::array<int, 2>&);
template std::pair<BoxInclusion<3>, BoxInclusion<3>> box_split<3>(const Poset&, const BoxInclusion<3>&,
                                                                  const std::array<int, 3>&);
template bool is_lower_extremal<2>(const Poset&, const BoxInclusion<2>&);
template bool is_lower_extremal<3>(const Poset&, const BoxInclusion<3>&);
template std::vector<Box<2>> all_boxes<2>(const Poset&);
template std::vector<Box<3>> all_boxes<3>(const Poset&);
template std::vector<BoxInclusion<2>> all_inclusions<2>(const Poset&);
template std::vector<BoxInclusion<3>> all_inclusions<3>(const Poset&);

}  // namespace incidence_braid
