#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace incidence_braid {

/// Closed interval [lo, hi] of a poset, addressed by element indices.
struct Interval {
  int lo = 0;
  int hi = 0;
  auto operator<=>(const Interval&) const = default;
};

/// A finite poset. Elements keep their declaration order; the order relation
/// is the reflexive-transitive closure of the given cover pairs and is
/// validated (antisymmetry) at construction.
class Poset {
public:
  static Poset from_covers(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& cover_pairs);

  int size() const { return n_; }
  const std::string& label(int x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws std::invalid_argument for unknown labels.
  int index_of(std::string_view label) const;

  bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a) * n_ + b] != 0; }
  bool covers(int a, int b) const { return cover_[static_cast<std::size_t>(a) * n_ + b] != 0; }

  /// Elements of [a, b] in declaration order. Throws if a is not below b.
  const std::vector<int>& interval(int a, int b) const;
  /// Longest chain length inside [a, b]. Throws if a is not below b.
  int interval_height(int a, int b) const;
  int interval_height(Interval iv) const { return interval_height(iv.lo, iv.hi); }
  int height() const { return height_; }

  /// All intervals (a, b) with a <= b, lexicographic in declaration order.
  /// This enumeration doubles as the incidence-coalgebra basis order.
  const std::vector<Interval>& intervals() const { return intervals_; }

  /// All cover pairs (a, b) with a covered by b, lexicographic.
  const std::vector<std::pair<int, int>>& cover_pairs() const { return cover_list_; }

  int component_of(int x) const { return comp_[x]; }
  int component_count() const { return comp_count_; }
  bool connected() const { return comp_count_ <= 1; }

private:
  Poset() = default;

  int n_ = 0;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::uint8_t> cover_;
  std::vector<std::vector<std::vector<int>>> interval_elems_;
  std::vector<std::vector<int>> interval_height_;
  std::vector<Interval> intervals_;
  std::vector<std::pair<int, int>> cover_list_;
  std::vector<int> comp_;
  int comp_count_ = 0;
  int height_ = 0;
};

/// An interval of the product order on X^N, stored componentwise.
template <int N>
struct Box {
  std::array<Interval, N> c;

  std::array<int, N> bottom() const {
    std::array<int, N> out{};
    for (int i = 0; i < N; ++i) out[i] = c[i].lo;
    return out;
  }
  std::array<int, N> top() const {
    std::array<int, N> out{};
    for (int i = 0; i < N; ++i) out[i] = c[i].hi;
    return out;
  }
  bool is_point() const {
    for (const auto& iv : c)
      if (iv.lo != iv.hi) return false;
    return true;
  }
  auto operator<=>(const Box&) const = default;
};

/// A pair S inside T of product-order boxes.
template <int N>
struct BoxInclusion {
  Box<N> s;
  Box<N> t;
  auto operator<=>(const BoxInclusion&) const = default;
};

using Box2 = Box<2>;
using Box3 = Box<3>;

/// All subintervals [g, h] of the given interval, lexicographic by (g, h).
std::vector<Interval> subintervals(const Poset& p, Interval iv);

template <int N>
int box_height(const Poset& p, const Box<N>& b);

template <int N>
bool box_contains(const Poset& p, const Box<N>& outer, const Box<N>& inner);

template <int N>
bool box_has_point(const Poset& p, const Box<N>& b, const std::array<int, N>& pt);

/// All boxes S inside T, deterministic lexicographic order (first component
/// slowest).
template <int N>
std::vector<Box<N>> box_subboxes(const Poset& p, const Box<N>& t);

/// Splits S inside T at a point of S into the lower and upper inclusion.
/// Throws if the point does not lie in S.
template <int N>
std::pair<BoxInclusion<N>, BoxInclusion<N>> box_split(const Poset& p, const BoxInclusion<N>& inc,
                                                      const std::array<int, N>& pt);

/// True when S is the single point at the bottom of T and T has height >= 1.
template <int N>
bool is_lower_extremal(const Poset& p, const BoxInclusion<N>& inc);

/// Number of pairs S inside T of boxes in X^arity; arity must be 2 or 3.
unsigned long long count_inclusion_pairs(const Poset& p, int arity);

/// Every inclusion S inside T in X^N: T runs lexicographically over boxes,
/// then S over subboxes of T.
template <int N>
std::vector<BoxInclusion<N>> all_inclusions(const Poset& p);

/// All boxes of X^N in lexicographic order.
template <int N>
std::vector<Box<N>> all_boxes(const Poset& p);

}  // namespace incidence_braid
