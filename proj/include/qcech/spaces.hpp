#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "qcech/quantale.hpp"

namespace qcech {

/// Finite topological space: points 0..k-1, opens as bitmasks.
struct FiniteSpace {
  std::vector<std::string> point_names;
  std::vector<uint64_t> opens;  // sorted ascending, duplicate-free

  int points() const { return static_cast<int>(point_names.size()); }
  uint64_t full_mask() const {
    return points() == 64 ? ~uint64_t(0) : (uint64_t(1) << points()) - 1;
  }

  std::string describe(uint64_t mask) const {
    std::string s = "{";
    bool first = true;
    for (int p = 0; p < points(); ++p)
      if (mask >> p & 1) {
        if (!first) s += ",";
        s += point_names[p];
        first = false;
      }
    return s + "}";
  }

  /// Minimal open neighborhood of a point.
  uint64_t min_neighborhood(int p) const {
    uint64_t acc = full_mask();
    for (uint64_t u : opens)
      if (u >> p & 1) acc &= u;
    return acc;
  }
};

/// Validate a topology: contains empty and full set, closed under binary
/// union and intersection (finite, so that settles arbitrary unions).
inline FiniteSpace make_space(std::vector<std::string> point_names,
                              std::vector<uint64_t> opens) {
  FiniteSpace x;
  x.point_names = std::move(point_names);
  if (x.points() > 64) fail(errc::size_cap_exceeded, "more than 64 points");
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  x.opens = std::move(opens);
  for (uint64_t u : x.opens)
    if (u & ~x.full_mask())
      fail(errc::not_a_topology, "open set mentions a missing point");
  auto has = [&](uint64_t m) {
    return std::binary_search(x.opens.begin(), x.opens.end(), m);
  };
  if (!has(0)) fail(errc::not_a_topology, "empty set is not open");
  if (!has(x.full_mask())) fail(errc::not_a_topology, "whole space is not open");
  for (uint64_t u : x.opens)
    for (uint64_t v : x.opens) {
      if (!has(u | v))
        fail(errc::not_a_topology,
             "union " + x.describe(u) + " u " + x.describe(v) + " is not open");
      if (!has(u & v))
        fail(errc::not_a_topology, "intersection " + x.describe(u) + " n " +
                                       x.describe(v) + " is not open");
    }
  return x;
}

inline FiniteSpace discrete_space(int k) {
  std::vector<std::string> names;
  for (int p = 0; p < k; ++p) names.push_back("x" + std::to_string(p + 1));
  std::vector<uint64_t> opens;
  for (uint64_t m = 0; m < (uint64_t(1) << k); ++m) opens.push_back(m);
  return make_space(std::move(names), std::move(opens));
}

inline FiniteSpace sierpinski_space() {
  return make_space({"x", "y"}, {0, 0b01, 0b11});
}

/// The 4-point pseudocircle: weak homotopy type of the circle.
inline FiniteSpace pseudocircle() {
  return make_space({"a", "b", "c", "d"},
                    {0, 0b0001, 0b0010, 0b0011, 0b0111, 0b1011, 0b1111});
}

/// Connected components of an open subspace, via the comparability graph
/// of the specialization preorder (coincides with topological
/// connectedness on finite spaces). Deterministic order by least point.
inline std::vector<uint64_t> components(const FiniteSpace& x, uint64_t open_set) {
  const int k = x.points();
  std::vector<uint64_t> minnb(k);
  for (int p = 0; p < k; ++p) minnb[p] = x.min_neighborhood(p);
  std::vector<int> comp(k, -1);
  std::vector<uint64_t> out;
  for (int p = 0; p < k; ++p) {
    if (!(open_set >> p & 1) || comp[p] >= 0) continue;
    // flood fill over comparability edges inside the subspace
    uint64_t cur = 0;
    std::vector<int> stack{p};
    comp[p] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      cur |= uint64_t(1) << a;
      for (int b = 0; b < k; ++b) {
        if (!(open_set >> b & 1) || comp[b] >= 0) continue;
        uint64_t na = minnb[a] & open_set, nb = minnb[b] & open_set;
        if ((na & nb) == na || (na & nb) == nb) {
          comp[b] = comp[a];
          stack.push_back(b);
        }
      }
    }
    out.push_back(cur);
  }
  return out;
}

/// Locale of open sets: order by inclusion, join by union, mul by
/// intersection. Element order is ascending bitmask.
struct SpaceLocale {
  QPtr quantale;
  FiniteSpace space;
  std::vector<uint64_t> opens;  // element index -> mask

  int index_of(uint64_t mask) const {
    auto it = std::lower_bound(opens.begin(), opens.end(), mask);
    if (it == opens.end() || *it != mask)
      fail(errc::not_a_topology, "set " + space.describe(mask) + " is not open");
    return static_cast<int>(it - opens.begin());
  }
};

inline SpaceLocale locale_of_space(FiniteSpace x) {
  const int n = static_cast<int>(x.opens.size());
  if (n > kDefaultElementCap)
    fail(errc::size_cap_exceeded, "topology has too many opens");
  std::vector<std::string> labels(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  auto idx = [&](uint64_t m) {
    return static_cast<int>(std::lower_bound(x.opens.begin(), x.opens.end(), m) -
                            x.opens.begin());
  };
  for (int i = 0; i < n; ++i) {
    labels[i] = x.describe(x.opens[i]);
    for (int j = 0; j < n; ++j) {
      leq[i][j] = (x.opens[i] & ~x.opens[j]) == 0;
      mul[i][j] = idx(x.opens[i] & x.opens[j]);
    }
  }
  SpaceLocale out;
  out.quantale = validate_quantale(std::move(labels), std::move(leq), std::move(mul));
  out.opens = x.opens;
  out.space = std::move(x);
  return out;
}

}  // namespace qcech
