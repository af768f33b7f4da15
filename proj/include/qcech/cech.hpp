#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qcech/abgroups.hpp"
#include "qcech/morphisms.hpp"
#include "qcech/presheaf.hpp"
#include "qcech/quantale.hpp"

namespace qcech {

inline constexpr int kCoverColimitCap = 16;

/// Finite family joining to an element; canonically sorted, duplicate-free,
/// bottom-pruned (the bottom element is covered by the empty family).
struct Cover {
  QPtr base;
  int element = -1;
  std::vector<int> members;

  int size() const { return static_cast<int>(members.size()); }
  bool operator==(const Cover& o) const {
    return base.get() == o.base.get() && element == o.element && members == o.members;
  }
};

inline Cover make_cover(QPtr base, int element, std::vector<int> members) {
  const Quantale& q = *base;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::erase(members, q.bottom);
  int j = q.join(members);
  if (j != element)
    fail(errc::not_a_cover, "family joins to " + q.label(j) + ", not " + q.label(element));
  Cover c;
  c.base = std::move(base);
  c.element = element;
  c.members = std::move(members);
  return c;
}

/// Push a cover forward along a join-preserving map.
inline Cover pullback_cover(const MonotoneMap& f, const Cover& c) {
  if (f.source.get() != c.base.get())
    fail(errc::incompatible_shapes, "cover does not live on the map source");
  // make_cover verifies the image family still covers the image element,
  // which is the join preservation actually needed here
  std::vector<int> members;
  for (int m : c.members) members.push_back(f(m));
  return make_cover(f.target, f(c.element), std::move(members));
}

/// Left-associated product of the members at a strictly increasing tuple.
inline int tuple_product(const Quantale& q, const Cover& c, const std::vector<int>& tuple) {
  int acc = -1;
  for (int i : tuple) acc = acc < 0 ? c.members[i] : q.times(acc, c.members[i]);
  return acc;
}

namespace detail {

inline void increasing_tuples(int t, int len, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(len);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < t; ++i) {
      cur[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  if (len <= t) rec(rec, 0, 0);
}

}  // namespace detail

/// Cech cochain complex of a cover: degree-q group is the direct sum of
/// F(product) over strictly increasing (q+1)-tuples; the coboundary
/// alternates restrictions along face removal.
struct CechComplex {
  Cover cover;
  std::vector<std::vector<std::vector<int>>> tuples;  // per degree
  std::vector<std::vector<int>> tuple_elems;          // per degree, per tuple
  std::vector<DirectSum> sums;                        // per degree
  IntComplex complex;
};

inline CechComplex build_complex(const Cover& c, const AbPresheaf& f) {
  if (f.base.get() != c.base.get())
    fail(errc::incompatible_shapes, "cover and presheaf base differ");
  const Quantale& q = *c.base;
  CechComplex out;
  out.cover = c;
  const int t = c.size();
  const int degrees = std::max(t, 1);  // empty cover: single trivial degree

  out.tuples.resize(degrees);
  out.tuple_elems.resize(degrees);
  out.sums.resize(degrees);
  std::vector<FgAbGroup> groups(degrees);
  for (int qd = 0; qd < degrees; ++qd) {
    detail::increasing_tuples(t, qd + 1, out.tuples[qd]);
    std::vector<FgAbGroup> parts;
    for (const auto& tup : out.tuples[qd]) {
      int e = tuple_product(q, c, tup);
      out.tuple_elems[qd].push_back(e);
      parts.push_back(f.value(e));
    }
    out.sums[qd] = direct_sum(parts);
    groups[qd] = out.sums[qd].sum;
  }

  std::vector<GroupHom> diffs;
  for (int qd = 0; qd + 1 < degrees; ++qd) {
    Mat d(groups[qd + 1].gens(), groups[qd].gens());
    for (size_t ti = 0; ti < out.tuples[qd + 1].size(); ++ti) {
      const auto& tup = out.tuples[qd + 1][ti];
      int big = out.tuple_elems[qd + 1][ti];
      for (int k = 0; k < static_cast<int>(tup.size()); ++k) {
        std::vector<int> face = tup;
        face.erase(face.begin() + k);
        auto it = std::lower_bound(out.tuples[qd].begin(), out.tuples[qd].end(), face);
        int fi = static_cast<int>(it - out.tuples[qd].begin());
        int small = out.tuple_elems[qd][fi];
        const GroupHom& r = f.res(big, small);  // longer product is below
        int sign = (k % 2 == 0) ? 1 : -1;
        for (int rr = 0; rr < r.matrix.rows; ++rr)
          for (int cc = 0; cc < r.matrix.cols; ++cc)
            d(out.sums[qd + 1].offsets[ti] + rr, out.sums[qd].offsets[fi] + cc) +=
                sign * r.matrix(rr, cc);
      }
    }
    diffs.emplace_back(groups[qd], groups[qd + 1], std::move(d));
  }
  out.complex = IntComplex(std::move(groups), std::move(diffs));
  return out;
}

/// Computed cohomology groups in invariant-factor form, with the
/// subquotient data needed to express classes.
struct CohomologyResult {
  Cover cover;
  std::vector<FgAbGroup> groups;    // degree q -> H^q
  std::vector<Subquotient> classes;
};

inline CohomologyResult cover_cohomology(const Cover& c, const AbPresheaf& f,
                                         int q_max = -1) {
  CechComplex cx = build_complex(c, f);
  const int degrees = static_cast<int>(cx.complex.groups.size());
  if (q_max < 0) q_max = degrees - 1;
  CohomologyResult out;
  out.cover = c;
  for (int qd = 0; qd <= q_max; ++qd) {
    if (qd >= degrees) {
      out.classes.push_back(Subquotient{});
      out.groups.push_back(FgAbGroup());
      continue;
    }
    Subquotient sq = cx.complex.cohomology(qd);
    out.groups.push_back(sq.h);
    out.classes.push_back(std::move(sq));
  }
  // a cover of bottom has only the padded trivial degree
  if (c.size() == 0 && !out.groups.empty()) out.groups[0] = FgAbGroup();
  return out;
}

/// Witness r : I -> J that the first cover refines the second
/// (u_i <= v_{r(i)}).
struct RefinementWitness {
  Cover fine, coarse;
  std::vector<int> r;
};

/// Canonical witness: each member goes to the smallest-index member above it.
inline std::optional<RefinementWitness> find_refinement(const Cover& fine,
                                                        const Cover& coarse) {
  if (fine.base.get() != coarse.base.get() || fine.element != coarse.element)
    return std::nullopt;
  const Quantale& q = *fine.base;
  RefinementWitness w{fine, coarse, {}};
  for (int m : fine.members) {
    int found = -1;
    for (int j = 0; j < coarse.size(); ++j)
      if (q.le(m, coarse.members[j])) {
        found = j;
        break;
      }
    if (found < 0) return std::nullopt;
    w.r.push_back(found);
  }
  return w;
}

/// The cochain map m_r : C^*(coarse) -> C^*(fine) induced by a refinement
/// witness, with the alternating-extension convention: zero on repeated
/// indices, sign of the sorting permutation otherwise. Commutation with
/// the differentials is verified.
struct CochainMap {
  CechComplex fine, coarse;
  std::vector<GroupHom> maps;  // per degree: coarse complex -> fine complex
};

inline CochainMap refinement_map(const RefinementWitness& w, const AbPresheaf& f) {
  const Quantale& q = *w.fine.base;
  for (int i = 0; i < w.fine.size(); ++i) {
    if (i >= static_cast<int>(w.r.size()) || w.r[i] < 0 || w.r[i] >= w.coarse.size() ||
        !q.le(w.fine.members[i], w.coarse.members[w.r[i]]))
      fail(errc::invalid_witness, "member " + std::to_string(i) + " not below its image");
  }
  CochainMap out;
  out.fine = build_complex(w.fine, f);
  out.coarse = build_complex(w.coarse, f);
  const int degrees = static_cast<int>(out.fine.complex.groups.size());
  const int cdegrees = static_cast<int>(out.coarse.complex.groups.size());

  for (int qd = 0; qd < degrees; ++qd) {
    const FgAbGroup& dom =
        qd < cdegrees ? out.coarse.complex.groups[qd] : FgAbGroup();
    Mat m(out.fine.complex.groups[qd].gens(), dom.gens());
    if (qd < cdegrees && w.fine.size() > 0) {
      for (size_t ti = 0; ti < out.fine.tuples[qd].size(); ++ti) {
        const auto& tup = out.fine.tuples[qd][ti];
        std::vector<int> img;
        for (int i : tup) img.push_back(w.r[i]);
        std::vector<int> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
          continue;  // repeated index: alternating extension is zero
        // sign of the permutation sorting img
        int sign = 1;
        std::vector<int> perm = img;
        for (size_t a = 0; a < perm.size(); ++a)
          for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) {
              std::swap(perm[a], perm[b]);
              sign = -sign;
            }
        auto it = std::lower_bound(out.coarse.tuples[qd].begin(),
                                   out.coarse.tuples[qd].end(), sorted);
        int ci = static_cast<int>(it - out.coarse.tuples[qd].begin());
        int fine_elem = out.fine.tuple_elems[qd][ti];
        int coarse_elem = out.coarse.tuple_elems[qd][ci];
        const GroupHom& r = f.res(fine_elem, coarse_elem);
        for (int rr = 0; rr < r.matrix.rows; ++rr)
          for (int cc = 0; cc < r.matrix.cols; ++cc)
            m(out.fine.sums[qd].offsets[ti] + rr, out.coarse.sums[qd].offsets[ci] + cc) +=
                sign * r.matrix(rr, cc);
      }
    }
    out.maps.emplace_back(dom, out.fine.complex.groups[qd], std::move(m));
  }

  // cochain-map law: m o d_coarse = d_fine o m
  for (int qd = 0; qd + 1 < degrees && qd + 1 < cdegrees; ++qd) {
    GroupHom lhs = compose(out.maps[qd + 1], out.coarse.complex.diffs[qd]);
    GroupHom rhs = compose(out.fine.complex.diffs[qd], out.maps[qd]);
    if (!homs_equal(lhs, rhs))
      fail(errc::invalid_witness,
           "refinement map does not commute with d at degree " + std::to_string(qd));
  }
  return out;
}

/// Induced maps H^q(coarse) -> H^q(fine) in canonical coordinates.
inline std::vector<GroupHom> induced_cohomology_map(const RefinementWitness& w,
                                                    const AbPresheaf& f) {
  CochainMap cm = refinement_map(w, f);
  CohomologyResult fine_h = cover_cohomology(w.fine, f);
  CohomologyResult coarse_h = cover_cohomology(w.coarse, f);
  std::vector<GroupHom> out;
  const int degrees = static_cast<int>(cm.maps.size());
  for (int qd = 0; qd < degrees; ++qd) {
    if (qd >= static_cast<int>(coarse_h.classes.size())) break;
    GroupHom in_coarse =
        qd > 0 ? cm.coarse.complex.diffs[qd - 1]
               : GroupHom::zero(FgAbGroup(), cm.coarse.complex.groups[qd]);
    GroupHom in_fine = qd > 0
                           ? cm.fine.complex.diffs[qd - 1]
                           : GroupHom::zero(FgAbGroup(), cm.fine.complex.groups[qd]);
    out.push_back(induced_map(cm.maps[qd], coarse_h.classes[qd], fine_h.classes[qd],
                              in_coarse, in_fine));
  }
  return out;
}

/// All refinement witnesses fine -> coarse, in lexicographic order (capped).
inline std::vector<RefinementWitness> all_refinement_witnesses(const Cover& fine,
                                                               const Cover& coarse,
                                                               int cap = 4096) {
  const Quantale& q = *fine.base;
  std::vector<std::vector<int>> choices(fine.size());
  for (int i = 0; i < fine.size(); ++i) {
    for (int j = 0; j < coarse.size(); ++j)
      if (q.le(fine.members[i], coarse.members[j])) choices[i].push_back(j);
    if (choices[i].empty()) return {};
  }
  std::vector<RefinementWitness> out;
  std::vector<int> cur(fine.size());
  auto rec = [&](auto&& self, int pos) -> void {
    if (static_cast<int>(out.size()) >= cap) return;
    if (pos == fine.size()) {
      out.push_back(RefinementWitness{fine, coarse, cur});
      return;
    }
    for (int j : choices[pos]) {
      cur[pos] = j;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// All witnesses for the same refinement induce the same map on
/// cohomology. Returns the first disagreeing witness pair, if any.
struct HomotopyCheckResult {
  bool all_equal = true;
  int witnesses = 0;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> counterexample;
};

inline HomotopyCheckResult homotopy_uniqueness_check(const Cover& fine,
                                                     const Cover& coarse,
                                                     const AbPresheaf& f,
                                                     int cap = 256) {
  HomotopyCheckResult res;
  auto witnesses = all_refinement_witnesses(fine, coarse, cap);
  res.witnesses = static_cast<int>(witnesses.size());
  if (witnesses.size() < 2) return res;
  std::vector<GroupHom> first = induced_cohomology_map(witnesses[0], f);
  for (size_t i = 1; i < witnesses.size(); ++i) {
    std::vector<GroupHom> other = induced_cohomology_map(witnesses[i], f);
    for (size_t qd = 0; qd < first.size() && qd < other.size(); ++qd)
      if (!homs_equal(first[qd], other[qd])) {
        res.all_equal = false;
        res.counterexample = {witnesses[0].r, witnesses[i].r};
        return res;
      }
  }
  return res;
}

/// Deduplicated pointwise-product cover; refines both inputs.
inline Cover common_refinement(const Cover& a, const Cover& b) {
  if (a.base.get() != b.base.get() || a.element != b.element)
    fail(errc::incompatible_shapes, "covers of different elements");
  const Quantale& q = *a.base;
  std::vector<int> members;
  for (int u : a.members)
    for (int v : b.members) members.push_back(q.times(u, v));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::erase(members, q.bottom);
  int j = q.join(members);
  if (j != a.element)
    fail(errc::product_not_a_cover,
         "pointwise products join to " + q.label(j) + ", not " + q.label(a.element));
  Cover c;
  c.base = a.base;
  c.element = a.element;
  c.members = std::move(members);
  return c;
}

/// Cohomology of an element: enumerate all subset covers, verify the
/// refinement preorder is directed, compute at a terminal (finest) cover.
struct ElementCohomology {
  CohomologyResult result;
  int covers_enumerated = 0;
};

inline std::vector<Cover> enumerate_covers(QPtr base, int u,
                                           int cap = kCoverColimitCap) {
  const Quantale& q = *base;
  std::vector<int> down;
  for (int w = 0; w < q.n; ++w)
    if (q.le(w, u) && w != q.bottom) down.push_back(w);
  if (static_cast<int>(down.size()) > cap)
    fail(errc::size_cap_exceeded, "downset of " + q.label(u) + " has " +
                                      std::to_string(down.size()) + " elements");
  std::vector<Cover> covers;
  const uint64_t total = uint64_t(1) << down.size();
  for (uint64_t s = 0; s < total; ++s) {
    std::vector<int> members;
    for (size_t i = 0; i < down.size(); ++i)
      if (s >> i & 1) members.push_back(down[i]);
    if (q.join(members) != u) continue;
    covers.push_back(make_cover(base, u, std::move(members)));
  }
  return covers;
}

inline ElementCohomology element_cohomology(QPtr base, int u, const AbPresheaf& f,
                                            int q_max = -1,
                                            int cap = kCoverColimitCap) {
  const Quantale& q = *base;
  std::vector<Cover> covers = enumerate_covers(base, u, cap);
  ElementCohomology out;
  out.covers_enumerated = static_cast<int>(covers.size());
  if (covers.empty()) {
    // only the bottom element, covered by the empty family
    Cover empty = make_cover(base, q.bottom, {});
    out.result = cover_cohomology(empty, f, q_max);
    out.covers_enumerated = 1;
    return out;
  }

  // fold common refinements to reach a terminal cover; success of each
  // fold certifies directedness pairwise
  Cover terminal = covers.front();
  for (size_t i = 1; i < covers.size(); ++i) {
    try {
      terminal = common_refinement(terminal, covers[i]);
    } catch (const error& e) {
      if (e.kind() != errc::product_not_a_cover) throw;
      // fall back to searching the enumerated set
      const Cover* found = nullptr;
      for (const Cover& w : covers)
        if (find_refinement(w, terminal) && find_refinement(w, covers[i])) {
          found = &w;
          break;
        }
      if (!found)
        fail(errc::not_directed, "no common refinement of two covers of " + q.label(u));
      terminal = *found;
    }
  }
  // drop members that are joins of smaller members: the pruned cover still
  // covers u and refines strictly more, so it stays terminal
  {
    std::vector<int> kept = terminal.members;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
        std::vector<int> below;
        for (size_t j = 0; j < kept.size(); ++j)
          if (static_cast<int>(j) != i && q.le(kept[j], kept[i]))
            below.push_back(kept[j]);
        if (q.join(below) == kept[i]) {
          kept.erase(kept.begin() + i);
          changed = true;
        }
      }
    }
    terminal = make_cover(base, u, std::move(kept));
  }
  for (const Cover& c : covers)
    if (!find_refinement(terminal, c))
      fail(errc::not_directed, "terminal candidate fails to refine a cover of " + q.label(u));
  out.result = cover_cohomology(terminal, f, q_max);
  return out;
}

}  // namespace qcech
