#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcech/abgroups.hpp"
#include "qcech/quantale.hpp"
#include "qcech/spaces.hpp"

namespace qcech {

/// Abelian presheaf on a finite quantale: an fg abelian group per element
/// and a restriction homomorphism value(b) -> value(a) for every a <= b,
/// functorial by construction.
struct AbPresheaf {
  QPtr base;
  std::vector<FgAbGroup> values;
  // res_[a][b] defined iff a <= b; maps value(b) -> value(a)
  std::vector<std::vector<std::optional<GroupHom>>> res_;

  const FgAbGroup& value(int u) const { return values[u]; }
  const GroupHom& res(int a, int b) const {
    if (!res_[a][b])
      fail(errc::restriction_unavailable,
           base->label(a) + " <= " + base->label(b) + " does not hold");
    return *res_[a][b];
  }
};

/// Covering (cover-of-bottom) relation of the base order.
inline std::vector<std::pair<int, int>> hasse_edges(const Quantale& q) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < q.n; ++a)
    for (int b = 0; b < q.n; ++b) {
      if (a == b || !q.le(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < q.n && direct; ++c)
        if (c != a && c != b && q.le(a, c) && q.le(c, b)) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

/// Check res(a,c) = res(a,b) o res(b,c) over every comparable chain.
inline void verify_functorial(const AbPresheaf& f) {
  const Quantale& q = *f.base;
  for (int a = 0; a < q.n; ++a) {
    if (!homs_equal(f.res(a, a), GroupHom::identity(f.value(a))))
      fail(errc::path_dependence, "res on " + q.label(a) + " <= itself is not identity");
    for (int b = 0; b < q.n; ++b) {
      if (!q.le(a, b)) continue;
      for (int c = 0; c < q.n; ++c) {
        if (!q.le(b, c)) continue;
        if (!homs_equal(f.res(a, c), compose(f.res(a, b), f.res(b, c))))
          fail(errc::path_dependence, "restriction along " + q.label(a) + " <= " +
                                          q.label(b) + " <= " + q.label(c) +
                                          " is path dependent");
      }
    }
  }
}

/// Assemble a presheaf from values and one restriction per Hasse edge;
/// derived restrictions are composed and checked path-independent.
inline AbPresheaf build_presheaf(QPtr base, std::vector<FgAbGroup> values,
                                 const std::map<std::pair<int, int>, GroupHom>& edge_res) {
  const Quantale& q = *base;
  if (static_cast<int>(values.size()) != q.n)
    fail(errc::incompatible_shapes, "one value per element required");
  AbPresheaf f;
  f.base = base;
  f.values = std::move(values);
  f.res_.assign(q.n, std::vector<std::optional<GroupHom>>(q.n));

  auto edges = hasse_edges(q);
  for (const auto& [a, b] : edges) {
    auto it = edge_res.find({a, b});
    if (it == edge_res.end())
      fail(errc::bad_hom_shape,
           "missing restriction for edge " + q.label(a) + " <= " + q.label(b));
    const GroupHom& h = it->second;
    if (!(h.domain == f.values[b]) || !(h.codomain == f.values[a]))
      fail(errc::bad_hom_shape,
           "restriction endpoints wrong at edge " + q.label(a) + " <= " + q.label(b));
    f.res_[a][b] = h;
  }
  for (const auto& [key, h] : edge_res) {
    (void)h;
    if (std::find(edges.begin(), edges.end(), key) == edges.end())
      fail(errc::bad_hom_shape, "restriction given for a non-Hasse pair");
  }

  for (int a = 0; a < q.n; ++a) f.res_[a][a] = GroupHom::identity(f.values[a]);

  // derive res(a <= b) through any Hasse first step; all steps must agree
  std::vector<std::pair<int, int>> todo;
  for (int a = 0; a < q.n; ++a)
    for (int b = 0; b < q.n; ++b)
      if (a != b && q.le(a, b)) todo.emplace_back(a, b);
  // intervals shrink upward, so repeated passes terminate
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [a, b] : todo) {
      if (f.res_[a][b]) continue;
      std::optional<GroupHom> derived;
      bool all_ready = true;
      for (const auto& [x, m] : edges) {
        if (x != a || !q.le(m, b)) continue;
        if (!f.res_[m][b]) {
          all_ready = false;
          continue;
        }
        GroupHom candidate = compose(*f.res_[a][m], *f.res_[m][b]);
        if (!derived) {
          derived = std::move(candidate);
        } else if (!homs_equal(*derived, candidate)) {
          fail(errc::path_dependence, "two paths from " + q.label(b) + " down to " +
                                          q.label(a) + " compose differently");
        }
      }
      if (all_ready && derived) {
        f.res_[a][b] = std::move(*derived);
        progress = true;
      }
    }
  }
  for (auto& [a, b] : todo)
    if (!f.res_[a][b])
      fail(errc::path_dependence, "could not derive restriction " + q.label(a) +
                                      " <= " + q.label(b));
  verify_functorial(f);
  return f;
}

inline AbPresheaf constant_presheaf(QPtr base, const FgAbGroup& k) {
  const Quantale& q = *base;
  AbPresheaf f;
  f.base = base;
  f.values.assign(q.n, k);
  f.res_.assign(q.n, std::vector<std::optional<GroupHom>>(q.n));
  for (int a = 0; a < q.n; ++a)
    for (int b = 0; b < q.n; ++b)
      if (q.le(a, b)) f.res_[a][b] = GroupHom::identity(k);
  return f;
}

/// Join-irreducible elements: j != join of everything strictly below j.
inline std::vector<int> join_irreducibles(const Quantale& q) {
  std::vector<int> out;
  for (int j = 0; j < q.n; ++j) {
    uint64_t below = 0;
    for (int x = 0; x < q.n; ++x)
      if (x != j && q.le(x, j)) below |= uint64_t(1) << x;
    if (q.join_mask(below) != j) out.push_back(j);
  }
  return out;
}

/// Connected components of an element of a locale: components of the graph
/// on join-irreducibles below it, with edges where meets are nonbottom.
/// For the locale of a finite space this is topological connectedness.
inline std::vector<std::vector<int>> locale_element_components(const Quantale& q, int u) {
  std::vector<int> jd;
  for (int j : join_irreducibles(q))
    if (q.le(j, u)) jd.push_back(j);
  const int m = static_cast<int>(jd.size());
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> cur;
    std::vector<int> stack{i};
    comp[i] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      cur.push_back(jd[a]);
      for (int b = 0; b < m; ++b) {
        if (comp[b] >= 0) continue;
        if (q.meet_pair(jd[a], jd[b]) != q.bottom) {
          comp[b] = comp[a];
          stack.push_back(b);
        }
      }
    }
    std::sort(cur.begin(), cur.end());
    out.push_back(std::move(cur));
  }
  return out;
}

/// The locally-constant sheaf on a locale: one copy of K per connected
/// component, restrictions routing each component into the component
/// containing it. value(bottom) is the trivial group.
inline AbPresheaf locally_constant_sheaf(QPtr base, const FgAbGroup& k) {
  const Quantale& q = *base;
  if (!q.flags.locale)
    fail(errc::validation_error, "locally-constant sheaf needs a locale");
  const int kg = k.gens();

  std::vector<std::vector<std::vector<int>>> comps(q.n);
  AbPresheaf f;
  f.base = base;
  f.values.resize(q.n);
  for (int u = 0; u < q.n; ++u) {
    comps[u] = locale_element_components(q, u);
    std::vector<FgAbGroup> copies(comps[u].size(), k);
    f.values[u] = direct_sum(copies).sum;
  }
  f.res_.assign(q.n, std::vector<std::optional<GroupHom>>(q.n));
  for (int a = 0; a < q.n; ++a)
    for (int b = 0; b < q.n; ++b) {
      if (!q.le(a, b)) continue;
      // each a-component lies inside exactly one b-component
      Mat m(static_cast<int>(comps[a].size()) * kg,
            static_cast<int>(comps[b].size()) * kg);
      for (size_t ca = 0; ca < comps[a].size(); ++ca) {
        int rep = comps[a][ca].front();
        int cb = -1;
        for (size_t t = 0; t < comps[b].size(); ++t)
          if (std::find(comps[b][t].begin(), comps[b][t].end(), rep) !=
              comps[b][t].end())
            cb = static_cast<int>(t);
        if (cb < 0)
          fail(errc::validation_error, "component not found upward");
        for (int g = 0; g < kg; ++g)
          m(static_cast<int>(ca) * kg + g, cb * kg + g) = 1;
      }
      f.res_[a][b] = GroupHom(f.values[b], f.values[a], std::move(m));
    }
  return f;
}

inline AbPresheaf locally_constant_sheaf(const SpaceLocale& loc, const FgAbGroup& k) {
  return locally_constant_sheaf(loc.quantale, k);
}

/// F o f : pull a presheaf on Q back along a monotone map Q' -> Q.
inline AbPresheaf pullback_presheaf(const AbPresheaf& f, const MonotoneMap& m) {
  if (m.target.get() != f.base.get())
    fail(errc::incompatible_shapes, "pullback target mismatch");
  const Quantale& q2 = *m.source;
  AbPresheaf out;
  out.base = m.source;
  out.values.resize(q2.n);
  for (int u = 0; u < q2.n; ++u) out.values[u] = f.value(m(u));
  out.res_.assign(q2.n, std::vector<std::optional<GroupHom>>(q2.n));
  for (int a = 0; a < q2.n; ++a)
    for (int b = 0; b < q2.n; ++b)
      if (q2.le(a, b)) out.res_[a][b] = f.res(m(a), m(b));
  verify_functorial(out);
  return out;
}

/// Per-cover verdict of the equalizer sheaf condition.
struct CoverVerdict {
  int element;
  std::vector<int> members;
  bool pass;
  std::string kind;  // "NotInjective" or "NotExact" when failed
};

struct SheafReport {
  bool is_sheaf = true;
  int covers_checked = 0;
  std::vector<CoverVerdict> failures;
};

/// Check the equalizer condition for one cover: e injective and
/// ker(p - q) = im e, reduced to integer linear algebra.
inline CoverVerdict sheaf_check_cover(const AbPresheaf& f, int u,
                                      const std::vector<int>& members) {
  const Quantale& q = *f.base;
  CoverVerdict v{u, members, true, ""};
  const int t = static_cast<int>(members.size());

  std::vector<FgAbGroup> level1;
  for (int i : members) level1.push_back(f.value(i));
  DirectSum c1 = direct_sum(level1);

  std::vector<FgAbGroup> level2;
  std::vector<int> pair_elem;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      int e = q.times(members[i], members[j]);
      pair_elem.push_back(e);
      level2.push_back(f.value(e));
    }
  DirectSum c2 = direct_sum(level2);

  Mat emat(c1.sum.gens(), f.value(u).gens());
  for (int i = 0; i < t; ++i) {
    const GroupHom& r = f.res(members[i], u);
    for (int rr = 0; rr < r.matrix.rows; ++rr)
      for (int cc = 0; cc < r.matrix.cols; ++cc)
        emat(c1.offsets[i] + rr, cc) = r.matrix(rr, cc);
  }
  GroupHom e_hom(f.value(u), c1.sum, std::move(emat));

  Mat pq(c2.sum.gens(), c1.sum.gens());
  int blk = 0;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j, ++blk) {
      int prod = pair_elem[blk];
      const GroupHom& ri = f.res(prod, members[i]);
      for (int rr = 0; rr < ri.matrix.rows; ++rr)
        for (int cc = 0; cc < ri.matrix.cols; ++cc)
          pq(c2.offsets[blk] + rr, c1.offsets[i] + cc) += ri.matrix(rr, cc);
      const GroupHom& rj = f.res(prod, members[j]);
      for (int rr = 0; rr < rj.matrix.rows; ++rr)
        for (int cc = 0; cc < rj.matrix.cols; ++cc)
          pq(c2.offsets[blk] + rr, c1.offsets[j] + cc) -= rj.matrix(rr, cc);
    }
  GroupHom pq_hom(c1.sum, c2.sum, std::move(pq));

  // injectivity: ker e = 0
  Subquotient ker_e = subquotient(e_hom, GroupHom::zero(FgAbGroup(), f.value(u)));
  if (!ker_e.h.is_trivial()) {
    v.pass = false;
    v.kind = "NotInjective";
    return v;
  }
  // exactness: ker(p - q) / im e = 0
  Subquotient mid = subquotient(pq_hom, e_hom);
  if (!mid.h.is_trivial()) {
    v.pass = false;
    v.kind = "NotExact";
  }
  return v;
}

/// Enumerate all duplicate-free subset covers of every element (bottom is
/// covered by the empty family) and check the equalizer condition on each,
/// or only on the covers supplied.
inline SheafReport sheaf_check(
    const AbPresheaf& f,
    const std::vector<std::pair<int, std::vector<int>>>* covers = nullptr,
    int downset_cap = 16) {
  const Quantale& q = *f.base;
  SheafReport report;
  auto run = [&](int u, const std::vector<int>& members) {
    CoverVerdict v = sheaf_check_cover(f, u, members);
    ++report.covers_checked;
    if (!v.pass) {
      report.is_sheaf = false;
      report.failures.push_back(std::move(v));
    }
  };
  if (covers) {
    for (const auto& [u, members] : *covers) run(u, members);
    return report;
  }
  for (int u = 0; u < q.n; ++u) {
    std::vector<int> down;
    for (int w = 0; w < q.n; ++w)
      if (q.le(w, u) && w != q.bottom) down.push_back(w);
    if (static_cast<int>(down.size()) > downset_cap)
      fail(errc::size_cap_exceeded, "downset of " + q.label(u) + " has " +
                                        std::to_string(down.size()) + " elements");
    const uint64_t total = uint64_t(1) << down.size();
    for (uint64_t s = 0; s < total; ++s) {
      std::vector<int> members;
      for (size_t i = 0; i < down.size(); ++i)
        if (s >> i & 1) members.push_back(down[i]);
      if (q.join(members) != u) continue;
      run(u, members);
    }
  }
  return report;
}

}  // namespace qcech
