#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcech/error.hpp"

namespace qcech {

struct QuantaleFlags {
  bool semicartesian = false;
  bool commutative = false;
  bool unital = false;
  bool idempotent = false;
  bool geometric = false;
  bool locale = false;  // multiplication coincides with binary meet
};

/// Finite quantale: complete lattice (given by its order) with an
/// associative multiplication distributing over joins on both sides.
/// Immutable after validation.
struct Quantale {
  int n = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<int>> join2;  // pairwise joins, cached
  std::vector<std::vector<int>> meet2;  // pairwise meets, cached
  std::vector<std::vector<int>> mul;
  int bottom = -1;
  int top = -1;
  QuantaleFlags flags;

  bool le(int a, int b) const { return leq[a][b]; }
  int join_pair(int a, int b) const { return join2[a][b]; }
  int meet_pair(int a, int b) const { return meet2[a][b]; }
  int times(int a, int b) const { return mul[a][b]; }

  /// Least upper bound of a subset; empty join is bottom.
  int join(const std::vector<int>& s) const {
    int j = bottom;
    for (int x : s) j = join2[j][x];
    return j;
  }
  int join_mask(uint64_t mask) const {
    int j = bottom;
    for (int x = 0; x < n; ++x)
      if (mask >> x & 1) j = join2[j][x];
    return j;
  }

  uint64_t down_set(int u) const {
    uint64_t m = 0;
    for (int x = 0; x < n; ++x)
      if (leq[x][u]) m |= uint64_t(1) << x;
    return m;
  }

  const std::string& label(int i) const { return labels[i]; }
};

using QPtr = std::shared_ptr<const Quantale>;

inline constexpr int kDefaultElementCap = 64;

/// Validate raw tables into a Quantale: partial order, completeness,
/// associativity, distributivity over binary and empty joins (finite joins
/// are iterated binary joins, so this suffices), and derived flags.
inline QPtr validate_quantale(std::vector<std::string> labels,
                              std::vector<std::vector<bool>> leq,
                              std::vector<std::vector<int>> mul,
                              int cap = kDefaultElementCap) {
  const int n = static_cast<int>(labels.size());
  if (n > cap || n > 64)
    fail(errc::size_cap_exceeded,
         "quantale has " + std::to_string(n) + " elements, cap " + std::to_string(cap));
  if (n == 0) fail(errc::not_a_lattice, "empty element list");
  if (static_cast<int>(leq.size()) != n || static_cast<int>(mul.size()) != n)
    fail(errc::incompatible_shapes, "table size mismatch");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(leq[i].size()) != n || static_cast<int>(mul[i].size()) != n)
      fail(errc::incompatible_shapes, "table row size mismatch");

  auto q = std::make_shared<Quantale>();
  q->n = n;
  q->labels = std::move(labels);
  q->leq = std::move(leq);
  q->mul = std::move(mul);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (q->mul[i][j] < 0 || q->mul[i][j] >= n)
        fail(errc::incompatible_shapes, "mul table entry out of range");

  // partial order
  for (int a = 0; a < n; ++a)
    if (!q->leq[a][a]) fail(errc::not_a_partial_order, "not reflexive at " + q->labels[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && q->leq[a][b] && q->leq[b][a])
        fail(errc::not_a_partial_order,
             "not antisymmetric at " + q->labels[a] + ", " + q->labels[b]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (q->leq[a][b] && q->leq[b][c] && !q->leq[a][c])
          fail(errc::not_a_partial_order, "not transitive at " + q->labels[a] + " <= " +
                                              q->labels[b] + " <= " + q->labels[c]);

  // bottom, pairwise joins/meets (binary joins + bottom give all finite joins)
  q->bottom = -1;
  for (int a = 0; a < n; ++a) {
    bool below_all = true;
    for (int b = 0; b < n; ++b) below_all = below_all && q->leq[a][b];
    if (below_all) {
      q->bottom = a;
      break;
    }
  }
  if (q->bottom < 0) fail(errc::not_a_lattice, "no bottom element");

  auto least_of = [&](uint64_t bounds) -> int {
    for (int u = 0; u < n; ++u) {
      if (!(bounds >> u & 1)) continue;
      bool least = true;
      for (int v = 0; v < n && least; ++v)
        if ((bounds >> v & 1) && !q->leq[u][v]) least = false;
      if (least) return u;
    }
    return -1;
  };
  auto greatest_of = [&](uint64_t bounds) -> int {
    for (int u = 0; u < n; ++u) {
      if (!(bounds >> u & 1)) continue;
      bool greatest = true;
      for (int v = 0; v < n && greatest; ++v)
        if ((bounds >> v & 1) && !q->leq[v][u]) greatest = false;
      if (greatest) return u;
    }
    return -1;
  };

  q->join2.assign(n, std::vector<int>(n, -1));
  q->meet2.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      uint64_t ub = 0, lb = 0;
      for (int x = 0; x < n; ++x) {
        if (q->leq[a][x] && q->leq[b][x]) ub |= uint64_t(1) << x;
        if (q->leq[x][a] && q->leq[x][b]) lb |= uint64_t(1) << x;
      }
      int j = least_of(ub);
      if (j < 0)
        fail(errc::not_a_lattice,
             "no join of " + q->labels[a] + " and " + q->labels[b]);
      q->join2[a][b] = j;
      int m = greatest_of(lb);
      if (m < 0)
        fail(errc::not_a_lattice,
             "no meet of " + q->labels[a] + " and " + q->labels[b]);
      q->meet2[a][b] = m;
    }
  q->top = q->join_mask(~uint64_t(0) >> (64 - n));

  // associativity
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (q->mul[q->mul[a][b]][c] != q->mul[a][q->mul[b][c]])
          fail(errc::not_associative, "(" + q->labels[a] + " * " + q->labels[b] +
                                          ") * " + q->labels[c]);

  // distributivity over binary joins and the empty join, both sides
  for (int a = 0; a < n; ++a) {
    if (q->mul[a][q->bottom] != q->bottom || q->mul[q->bottom][a] != q->bottom)
      fail(errc::not_distributive, q->labels[a] + " * bottom != bottom");
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int bc = q->join2[b][c];
        if (q->mul[a][bc] != q->join2[q->mul[a][b]][q->mul[a][c]])
          fail(errc::not_distributive,
               q->labels[a] + " * (" + q->labels[b] + " v " + q->labels[c] + ")");
        if (q->mul[bc][a] != q->join2[q->mul[b][a]][q->mul[c][a]])
          fail(errc::not_distributive,
               "(" + q->labels[b] + " v " + q->labels[c] + ") * " + q->labels[a]);
      }
  }

  // flags
  auto& fl = q->flags;
  fl.semicartesian = fl.commutative = fl.unital = fl.idempotent = fl.locale = true;
  for (int a = 0; a < n; ++a) {
    if (q->mul[a][a] != a) fl.idempotent = false;
    if (q->mul[a][q->top] != a || q->mul[q->top][a] != a) fl.unital = false;
    for (int b = 0; b < n; ++b) {
      int p = q->mul[a][b];
      if (!q->leq[p][a] || !q->leq[p][b]) fl.semicartesian = false;
      if (p != q->mul[b][a]) fl.commutative = false;
      if (p != q->meet2[a][b]) fl.locale = false;
    }
  }

  // geometric: (-)^- preserves joins; binary + empty level decides all
  // finite joins
  {
    std::vector<int> approx(n);
    for (int x = 0; x < n; ++x) {
      int acc = q->bottom;
      for (int p = 0; p < n; ++p)
        if (q->mul[p][p] == p && q->leq[p][q->mul[x][p]]) acc = q->join2[acc][p];
      approx[x] = acc;
    }
    fl.geometric = approx[q->bottom] == q->bottom;
    for (int a = 0; a < n && fl.geometric; ++a)
      for (int b = 0; b < n && fl.geometric; ++b)
        if (approx[q->join2[a][b]] != q->join2[approx[a]][approx[b]])
          fl.geometric = false;
  }
  return q;
}

inline std::vector<int> idempotents(const Quantale& q) {
  std::vector<int> out;
  for (int p = 0; p < q.n; ++p)
    if (q.times(p, p) == p) out.push_back(p);
  return out;
}

/// Idempotent approximation: join of all idempotents p with p <= q*p.
inline int idem_approx(const Quantale& q, int x) {
  int acc = q.bottom;
  for (int p : idempotents(q))
    if (q.le(p, q.times(x, p))) acc = q.join_pair(acc, p);
  return acc;
}

/// Order-preserving map between quantales.
struct MonotoneMap {
  QPtr source, target;
  std::vector<int> table;

  MonotoneMap() = default;
  MonotoneMap(QPtr src, QPtr tgt, std::vector<int> tab)
      : source(std::move(src)), target(std::move(tgt)), table(std::move(tab)) {
    if (static_cast<int>(table.size()) != source->n)
      fail(errc::incompatible_shapes, "map table size mismatch");
    for (int v : table)
      if (v < 0 || v >= target->n)
        fail(errc::incompatible_shapes, "map table entry out of range");
    for (int a = 0; a < source->n; ++a)
      for (int b = 0; b < source->n; ++b)
        if (source->le(a, b) && !target->le(table[a], table[b]))
          fail(errc::not_monotone, source->label(a) + " <= " + source->label(b) +
                                       " not preserved");
  }

  int operator()(int x) const { return table[x]; }

  static MonotoneMap identity(QPtr q) {
    std::vector<int> tab(q->n);
    for (int i = 0; i < q->n; ++i) tab[i] = i;
    return MonotoneMap(q, q, std::move(tab));
  }
};

inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (g.source.get() != f.target.get())
    fail(errc::incompatible_shapes, "map composition endpoint mismatch");
  std::vector<int> tab(f.source->n);
  for (int i = 0; i < f.source->n; ++i) tab[i] = g.table[f.table[i]];
  return MonotoneMap(f.source, g.target, std::move(tab));
}

/// Sub- or derived quantale together with its structure map into (or out
/// of) the parent and the parent-element index of each element.
struct SubQuantale {
  QPtr quantale;
  MonotoneMap inclusion;
  std::vector<int> parent_index;
};

namespace detail {

inline SubQuantale restrict_to(QPtr parent, const std::vector<int>& subset,
                               errc closure_error) {
  const Quantale& q = *parent;
  const int m = static_cast<int>(subset.size());
  std::vector<int> pos(q.n, -1);
  for (int i = 0; i < m; ++i) pos[subset[i]] = i;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = q.times(subset[i], subset[j]);
      if (pos[p] < 0)
        fail(closure_error, q.label(subset[i]) + " * " + q.label(subset[j]) +
                                " = " + q.label(p) + " leaves the subset");
    }
  std::vector<std::string> labels(m);
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i) {
    labels[i] = q.label(subset[i]);
    for (int j = 0; j < m; ++j) {
      leq[i][j] = q.le(subset[i], subset[j]);
      mul[i][j] = pos[q.times(subset[i], subset[j])];
    }
  }
  SubQuantale out;
  out.quantale = validate_quantale(std::move(labels), std::move(leq), std::move(mul));
  out.parent_index = subset;
  out.inclusion = MonotoneMap(out.quantale, parent, subset);
  return out;
}

}  // namespace detail

/// The locale Idem(Q) of idempotent elements with the restricted
/// multiplication, plus its inclusion into Q.
inline SubQuantale idem_locale(QPtr parent) {
  if (!parent->flags.commutative)
    fail(errc::not_commutative, "Idem(Q) construction needs a commutative quantale");
  return detail::restrict_to(parent, idempotents(*parent), errc::not_closed_under_mul);
}

/// On idempotents of a commutative semicartesian quantale the restricted
/// multiplication is the inherited meet; returns a witness pair when not.
inline std::optional<std::pair<int, int>> idem_mul_meet_mismatch(const Quantale& q) {
  auto idem = idempotents(q);
  for (int p : idem)
    for (int r : idem) {
      int prod = q.times(p, r);
      // greatest idempotent below both
      int best = q.bottom;
      for (int s : idem)
        if (q.le(s, p) && q.le(s, r) && q.le(best, s)) best = s;
      if (prod != best) return std::make_pair(p, r);
    }
  return std::nullopt;
}

/// Interval sub-quantale [a^-, top] with the inclusion.
inline SubQuantale interval_quantale(QPtr parent, int a) {
  const Quantale& q = *parent;
  if (!q.flags.commutative || !q.flags.semicartesian)
    fail(errc::not_commutative,
         "interval construction needs a commutative semicartesian quantale");
  int lo = idem_approx(q, a);
  std::vector<int> subset;
  for (int x = 0; x < q.n; ++x)
    if (q.le(lo, x)) subset.push_back(x);
  return detail::restrict_to(parent, subset, errc::not_closed_under_mul);
}

/// Componentwise product quantale with its two projections.
struct ProductQuantale {
  QPtr quantale;
  MonotoneMap proj1, proj2;
  std::vector<std::pair<int, int>> pairs;  // element index -> (i1, i2)
};

inline ProductQuantale product_quantale(QPtr q1, QPtr q2,
                                        int cap = kDefaultElementCap) {
  const int n1 = q1->n, n2 = q2->n;
  if (n1 * n2 > cap)
    fail(errc::size_cap_exceeded, "product has " + std::to_string(n1 * n2) +
                                      " elements, cap " + std::to_string(cap));
  const int n = n1 * n2;
  auto idx = [&](int a, int b) { return a * n2 + b; };
  std::vector<std::string> labels(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::pair<int, int>> pairs(n);
  for (int a1 = 0; a1 < n1; ++a1)
    for (int a2 = 0; a2 < n2; ++a2) {
      int i = idx(a1, a2);
      labels[i] = "(" + q1->label(a1) + "," + q2->label(a2) + ")";
      pairs[i] = {a1, a2};
      for (int b1 = 0; b1 < n1; ++b1)
        for (int b2 = 0; b2 < n2; ++b2) {
          int j = idx(b1, b2);
          leq[i][j] = q1->le(a1, b1) && q2->le(a2, b2);
          mul[i][j] = idx(q1->times(a1, b1), q2->times(a2, b2));
        }
    }
  ProductQuantale out;
  out.quantale = validate_quantale(std::move(labels), std::move(leq), std::move(mul), cap);
  out.pairs = std::move(pairs);
  std::vector<int> t1(n), t2(n);
  for (int i = 0; i < n; ++i) {
    t1[i] = out.pairs[i].first;
    t2[i] = out.pairs[i].second;
  }
  out.proj1 = MonotoneMap(out.quantale, q1, std::move(t1));
  out.proj2 = MonotoneMap(out.quantale, q2, std::move(t2));
  return out;
}

}  // namespace qcech
