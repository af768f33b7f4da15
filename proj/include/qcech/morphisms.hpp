#pragma once

#include <string>

#include "qcech/quantale.hpp"

namespace qcech {

/// Which parts of the geometric-morphism contract a monotone map satisfies,
/// with the first counterexample (in canonical element order) when not.
struct GeometricCertificate {
  bool preserves_joins = false;
  bool preserves_unit = false;
  bool weak_mul = false;    // f(a) * f(b) <= f(a * b)
  bool strong_mul = false;  // f(a) * f(b)  = f(a * b)
  std::string join_witness, unit_witness, weak_witness, strong_witness;

  bool geometric() const { return preserves_joins && preserves_unit && weak_mul; }
  bool strong_geometric() const { return geometric() && strong_mul; }
};

inline GeometricCertificate certify_geometric(const MonotoneMap& f) {
  const Quantale& s = *f.source;
  const Quantale& t = *f.target;
  GeometricCertificate c;

  c.preserves_joins = true;
  if (f(s.bottom) != t.bottom) {
    c.preserves_joins = false;
    c.join_witness = "f(bottom) = " + t.label(f(s.bottom));
  }
  for (int a = 0; a < s.n && c.preserves_joins; ++a)
    for (int b = 0; b < s.n && c.preserves_joins; ++b)
      if (f(s.join_pair(a, b)) != t.join_pair(f(a), f(b))) {
        c.preserves_joins = false;
        c.join_witness = "f(" + s.label(a) + " v " + s.label(b) + ")";
      }

  c.preserves_unit = f(s.top) == t.top;
  if (!c.preserves_unit) c.unit_witness = "f(top) = " + t.label(f(s.top));

  c.weak_mul = c.strong_mul = true;
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) {
      int lhs = t.times(f(a), f(b));
      int rhs = f(s.times(a, b));
      if (!t.le(lhs, rhs) && c.weak_mul) {
        c.weak_mul = false;
        c.weak_witness = "f(" + s.label(a) + ")*f(" + s.label(b) + ")";
      }
      if (lhs != rhs && c.strong_mul) {
        c.strong_mul = false;
        c.strong_witness = "f(" + s.label(a) + ")*f(" + s.label(b) + ")";
      }
    }
  return c;
}

/// f_*(b) = join{a : f(a) <= b}; requires f to preserve joins. The
/// adjunction law f(a) <= b <=> a <= f_*(b) is verified exhaustively.
inline MonotoneMap right_adjoint(const MonotoneMap& f) {
  const Quantale& s = *f.source;
  const Quantale& t = *f.target;
  GeometricCertificate c = certify_geometric(f);
  if (!c.preserves_joins)
    fail(errc::does_not_preserve_joins, c.join_witness);

  std::vector<int> tab(t.n);
  for (int b = 0; b < t.n; ++b) {
    int acc = s.bottom;
    for (int a = 0; a < s.n; ++a)
      if (t.le(f(a), b)) acc = s.join_pair(acc, a);
    tab[b] = acc;
  }
  MonotoneMap g(f.target, f.source, std::move(tab));
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < t.n; ++b)
      if (t.le(f(a), b) != s.le(a, g(b)))
        fail(errc::validation_error, "adjunction law fails at " + s.label(a) +
                                         ", " + t.label(b));
  return g;
}

/// Hypothesis gate for the cohomology-invariance theorem: does a computed
/// direct image preserve the unit and nonempty joins? Nonempty finite joins
/// reduce to binary ones, and covers are nonempty families once bottom is
/// pruned, so this is exactly what pushing covers forward needs; right
/// adjoints generally do not preserve the empty join.
struct DirectImageFlags {
  bool unit = false;
  bool joins = false;
  std::string unit_witness, join_witness;
};

inline DirectImageFlags direct_image_preserves(const MonotoneMap& fstar) {
  const Quantale& s = *fstar.source;
  const Quantale& t = *fstar.target;
  DirectImageFlags out;
  out.unit = fstar(s.top) == t.top;
  if (!out.unit) out.unit_witness = "f_*(top) = " + t.label(fstar(s.top));
  out.joins = true;
  for (int a = 0; a < s.n && out.joins; ++a)
    for (int b = 0; b < s.n && out.joins; ++b)
      if (fstar(s.join_pair(a, b)) != t.join_pair(fstar(a), fstar(b))) {
        out.joins = false;
        out.join_witness = "f_*(" + s.label(a) + " v " + s.label(b) + ")";
      }
  return out;
}

inline bool is_surjective(const MonotoneMap& f) {
  std::vector<bool> hit(f.target->n, false);
  for (int v : f.table) hit[v] = true;
  for (bool h : hit)
    if (!h) return false;
  return true;
}

}  // namespace qcech
