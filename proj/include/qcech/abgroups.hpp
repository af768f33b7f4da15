#pragma once

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcech/matrix.hpp"

namespace qcech {

/// Finitely generated abelian group as a list of cyclic factors.
/// factor 0 = infinite cyclic, factor d >= 2 = Z/d. Canonical form is the
/// divisibility chain d1 | d2 | ... followed by the zeros.
struct FgAbGroup {
  std::vector<Int> factors;

  FgAbGroup() = default;
  explicit FgAbGroup(std::vector<Int> f) : factors(std::move(f)) {}

  int gens() const { return static_cast<int>(factors.size()); }
  bool is_trivial() const { return factors.empty(); }
  int rank() const {
    int r = 0;
    for (const auto& d : factors)
      if (d == 0) ++r;
    return r;
  }
  /// Group order; 0 when infinite.
  Int order() const {
    Int o = 1;
    for (const auto& d : factors) {
      if (d == 0) return 0;
      o *= d;
    }
    return o;
  }

  /// Canonicalize an arbitrary factor list (drops 1s, fixes the chain).
  static FgAbGroup canonical(const std::vector<Int>& raw) {
    int t = 0;
    for (const auto& d : raw)
      if (d != 0) ++t;
    Mat diag(t, t);
    int i = 0;
    for (const auto& d : raw)
      if (d != 0) diag(i, i) = d, ++i;
    SnfResult s = smith_normal_form(diag);
    std::vector<Int> out;
    for (int k = 0; k < t; ++k)
      if (s.diag(k) >= 2) out.push_back(s.diag(k));
    for (const auto& d : raw)
      if (d == 0) out.push_back(0);
    return FgAbGroup(std::move(out));
  }

  FgAbGroup canonical_form() const { return canonical(factors); }

  bool operator==(const FgAbGroup& o) const { return factors == o.factors; }

  std::string to_string() const {
    if (factors.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    int free_rank = 0;
    for (const auto& d : factors) {
      if (d == 0) {
        ++free_rank;
        continue;
      }
      if (!first) os << " + ";
      os << "Z/" << d;
      first = false;
    }
    if (free_rank > 0) {
      if (!first) os << " + ";
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
    }
    return os.str();
  }
};

inline bool groups_isomorphic(const FgAbGroup& a, const FgAbGroup& b) {
  return a.canonical_form() == b.canonical_form();
}

/// Square diagonal matrix of the relation lattice of a group (one column per
/// generator; zero columns at free generators are redundant but harmless).
inline Mat relation_matrix(const FgAbGroup& g) {
  Mat d(g.gens(), g.gens());
  for (int i = 0; i < g.gens(); ++i) d(i, i) = g.factors[i];
  return d;
}

/// Reduce coordinates into canonical representatives mod the relations.
inline std::vector<Int> reduce_coords(const FgAbGroup& g, std::vector<Int> x) {
  for (int i = 0; i < g.gens(); ++i) {
    const Int& d = g.factors[i];
    if (d != 0) {
      x[i] %= d;
      if (x[i] < 0) x[i] += d;
    }
  }
  return x;
}

/// Homomorphism between fg abelian groups as an integer matrix
/// (codomain generators x domain generators).
struct GroupHom {
  FgAbGroup domain, codomain;
  Mat matrix;

  GroupHom() = default;
  GroupHom(FgAbGroup dom, FgAbGroup cod, Mat m)
      : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
    if (matrix.rows != codomain.gens() || matrix.cols != domain.gens())
      fail(errc::bad_hom_shape, "matrix " + std::to_string(matrix.rows) + "x" +
                                    std::to_string(matrix.cols) +
                                    " does not fit hom shape");
    // d * column must lie in the codomain relation lattice
    for (int j = 0; j < domain.gens(); ++j) {
      const Int& dj = domain.factors[j];
      if (dj == 0) continue;
      for (int i = 0; i < codomain.gens(); ++i) {
        const Int& ci = codomain.factors[i];
        Int v = dj * matrix(i, j);
        bool ok = (ci == 0) ? (v == 0) : (v % ci == 0);
        if (!ok)
          fail(errc::bad_hom_shape, "column " + std::to_string(j) +
                                        " incompatible with codomain relations");
      }
    }
  }

  static GroupHom zero(FgAbGroup dom, FgAbGroup cod) {
    Mat m(cod.gens(), dom.gens());
    return GroupHom(std::move(dom), std::move(cod), std::move(m));
  }
  static GroupHom identity(FgAbGroup g) {
    Mat m = Mat::identity(g.gens());
    return GroupHom(g, g, std::move(m));
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    return reduce_coords(codomain, mat_apply(matrix, x));
  }
};

inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!(f.codomain == g.domain))
    fail(errc::incompatible_shapes, "compose: domain/codomain mismatch");
  return GroupHom(f.domain, g.codomain, mat_mul(g.matrix, f.matrix));
}

/// A matrix represents the zero map iff every column lies in the codomain
/// relation lattice.
inline bool matrix_is_zero_map(const Mat& m, const FgAbGroup& codomain) {
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i) {
      const Int& ci = codomain.factors[i];
      bool ok = (ci == 0) ? (m(i, j) == 0) : (m(i, j) % ci == 0);
      if (!ok) return false;
    }
  return true;
}

inline bool homs_equal(const GroupHom& a, const GroupHom& b) {
  if (!(a.domain == b.domain) || !(a.codomain == b.codomain)) return false;
  Mat diff = a.matrix;
  for (size_t i = 0; i < diff.a.size(); ++i) diff.a[i] -= b.matrix.a[i];
  return matrix_is_zero_map(diff, a.codomain);
}

inline bool hom_is_zero(const GroupHom& h) {
  return matrix_is_zero_map(h.matrix, h.codomain);
}

/// ker g / im f for B --g--> C, A --f--> B with g o f = 0, via free
/// presentations and Smith normal form. Carries enough data to express
/// classes of B-elements in H-coordinates.
struct Subquotient {
  FgAbGroup h;        // canonical invariant factors
  FgAbGroup ambient;  // B
  Mat lmat;           // basis of the lifted kernel lattice in Z^m (m x r)
  Mat uy, uyinv;      // row transform of the SNF of the relation expression
  std::vector<int> kept;  // rows of uy-coordinates that survive (factor != 1)

  /// H-coordinates of the class of x (given in B-generator coordinates);
  /// nullopt when x is not in ker g.
  std::optional<std::vector<Int>> class_of(const std::vector<Int>& x) const {
    auto y = solve_integer(lmat, x);
    if (!y) return std::nullopt;
    std::vector<Int> z = mat_apply(uy, *y);
    std::vector<Int> out(kept.size());
    for (size_t i = 0; i < kept.size(); ++i) out[i] = z[kept[i]];
    return reduce_coords(h, std::move(out));
  }

  /// B-coordinates of a representative of the i-th H-generator.
  std::vector<Int> generator_rep(int i) const {
    std::vector<Int> e(uyinv.cols);
    e[kept[i]] = 1;
    return mat_apply(lmat, mat_apply(uyinv, e));
  }
};

inline Subquotient subquotient(const GroupHom& g, const GroupHom& f) {
  if (!(f.codomain == g.domain))
    fail(errc::incompatible_shapes, "subquotient: codomain(f) != domain(g)");
  if (!matrix_is_zero_map(mat_mul(g.matrix, f.matrix), g.codomain))
    fail(errc::composition_not_zero, "g o f is not the zero map");
  const FgAbGroup& b = g.domain;
  const int m = b.gens();
  Mat db = relation_matrix(b);
  Mat dc = relation_matrix(g.codomain);

  // lifted kernel lattice: projections of ker[G | D_C] plus the B-relations
  Mat ext = hcat(g.matrix, dc);
  Mat kext = kernel_basis(ext);
  Mat l0(m, kext.cols);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < kext.cols; ++c) l0(r, c) = kext(r, c);
  Mat lall = hcat(l0, db);

  // lattice basis: U L V = D  =>  column lattice = Uinv * D
  SnfResult ls = smith_normal_form(lall);
  int rank = ls.rank();
  Mat lmat(m, rank);
  for (int i = 0; i < rank; ++i) {
    Int d = ls.diag(i);
    for (int r = 0; r < m; ++r) lmat(r, i) = ls.uinv(r, i) * d;
  }

  // relations of H inside the kernel basis: [F | D_B] in lmat coordinates
  Mat rel = hcat(f.matrix, db);
  auto y = solve_integer_mat(lmat, rel);
  if (!y)
    fail(errc::composition_not_zero,
         "image of f does not lie in the kernel lattice");

  SnfResult ys = smith_normal_form(*y);
  Subquotient sq;
  sq.ambient = b;
  sq.lmat = std::move(lmat);
  sq.uy = ys.u;
  sq.uyinv = ys.uinv;
  std::vector<Int> factors;
  for (int i = 0; i < rank; ++i) {
    Int d = ys.diag(i);
    if (d == 1) continue;
    sq.kept.push_back(i);
    factors.push_back(d);
  }
  sq.h = FgAbGroup(std::move(factors));
  return sq;
}

/// The map H -> H' on subquotients induced by h: B -> B'. Verifies that h
/// preserves the kernels and the images.
inline GroupHom induced_map(const GroupHom& h, const Subquotient& sq,
                            const Subquotient& sq2, const GroupHom& f,
                            const GroupHom& f2) {
  if (!(h.domain == sq.ambient) || !(h.codomain == sq2.ambient))
    fail(errc::incompatible_shapes, "induced_map: ambient mismatch");
  // image preservation: h(im f) must land in im f' + relations of B'
  Mat target = hcat(f2.matrix, relation_matrix(sq2.ambient));
  Mat hf = mat_mul(h.matrix, f.matrix);
  if (!solve_integer_mat(target, hf))
    fail(errc::does_not_preserve_image, "h(im f) not inside im f'");

  Mat out(sq2.h.gens(), sq.h.gens());
  for (int j = 0; j < sq.h.gens(); ++j) {
    std::vector<Int> rep = sq.generator_rep(j);
    std::vector<Int> img = mat_apply(h.matrix, rep);
    auto cls = sq2.class_of(img);
    if (!cls)
      fail(errc::does_not_preserve_kernel,
           "image of generator " + std::to_string(j) + " is not in ker g'");
    for (int i = 0; i < sq2.h.gens(); ++i) out(i, j) = (*cls)[i];
  }
  return GroupHom(sq.h, sq2.h, std::move(out));
}

/// Finite direct sum with block bookkeeping (offsets into the generator
/// list of the sum, in input order).
struct DirectSum {
  FgAbGroup sum;             // factors concatenated in block order
  std::vector<int> offsets;  // offsets.size() == #blocks + 1
};

inline DirectSum direct_sum(const std::vector<FgAbGroup>& parts) {
  DirectSum out;
  out.offsets.push_back(0);
  for (const auto& p : parts) {
    for (const auto& d : p.factors) out.sum.factors.push_back(d);
    out.offsets.push_back(static_cast<int>(out.sum.factors.size()));
  }
  return out;
}

/// Cochain complex of fg abelian groups; d[q] : groups[q] -> groups[q+1],
/// with d o d = 0 checked at construction.
struct IntComplex {
  std::vector<FgAbGroup> groups;
  std::vector<GroupHom> diffs;  // diffs.size() == groups.size() - 1 (or 0)

  IntComplex() = default;
  IntComplex(std::vector<FgAbGroup> gs, std::vector<GroupHom> ds)
      : groups(std::move(gs)), diffs(std::move(ds)) {
    if (!groups.empty() && diffs.size() + 1 != groups.size())
      fail(errc::incompatible_shapes, "complex length mismatch");
    for (size_t q = 0; q < diffs.size(); ++q) {
      if (!(diffs[q].domain == groups[q]) || !(diffs[q].codomain == groups[q + 1]))
        fail(errc::incompatible_shapes, "differential endpoints at degree " +
                                            std::to_string(q));
      if (q + 1 < diffs.size() && !hom_is_zero(compose(diffs[q + 1], diffs[q])))
        fail(errc::composition_not_zero, "d o d != 0 at degree " + std::to_string(q));
    }
  }

  /// Cohomology at degree q as a subquotient (with incoming/outgoing maps
  /// taken as zero past the ends).
  Subquotient cohomology(int q) const {
    GroupHom out = (q < static_cast<int>(diffs.size()))
                       ? diffs[q]
                       : GroupHom::zero(groups[q], FgAbGroup());
    GroupHom in = (q > 0) ? diffs[q - 1] : GroupHom::zero(FgAbGroup(), groups[q]);
    return subquotient(out, in);
  }
};

}  // namespace qcech
