#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "qcech/quantale.hpp"
#include "qcech/spaces.hpp"

namespace qcech {

inline constexpr int kDefaultRingCap = 64;

/// Finite commutative unital ring with explicit tables. Elements are
/// indices 0..n-1; subsets (ideals) are bitmasks.
struct FiniteRing {
  int n = 0;
  std::vector<std::string> names;
  std::vector<std::vector<int>> add, mul;
  int zero = -1, one = -1;
  // set when built by function_ring(q, k)
  int fun_q = 0, fun_k = 0;

  bool is_function_ring() const { return fun_k > 0; }

  int neg(int a) const {
    for (int b = 0; b < n; ++b)
      if (add[a][b] == zero) return b;
    return -1;
  }

  std::string describe(uint64_t mask) const {
    std::string s = "{";
    bool first = true;
    for (int e = 0; e < n; ++e)
      if (mask >> e & 1) {
        if (!first) s += ",";
        s += names[e];
        first = false;
      }
    return s + "}";
  }
};

using RingPtr = std::shared_ptr<const FiniteRing>;

/// Exhaustive commutative-unital-ring axiom check.
inline RingPtr make_ring(std::vector<std::string> names,
                         std::vector<std::vector<int>> add,
                         std::vector<std::vector<int>> mul,
                         int cap = kDefaultRingCap) {
  auto r = std::make_shared<FiniteRing>();
  r->n = static_cast<int>(names.size());
  if (r->n > cap || r->n > 64)
    fail(errc::size_cap_exceeded,
         "ring has " + std::to_string(r->n) + " elements, cap " + std::to_string(cap));
  r->names = std::move(names);
  r->add = std::move(add);
  r->mul = std::move(mul);
  const int n = r->n;
  auto in_range = [&](const std::vector<std::vector<int>>& t) {
    if (static_cast<int>(t.size()) != n) return false;
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != n) return false;
      for (int v : row)
        if (v < 0 || v >= n) return false;
    }
    return true;
  };
  if (!in_range(r->add) || !in_range(r->mul))
    fail(errc::incompatible_shapes, "ring table shape/range");

  for (int a = 0; a < n; ++a) {
    bool za = true;
    for (int b = 0; b < n; ++b) za = za && r->add[a][b] == b;
    if (za) r->zero = a;
    bool oa = true;
    for (int b = 0; b < n; ++b) oa = oa && r->mul[a][b] == b;
    if (oa) r->one = a;
  }
  if (r->zero < 0) fail(errc::not_a_ring, "no additive identity");
  if (r->one < 0) fail(errc::not_a_ring, "no multiplicative identity");
  for (int a = 0; a < n; ++a) {
    if (r->neg(a) < 0) fail(errc::not_a_ring, "no additive inverse of " + r->names[a]);
    for (int b = 0; b < n; ++b) {
      if (r->add[a][b] != r->add[b][a]) fail(errc::not_a_ring, "addition not commutative");
      if (r->mul[a][b] != r->mul[b][a])
        fail(errc::not_a_ring, "multiplication not commutative");
      for (int c = 0; c < n; ++c) {
        if (r->add[r->add[a][b]][c] != r->add[a][r->add[b][c]])
          fail(errc::not_a_ring, "addition not associative");
        if (r->mul[r->mul[a][b]][c] != r->mul[a][r->mul[b][c]])
          fail(errc::not_a_ring, "multiplication not associative");
        if (r->mul[a][r->add[b][c]] != r->add[r->mul[a][b]][r->mul[a][c]])
          fail(errc::not_a_ring, "distributivity fails");
      }
    }
  }
  return r;
}

inline RingPtr zmod_ring(int m, int cap = kDefaultRingCap) {
  std::vector<std::string> names(m);
  std::vector<std::vector<int>> add(m, std::vector<int>(m)), mul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < m; ++b) {
      add[a][b] = (a + b) % m;
      mul[a][b] = (a * b) % m;
    }
  }
  return make_ring(std::move(names), std::move(add), std::move(mul), cap);
}

/// F_q^k with componentwise operations: the finite stand-in for the ring
/// of functions on a k-point discrete space with values in F_q.
inline RingPtr function_ring(int q, int k, int cap = kDefaultRingCap) {
  for (int d = 2; d < q; ++d)
    if (q % d == 0) fail(errc::not_a_function_ring, "q must be prime");
  if (q < 2 || k < 1) fail(errc::not_a_function_ring, "need prime q and k >= 1");
  int n = 1;
  for (int i = 0; i < k; ++i) {
    n *= q;
    if (n > cap) fail(errc::size_cap_exceeded, "function ring exceeds cap");
  }
  auto digits = [&](int e) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
      d[i] = e % q;
      e /= q;
    }
    return d;
  };
  auto pack = [&](const std::vector<int>& d) {
    int e = 0;
    for (int i = k - 1; i >= 0; --i) e = e * q + d[i];
    return e;
  };
  std::vector<std::string> names(n);
  std::vector<std::vector<int>> add(n, std::vector<int>(n)), mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    auto da = digits(a);
    std::string s = "(";
    for (int i = 0; i < k; ++i) s += (i ? "," : "") + std::to_string(da[i]);
    names[a] = s + ")";
    for (int b = 0; b < n; ++b) {
      auto db = digits(b);
      std::vector<int> ds(k), dp(k);
      for (int i = 0; i < k; ++i) {
        ds[i] = (da[i] + db[i]) % q;
        dp[i] = (da[i] * db[i]) % q;
      }
      add[a][b] = pack(ds);
      mul[a][b] = pack(dp);
    }
  }
  auto r = make_ring(std::move(names), std::move(add), std::move(mul), cap);
  auto mut = std::const_pointer_cast<FiniteRing>(r);
  mut->fun_q = q;
  mut->fun_k = k;
  return r;
}

/// Smallest ideal containing the given subset.
inline uint64_t ideal_generated_by(const FiniteRing& r, uint64_t seed) {
  uint64_t cur = seed | (uint64_t(1) << r.zero);
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < r.n; ++a) {
      if (!(cur >> a & 1)) continue;
      int na = r.neg(a);
      if (!(cur >> na & 1)) {
        cur |= uint64_t(1) << na;
        grew = true;
      }
      for (int b = 0; b < r.n; ++b) {
        if (cur >> b & 1) {
          int s = r.add[a][b];
          if (!(cur >> s & 1)) {
            cur |= uint64_t(1) << s;
            grew = true;
          }
        }
        int p = r.mul[a][b];
        if (!(cur >> p & 1)) {
          cur |= uint64_t(1) << p;
          grew = true;
        }
      }
    }
  }
  return cur;
}

inline bool is_ideal(const FiniteRing& r, uint64_t mask) {
  return ideal_generated_by(r, mask) == mask;
}

/// All ideals, by generator closure from the zero ideal; ascending mask order.
inline std::vector<uint64_t> enumerate_ideals(const FiniteRing& r) {
  std::vector<uint64_t> found{ideal_generated_by(r, 0)};
  for (size_t i = 0; i < found.size(); ++i) {
    uint64_t base = found[i];
    for (int e = 0; e < r.n; ++e) {
      if (base >> e & 1) continue;
      uint64_t j = ideal_generated_by(r, base | (uint64_t(1) << e));
      if (std::find(found.begin(), found.end(), j) == found.end()) found.push_back(j);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

/// The quantale of ideals: order by inclusion, join by ideal sum,
/// multiplication by ideal product.
struct IdealQuantale {
  QPtr quantale;
  RingPtr ring;
  std::vector<uint64_t> ideals;  // element index -> mask, ascending

  int index_of(uint64_t mask) const {
    auto it = std::lower_bound(ideals.begin(), ideals.end(), mask);
    if (it == ideals.end() || *it != mask)
      fail(errc::validation_error, "subset " + ring->describe(mask) + " is not an ideal");
    return static_cast<int>(it - ideals.begin());
  }
};

inline IdealQuantale ideal_quantale(RingPtr ring, int cap = kDefaultElementCap) {
  const FiniteRing& r = *ring;
  std::vector<uint64_t> ideals = enumerate_ideals(r);
  const int n = static_cast<int>(ideals.size());
  if (n > cap) fail(errc::size_cap_exceeded, "too many ideals");
  auto idx = [&](uint64_t m) {
    return static_cast<int>(std::lower_bound(ideals.begin(), ideals.end(), m) -
                            ideals.begin());
  };
  std::vector<std::string> labels(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    labels[i] = r.describe(ideals[i]);
    for (int j = 0; j < n; ++j) {
      leq[i][j] = (ideals[i] & ~ideals[j]) == 0;
      uint64_t prod = 0;
      for (int a = 0; a < r.n; ++a)
        if (ideals[i] >> a & 1)
          for (int b = 0; b < r.n; ++b)
            if (ideals[j] >> b & 1) prod |= uint64_t(1) << r.mul[a][b];
      mul[i][j] = idx(ideal_generated_by(r, prod));
    }
  }
  IdealQuantale out;
  out.quantale = validate_quantale(std::move(labels), std::move(leq), std::move(mul), cap);
  out.ring = std::move(ring);
  out.ideals = std::move(ideals);
  return out;
}

/// Divisor fast path for the ideals of Z/m; labels are "(d)".
struct ZmodIdeals {
  QPtr quantale;
  std::vector<int> divisors;  // element index -> d, ideal (d)
};

inline ZmodIdeals ideals_of_zmod(int m, int cap = kDefaultElementCap) {
  if (m < 1) fail(errc::validation_error, "need m >= 1");
  std::vector<int> divs;
  for (int d = m; d >= 1; --d)
    if (m % d == 0) divs.push_back(d);  // descending: (m) = (0) first
  const int n = static_cast<int>(divs.size());
  if (n > cap) fail(errc::size_cap_exceeded, "too many divisors");
  auto idx = [&](int d) {
    return static_cast<int>(std::find(divs.begin(), divs.end(), d) - divs.begin());
  };
  std::vector<std::string> labels(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    labels[i] = "(" + std::to_string(divs[i] % m) + ")";
    for (int j = 0; j < n; ++j) {
      leq[i][j] = divs[i] % divs[j] == 0;
      mul[i][j] = idx(static_cast<int>(std::gcd(int64_t(divs[i]) * divs[j], int64_t(m))));
    }
  }
  ZmodIdeals out;
  out.quantale = validate_quantale(std::move(labels), std::move(leq), std::move(mul), cap);
  out.divisors = std::move(divs);
  return out;
}

/// tau: ideals of F_q^k -> opens of the k-point discrete space; the set of
/// coordinates where some member of the ideal is nonzero.
inline uint64_t tau_open(const FiniteRing& r, uint64_t ideal_mask) {
  if (!r.is_function_ring())
    fail(errc::not_a_function_ring, "tau needs a function ring");
  uint64_t open_set = 0;
  for (int e = 0; e < r.n; ++e) {
    if (!(ideal_mask >> e & 1)) continue;
    int v = e;
    for (int i = 0; i < r.fun_k; ++i) {
      if (v % r.fun_q != 0) open_set |= uint64_t(1) << i;
      v /= r.fun_q;
    }
  }
  return open_set;
}

/// theta: opens of the k-point discrete space -> ideals; all functions
/// vanishing outside the open set (already an ideal, so "generated by"
/// adds nothing; that equality is asserted).
inline uint64_t theta_ideal(const FiniteRing& r, uint64_t open_set) {
  if (!r.is_function_ring())
    fail(errc::not_a_function_ring, "theta needs a function ring");
  uint64_t mask = 0;
  for (int e = 0; e < r.n; ++e) {
    int v = e;
    bool vanishes_outside = true;
    for (int i = 0; i < r.fun_k; ++i) {
      if (v % r.fun_q != 0 && !(open_set >> i & 1)) vanishes_outside = false;
      v /= r.fun_q;
    }
    if (vanishes_outside) mask |= uint64_t(1) << e;
  }
  if (ideal_generated_by(r, mask) != mask)
    fail(errc::validation_error, "vanishing set is not an ideal");
  return mask;
}

/// tau as a monotone map from the ideal quantale of F_q^k to the locale of
/// the k-point discrete space.
inline MonotoneMap tau_map(const IdealQuantale& iq, const SpaceLocale& loc) {
  std::vector<int> tab(iq.quantale->n);
  for (int i = 0; i < iq.quantale->n; ++i)
    tab[i] = loc.index_of(tau_open(*iq.ring, iq.ideals[i]));
  return MonotoneMap(iq.quantale, loc.quantale, std::move(tab));
}

inline MonotoneMap theta_map(const SpaceLocale& loc, const IdealQuantale& iq) {
  std::vector<int> tab(loc.quantale->n);
  for (int i = 0; i < loc.quantale->n; ++i)
    tab[i] = iq.index_of(theta_ideal(*iq.ring, loc.opens[i]));
  return MonotoneMap(loc.quantale, iq.quantale, std::move(tab));
}

/// Unital ring homomorphism as an element table.
struct RingHom {
  RingPtr source, target;
  std::vector<int> table;

  RingHom(RingPtr src, RingPtr tgt, std::vector<int> tab)
      : source(std::move(src)), target(std::move(tgt)), table(std::move(tab)) {
    const FiniteRing& r = *source;
    const FiniteRing& s = *target;
    if (static_cast<int>(table.size()) != r.n)
      fail(errc::incompatible_shapes, "ring hom table size");
    for (int v : table)
      if (v < 0 || v >= s.n) fail(errc::incompatible_shapes, "ring hom entry range");
    if (table[r.one] != s.one) fail(errc::not_a_ring_hom, "does not preserve 1");
    for (int a = 0; a < r.n; ++a)
      for (int b = 0; b < r.n; ++b) {
        if (table[r.add[a][b]] != s.add[table[a]][table[b]])
          fail(errc::not_a_ring_hom,
               "f(" + r.names[a] + " + " + r.names[b] + ") mismatch");
        if (table[r.mul[a][b]] != s.mul[table[a]][table[b]])
          fail(errc::not_a_ring_hom,
               "f(" + r.names[a] + " * " + r.names[b] + ") mismatch");
      }
  }

  bool surjective() const {
    std::vector<bool> hit(target->n, false);
    for (int v : table) hit[v] = true;
    for (bool h : hit)
      if (!h) return false;
    return true;
  }
};

/// Quotient ring R/I with the quotient homomorphism.
struct QuotientRing {
  RingPtr ring;
  std::vector<int> coset_of;  // R element -> R/I element
};

inline QuotientRing quotient_ring(RingPtr src, uint64_t ideal_mask,
                                  int cap = kDefaultRingCap) {
  const FiniteRing& r = *src;
  if (!is_ideal(r, ideal_mask))
    fail(errc::validation_error, r.describe(ideal_mask) + " is not an ideal");
  std::vector<int> coset_of(r.n, -1);
  std::vector<int> reps;
  for (int a = 0; a < r.n; ++a) {
    if (coset_of[a] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int i = 0; i < r.n; ++i)
      if (ideal_mask >> i & 1) coset_of[r.add[a][i]] = c;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::string> names(m);
  std::vector<std::vector<int>> add(m, std::vector<int>(m)), mul(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i) {
    names[i] = r.names[reps[i]] + "+I";
    for (int j = 0; j < m; ++j) {
      add[i][j] = coset_of[r.add[reps[i]][reps[j]]];
      mul[i][j] = coset_of[r.mul[reps[i]][reps[j]]];
    }
  }
  QuotientRing out;
  out.ring = make_ring(std::move(names), std::move(add), std::move(mul), cap);
  out.coset_of = std::move(coset_of);
  return out;
}

inline RingHom quotient_hom(RingPtr src, const QuotientRing& q) {
  return RingHom(std::move(src), q.ring, q.coset_of);
}

/// A surjective ring homomorphism induces the strong geometric morphism
/// J -> <f(J)> between the ideal quantales.
inline MonotoneMap induced_surjection_morphism(const RingHom& f,
                                               const IdealQuantale& src,
                                               const IdealQuantale& tgt) {
  if (!f.surjective()) fail(errc::not_surjective, "ring hom is not surjective");
  if (f.source.get() != src.ring.get() || f.target.get() != tgt.ring.get())
    fail(errc::incompatible_shapes, "ideal quantales do not match the hom");
  std::vector<int> tab(src.quantale->n);
  for (int i = 0; i < src.quantale->n; ++i) {
    uint64_t img = 0;
    for (int e = 0; e < f.source->n; ++e)
      if (src.ideals[i] >> e & 1) img |= uint64_t(1) << f.table[e];
    tab[i] = tgt.index_of(ideal_generated_by(*tgt.ring, img));
  }
  return MonotoneMap(src.quantale, tgt.quantale, std::move(tab));
}

}  // namespace qcech
