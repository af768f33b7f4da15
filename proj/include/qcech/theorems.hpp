#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcech/cech.hpp"
#include "qcech/morphisms.hpp"
#include "qcech/presheaf.hpp"
#include "qcech/rings.hpp"
#include "qcech/spaces.hpp"

namespace qcech {

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  std::string witness;
};

/// Machine-checked verdict for one theorem instance. The conclusion is
/// only evaluated when every hypothesis passes.
struct TheoremReport {
  std::string theorem_id;
  std::string instance;
  std::vector<HypothesisCheck> hypotheses;
  std::optional<bool> conclusion;  // nullopt = skipped
  std::vector<std::string> details;

  bool hypotheses_pass() const {
    for (const auto& h : hypotheses)
      if (!h.pass) return false;
    return true;
  }
  bool passed() const { return hypotheses_pass() && conclusion && *conclusion; }

  std::string to_text() const {
    std::ostringstream os;
    os << "theorem " << theorem_id << "\ninstance " << instance << "\n";
    for (const auto& h : hypotheses) {
      os << "  hypothesis " << h.name << ": " << (h.pass ? "pass" : "fail");
      if (!h.pass && !h.witness.empty()) os << " [" << h.witness << "]";
      os << "\n";
    }
    if (!conclusion)
      os << "  conclusion: skipped\n";
    else
      os << "  conclusion: " << (*conclusion ? "pass" : "FAIL") << "\n";
    for (const auto& d : details) os << "  " << d << "\n";
    return os.str();
  }
};

/// Change of base: pulling a sheaf back along a geometric morphism's
/// inverse image yields a sheaf.
inline TheoremReport verify_change_of_base(const AbPresheaf& f, const MonotoneMap& m,
                                           int downset_cap = 16) {
  TheoremReport rep;
  rep.theorem_id = "change-of-base";
  rep.instance = "map into base quantale with " + std::to_string(f.base->n) +
                 " elements from quantale with " + std::to_string(m.source->n) +
                 " elements";
  SheafReport sr = sheaf_check(f, nullptr, downset_cap);
  rep.hypotheses.push_back({"F is a sheaf", sr.is_sheaf,
                            sr.is_sheaf ? "" : "fails at some cover"});
  GeometricCertificate cert = certify_geometric(m);
  rep.hypotheses.push_back({"f* is geometric", cert.geometric(),
                            cert.join_witness + cert.unit_witness + cert.weak_witness});
  if (!rep.hypotheses_pass()) return rep;

  AbPresheaf pulled = pullback_presheaf(f, m);
  SheafReport pr = sheaf_check(pulled, nullptr, downset_cap);
  rep.conclusion = pr.is_sheaf;
  rep.details.push_back("covers checked on pullback: " + std::to_string(pr.covers_checked));
  return rep;
}

/// The adjunction between ideals of F_q^k and opens of the k-point
/// discrete space: every preservation claim plus the adjunction law,
/// exhaustively.
inline TheoremReport verify_tau_theta(int q, int k, int cap = kDefaultRingCap) {
  TheoremReport rep;
  rep.theorem_id = "tau-theta";
  rep.instance = "function ring F_" + std::to_string(q) + "^" + std::to_string(k);

  RingPtr ring = function_ring(q, k, cap);
  IdealQuantale iq = ideal_quantale(ring);
  SpaceLocale loc = locale_of_space(discrete_space(k));
  MonotoneMap tau = tau_map(iq, loc);
  MonotoneMap theta = theta_map(loc, iq);
  const Quantale& qi = *iq.quantale;
  const Quantale& ql = *loc.quantale;

  auto check = [&](const std::string& name, bool ok, const std::string& wit) {
    rep.hypotheses.push_back({name, ok, ok ? "" : wit});
  };

  // tau preserves arbitrary suprema: exhaustive over all ideal subsets
  bool tau_sup = true;
  std::string tau_sup_w;
  for (uint64_t s = 0; s < (uint64_t(1) << qi.n) && tau_sup; ++s) {
    std::vector<int> subset, image;
    for (int i = 0; i < qi.n; ++i)
      if (s >> i & 1) {
        subset.push_back(i);
        image.push_back(tau(i));
      }
    if (tau(qi.join(subset)) != ql.join(image)) {
      tau_sup = false;
      tau_sup_w = "subset mask " + std::to_string(s);
    }
  }
  check("tau preserves arbitrary suprema", tau_sup, tau_sup_w);

  bool tau_mul = true;
  std::string tau_mul_w;
  for (int a = 0; a < qi.n && tau_mul; ++a)
    for (int b = 0; b < qi.n && tau_mul; ++b)
      if (tau(qi.times(a, b)) != ql.times(tau(a), tau(b))) {
        tau_mul = false;
        tau_mul_w = qi.label(a) + " * " + qi.label(b);
      }
  check("tau preserves multiplication", tau_mul, tau_mul_w);
  check("tau preserves unity", tau(qi.top) == ql.top, "tau(R) != X");

  bool th_sup = true;
  std::string th_sup_w;
  for (uint64_t s = 0; s < (uint64_t(1) << ql.n) && th_sup; ++s) {
    std::vector<int> subset, image;
    for (int i = 0; i < ql.n; ++i)
      if (s >> i & 1) {
        subset.push_back(i);
        image.push_back(theta(i));
      }
    if (theta(ql.join(subset)) != qi.join(image)) {
      th_sup = false;
      th_sup_w = "subset mask " + std::to_string(s);
    }
  }
  check("theta preserves arbitrary suprema", th_sup, th_sup_w);
  check("theta preserves unity", theta(ql.top) == qi.top, "theta(X) != R");

  bool adj = true;
  std::string adj_w;
  for (int i = 0; i < qi.n && adj; ++i)
    for (int u = 0; u < ql.n && adj; ++u)
      if (ql.le(tau(i), u) != qi.le(i, theta(u))) {
        adj = false;
        adj_w = qi.label(i) + " vs " + ql.label(u);
      }
  check("tau left adjoint to theta", adj, adj_w);

  bool th_mul = true;
  std::string th_mul_w;
  for (int u = 0; u < ql.n && th_mul; ++u)
    for (int v = 0; v < ql.n && th_mul; ++v)
      if (!qi.le(qi.times(theta(u), theta(v)), theta(ql.times(u, v)))) {
        th_mul = false;
        th_mul_w = ql.label(u) + ", " + ql.label(v);
      }
  check("theta(U)*theta(V) <= theta(U n V)", th_mul, th_mul_w);

  rep.conclusion = rep.hypotheses_pass();
  return rep;
}

/// Cochain-level identity: the complex of a cover of the unit ideal with
/// coefficients F o tau equals the complex of the tau-image cover with
/// coefficients F, degreewise and matrix-exactly.
inline TheoremReport verify_cover_iso(const IdealQuantale& iq, const SpaceLocale& loc,
                                      const Cover& cover, const AbPresheaf& f_on_space) {
  TheoremReport rep;
  rep.theorem_id = "cover-iso";
  {
    std::ostringstream os;
    os << "cover {";
    for (size_t i = 0; i < cover.members.size(); ++i)
      os << (i ? "," : "") << iq.quantale->label(cover.members[i]);
    os << "} of " << iq.quantale->label(cover.element);
    rep.instance = os.str();
  }
  MonotoneMap tau = tau_map(iq, loc);
  AbPresheaf pulled = pullback_presheaf(f_on_space, tau);
  Cover tau_cover = pullback_cover(tau, cover);
  rep.hypotheses.push_back({"tau image is a cover", true, ""});

  CechComplex ring_side = build_complex(cover, pulled);
  // compare against the same tuple layout pushed through tau; the
  // tau-image cover may collapse members, so the degreewise identity is
  // asserted on the uncollapsed tuple complex
  bool equal = true;
  std::string wit;
  const auto& tuples = ring_side.tuples;
  for (size_t qd = 0; qd < tuples.size() && equal; ++qd) {
    for (size_t ti = 0; ti < tuples[qd].size() && equal; ++ti) {
      int ring_elem = ring_side.tuple_elems[qd][ti];
      std::vector<int> img;
      for (int i : tuples[qd][ti]) img.push_back(tau(cover.members[i]));
      int space_elem = -1;
      for (int x : img)
        space_elem = space_elem < 0 ? x : loc.quantale->times(space_elem, x);
      if (!(pulled.value(ring_elem) == f_on_space.value(space_elem))) {
        equal = false;
        wit = "degree " + std::to_string(qd) + " tuple " + std::to_string(ti);
      }
      if (equal && tau(ring_elem) != space_elem) {
        equal = false;
        wit = "tau does not commute with the tuple product";
      }
    }
  }
  rep.hypotheses.push_back({"degreewise groups identical", equal, wit});
  if (!rep.hypotheses_pass()) return rep;

  // cohomology isomorphism (tau-image cover, possibly collapsed)
  CohomologyResult a = cover_cohomology(cover, pulled);
  CohomologyResult b = cover_cohomology(tau_cover, f_on_space);
  bool iso = true;
  size_t degrees = std::max(a.groups.size(), b.groups.size());
  for (size_t qd = 0; qd < degrees && iso; ++qd) {
    FgAbGroup ga = qd < a.groups.size() ? a.groups[qd] : FgAbGroup();
    FgAbGroup gb = qd < b.groups.size() ? b.groups[qd] : FgAbGroup();
    if (!groups_isomorphic(ga, gb)) {
      iso = false;
      rep.details.push_back("degree " + std::to_string(qd) + ": " + ga.to_string() +
                            " vs " + gb.to_string());
    }
  }
  rep.conclusion = iso;
  for (size_t qd = 0; qd < a.groups.size(); ++qd)
    rep.details.push_back("H^" + std::to_string(qd) + " = " + a.groups[qd].to_string());
  return rep;
}

/// Main invariance theorem: a strong geometric morphism whose direct image
/// preserves unity and joins induces isomorphic element cohomology at the
/// units.
inline TheoremReport verify_main_iso(const MonotoneMap& fstar, const AbPresheaf& f,
                                     int q_max = -1, int cap = kCoverColimitCap) {
  TheoremReport rep;
  rep.theorem_id = "main-iso";
  rep.instance = "f*: " + std::to_string(fstar.source->n) + "-element quantale -> " +
                 std::to_string(fstar.target->n) + "-element quantale";
  if (fstar.target.get() != f.base.get())
    fail(errc::incompatible_shapes, "sheaf does not live on the map target");

  GeometricCertificate cert = certify_geometric(fstar);
  rep.hypotheses.push_back({"f* strong geometric", cert.strong_geometric(),
                            cert.join_witness + cert.unit_witness + cert.strong_witness});
  if (!cert.preserves_joins) return rep;

  MonotoneMap direct = right_adjoint(fstar);
  DirectImageFlags di = direct_image_preserves(direct);
  rep.hypotheses.push_back({"f_* preserves unity", di.unit, di.unit_witness});
  rep.hypotheses.push_back({"f_* preserves nonempty joins", di.joins, di.join_witness});
  if (!rep.hypotheses_pass()) return rep;

  // proof's refinement step on every enumerated cover of the unit
  bool refine_ok = true;
  std::string refine_w;
  for (const Cover& u : enumerate_covers(f.base, f.base->top, cap)) {
    Cover down = pullback_cover(direct, u);       // f_*(U) covers 1'
    Cover back = pullback_cover(fstar, down);     // f*(f_*(U))
    if (!find_refinement(back, u)) {
      refine_ok = false;
      refine_w = "cover with " + std::to_string(u.size()) + " members";
      break;
    }
  }
  rep.hypotheses.push_back({"f*(f_*(U)) refines U", refine_ok, refine_w});
  if (!refine_ok) return rep;

  AbPresheaf pulled = pullback_presheaf(f, fstar);
  ElementCohomology left =
      element_cohomology(fstar.source, fstar.source->top, pulled, q_max, cap);
  ElementCohomology right =
      element_cohomology(f.base, f.base->top, f, q_max, cap);

  bool iso = true;
  size_t degrees = std::max(left.result.groups.size(), right.result.groups.size());
  for (size_t qd = 0; qd < degrees; ++qd) {
    FgAbGroup ga = qd < left.result.groups.size() ? left.result.groups[qd] : FgAbGroup();
    FgAbGroup gb =
        qd < right.result.groups.size() ? right.result.groups[qd] : FgAbGroup();
    rep.details.push_back("H^" + std::to_string(qd) + ": " + ga.to_string() + " ~ " +
                          gb.to_string());
    if (!groups_isomorphic(ga, gb)) iso = false;
  }
  rep.conclusion = iso;
  return rep;
}

/// Quotient-map direct image: the right adjoint of the induced morphism on
/// ideal quantales is the preimage, equals J + I, and preserves unity and
/// finite sums.
inline TheoremReport verify_quotient_direct_image(RingPtr ring, uint64_t ideal_mask,
                                                  int cap = kDefaultElementCap) {
  TheoremReport rep;
  rep.theorem_id = "quotient-direct-image";
  rep.instance = "R with " + std::to_string(ring->n) + " elements, I = " +
                 ring->describe(ideal_mask);

  QuotientRing qr = quotient_ring(ring, ideal_mask);
  RingHom hom = quotient_hom(ring, qr);
  IdealQuantale src = ideal_quantale(ring, cap);
  IdealQuantale tgt = ideal_quantale(qr.ring, cap);
  MonotoneMap fstar = induced_surjection_morphism(hom, src, tgt);
  GeometricCertificate cert = certify_geometric(fstar);
  rep.hypotheses.push_back({"induced map strong geometric", cert.strong_geometric(),
                            cert.join_witness + cert.unit_witness + cert.strong_witness});
  if (!cert.preserves_joins) return rep;
  MonotoneMap direct = right_adjoint(fstar);

  bool ok = true;
  // f_*(K) is the preimage
  for (int k = 0; k < tgt.quantale->n && ok; ++k) {
    uint64_t pre = 0;
    for (int e = 0; e < ring->n; ++e)
      if (tgt.ideals[k] >> qr.coset_of[e] & 1) pre |= uint64_t(1) << e;
    if (src.ideals[direct(k)] != pre) {
      ok = false;
      rep.details.push_back("f_* differs from preimage at " + tgt.quantale->label(k));
    }
  }
  rep.hypotheses.push_back({"f_* is the preimage map", ok, ""});

  // f_*(f*(J)) = J + I for every ideal J of R
  bool sum_formula = true;
  for (int j = 0; j < src.quantale->n && sum_formula; ++j) {
    uint64_t expected = ideal_generated_by(*ring, src.ideals[j] | ideal_mask);
    if (src.ideals[direct(fstar(j))] != expected) {
      sum_formula = false;
      rep.details.push_back("J + I formula fails at " + src.quantale->label(j));
    }
  }
  rep.hypotheses.push_back({"f_*(f*(J)) = J + I", sum_formula, ""});

  rep.hypotheses.push_back({"f_*(R/I) = R", direct(tgt.quantale->top) == src.quantale->top,
                            "unity is not preserved"});

  // nonempty finite sums reduce to binary ones; the empty sum is genuinely
  // not preserved (f_* of the zero ideal is I)
  bool sums = true;
  std::string sums_w;
  const Quantale& tq = *tgt.quantale;
  for (int a = 0; a < tq.n && sums; ++a)
    for (int b = 0; b < tq.n && sums; ++b)
      if (direct(tq.join_pair(a, b)) !=
          src.quantale->join_pair(direct(a), direct(b))) {
        sums = false;
        sums_w = tq.label(a) + " + " + tq.label(b);
      }
  rep.hypotheses.push_back({"f_* preserves binary sums", sums, sums_w});
  rep.conclusion = rep.hypotheses_pass();
  return rep;
}

/// Observation (not an assertion): rank of H^0 at the unit of an ideal
/// quantale vs the idempotent count of the ring.
struct IdempotentObservation {
  int ring_idempotents = 0;
  int h0_rank = -1;  // -1 when the sheaf construction is unavailable
  bool quantale_geometric = false;
};

inline IdempotentObservation observe_idempotents_vs_h0(RingPtr ring,
                                                       int cap = kCoverColimitCap) {
  IdempotentObservation out;
  for (int e = 0; e < ring->n; ++e)
    if (ring->mul[e][e] == e) ++out.ring_idempotents;
  IdealQuantale iq = ideal_quantale(ring);
  out.quantale_geometric = iq.quantale->flags.geometric;
  if (!out.quantale_geometric) return out;
  SubQuantale idem = idem_locale(iq.quantale);
  // sheaf on the ideal quantale: pull the locally-constant Z sheaf on
  // Idem back along the idempotent approximation
  std::vector<int> approx(iq.quantale->n);
  for (int x = 0; x < iq.quantale->n; ++x) {
    int a = idem_approx(*iq.quantale, x);
    for (int i = 0; i < idem.quantale->n; ++i)
      if (idem.parent_index[i] == a) approx[x] = i;
  }
  MonotoneMap am(iq.quantale, idem.quantale, std::move(approx));
  AbPresheaf sheaf = pullback_presheaf(
      locally_constant_sheaf(idem.quantale, FgAbGroup({Int(0)})), am);
  ElementCohomology h = element_cohomology(iq.quantale, iq.quantale->top, sheaf, 0, cap);
  out.h0_rank = h.result.groups.empty() ? 0 : h.result.groups[0].rank();
  return out;
}

}  // namespace qcech
