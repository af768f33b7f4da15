// Acceptance gate: ten independently checkable criteria, one line each.
// Exits nonzero if any criterion fails.
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "qcech/theorems.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace qcech;

namespace {

using Clock = std::chrono::steady_clock;

struct Gate {
  std::ostringstream rep;  // deterministic transcript, no timings
  int failures = 0;

  void line(int id, const std::string& name, bool pass, double secs) {
    if (!pass) ++failures;
    std::cout << "criterion " << id << ": " << (pass ? "pass" : "FAIL") << " - "
              << name << " (" << std::fixed << secs << " s)\n";
  }
};

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool circle_benchmark(std::ostream& rep) {
  SpaceLocale loc = locale_of_space(pseudocircle());
  AbPresheaf f = locally_constant_sheaf(loc, FgAbGroup({Int(0)}));
  ElementCohomology ec = element_cohomology(loc.quantale, loc.quantale->top, f, 2);
  std::vector<int> minimal{loc.index_of(0b0001), loc.index_of(0b0010),
                           loc.index_of(0b0111), loc.index_of(0b1011)};
  std::sort(minimal.begin(), minimal.end());
  bool ok = ec.result.cover.members == minimal &&
            ec.result.groups[0].to_string() == "Z" &&
            ec.result.groups[1].to_string() == "Z" &&
            ec.result.groups[2].to_string() == "0";

  // independent hand-built complex 0 -> Z^4 -> Z^6 -> Z^2 -> 0
  FgAbGroup z4({Int(0), Int(0), Int(0), Int(0)});
  FgAbGroup z6({Int(0), Int(0), Int(0), Int(0), Int(0), Int(0)});
  FgAbGroup z2({Int(0), Int(0)});
  Mat d0(6, 4), d1(2, 6);
  d0(0, 0) = -1; d0(0, 2) = 1;
  d0(1, 0) = -1; d0(1, 3) = 1;
  d0(2, 1) = -1; d0(2, 2) = 1;
  d0(3, 1) = -1; d0(3, 3) = 1;
  d0(4, 2) = -1; d0(4, 3) = 1;
  d0(5, 2) = -1; d0(5, 3) = 1;
  d1(0, 0) = 1; d1(0, 1) = -1; d1(0, 4) = 1;
  d1(1, 2) = 1; d1(1, 3) = -1; d1(1, 5) = 1;
  IntComplex oracle({z4, z6, z2}, {GroupHom(z4, z6, d0), GroupHom(z6, z2, d1)});
  for (int qd = 0; qd < 3; ++qd)
    ok = ok && groups_isomorphic(oracle.cohomology(qd).h, ec.result.groups[qd]);
  ok = ok && (4 - 6 + 2 == 0);
  rep << "circle H = [" << ec.result.groups[0].to_string() << ", "
      << ec.result.groups[1].to_string() << ", " << ec.result.groups[2].to_string()
      << "] over " << ec.covers_enumerated << " covers\n";
  return ok;
}

bool components_idempotents(std::ostream& rep) {
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    SpaceLocale loc = locale_of_space(discrete_space(k));
    AbPresheaf f = locally_constant_sheaf(loc, FgAbGroup({Int(0)}));
    ElementCohomology space_side =
        element_cohomology(loc.quantale, loc.quantale->top, f, 0);
    FgAbGroup zk(std::vector<Int>(k, Int(0)));
    ok = ok && groups_isomorphic(space_side.result.groups[0], zk);

    IdealQuantale iq = ideal_quantale(function_ring(2, k));
    MonotoneMap tau = tau_map(iq, loc);
    TheoremReport main = verify_main_iso(tau, f, 0);
    ok = ok && main.passed();
    AbPresheaf pulled = pullback_presheaf(f, tau);
    ElementCohomology ring_side =
        element_cohomology(iq.quantale, iq.quantale->top, pulled, 0);
    ok = ok && groups_isomorphic(ring_side.result.groups[0], zk);

    int idems = 0;
    RingPtr r = function_ring(2, k);
    for (int e = 0; e < r->n; ++e)
      if (r->mul[e][e] == e) ++idems;
    ok = ok && idems == (1 << k);
    rep << "k=" << k << " H0 space " << space_side.result.groups[0].to_string()
        << " ring " << ring_side.result.groups[0].to_string() << " idempotents "
        << idems << "\n";
  }
  return ok;
}

bool tau_theta_suite(std::ostream& rep) {
  bool ok = true;
  for (auto [q, k] : {std::pair{2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    TheoremReport r = verify_tau_theta(q, k);
    ok = ok && r.passed();
    rep << r.to_text();
  }
  return ok;
}

bool cover_iso_suite(std::ostream& rep) {
  bool ok = true;
  for (int k : {2, 3}) {
    IdealQuantale iq = ideal_quantale(function_ring(2, k));
    SpaceLocale loc = locale_of_space(discrete_space(k));
    AbPresheaf f = locally_constant_sheaf(loc, FgAbGroup({Int(0)}));
    int checked = 0, mismatches = 0;
    for (const Cover& c : enumerate_covers(iq.quantale, iq.quantale->top)) {
      TheoremReport r = verify_cover_iso(iq, loc, c, f);
      ++checked;
      if (!r.passed()) ++mismatches;
    }
    rep << "F_2^" << k << ": " << checked << " covers, " << mismatches
        << " mismatches\n";
    ok = ok && checked > 0 && mismatches == 0;
  }
  return ok;
}

bool main_iso_suite(std::ostream& rep) {
  int passing = 0, conclusion_failures = 0;
  for (const auto& inst : corpus::main_iso_corpus()) {
    TheoremReport r = verify_main_iso(inst.fstar, inst.sheaf);
    if (!r.hypotheses_pass()) continue;
    ++passing;
    if (!r.conclusion || !*r.conclusion) {
      ++conclusion_failures;
      rep << "FAIL " << inst.name << "\n" << r.to_text();
    }
  }
  rep << passing << " hypothesis-passing instances, " << conclusion_failures
      << " conclusion failures\n";
  return passing >= 50 && conclusion_failures == 0;
}

bool homological_core(std::ostream& rep) {
  bool ok = true;
  // d o d = 0 on complexes built over the shared corpus
  int complexes = 0;
  for (const auto& inst : corpus::sheaf_corpus()) {
    for (const Cover& c : enumerate_covers(inst.q, inst.q->top)) {
      CechComplex cx = build_complex(c, inst.sheaf);
      for (size_t qd = 0; qd + 1 < cx.complex.diffs.size(); ++qd)
        ok = ok && hom_is_zero(compose(cx.complex.diffs[qd + 1], cx.complex.diffs[qd]));
      ++complexes;
      if (complexes >= 200) break;  // plenty; keep the runtime flat
    }
    if (complexes >= 200) break;
  }

  std::mt19937 rng(20240817);
  int snf_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Mat m = oracles::random_matrix(rng, 8, 10);
    SnfResult s = smith_normal_form(m);
    if (!(mat_mul(mat_mul(s.u, m), s.v).a == s.d.a)) ++snf_bad;
    if (!(mat_mul(s.u, s.uinv).a == Mat::identity(m.rows).a)) ++snf_bad;
    if (!(mat_mul(s.v, s.vinv).a == Mat::identity(m.cols).a)) ++snf_bad;
    for (int i = 0; i + 1 < std::min(s.d.rows, s.d.cols); ++i)
      if (s.diag(i + 1) != 0 && s.diag(i) != 0 && s.diag(i + 1) % s.diag(i) != 0)
        ++snf_bad;
  }

  int sq_bad = 0;
  for (int t = 0; t < 200; ++t) {
    auto inst = oracles::random_subquotient_instance(rng);
    Subquotient sq = subquotient(inst.g, inst.f);
    if (!oracles::subquotient_matches_cosets(inst.g, inst.f, sq)) ++sq_bad;
  }
  rep << complexes << " complexes, snf defects " << snf_bad << ", subquotient defects "
      << sq_bad << "\n";
  return ok && snf_bad == 0 && sq_bad == 0;
}

bool sheaf_condition_suite(std::ostream& rep) {
  bool ok = true;
  for (const auto& inst : corpus::sheaf_corpus()) {
    SheafReport constant = sheaf_check(constant_presheaf(inst.q, FgAbGroup({Int(0)})));
    bool exactly_bottom = !constant.is_sheaf && constant.failures.size() == 1 &&
                          constant.failures[0].element == inst.q->bottom &&
                          constant.failures[0].members.empty();
    SheafReport local = sheaf_check(inst.sheaf);
    ok = ok && exactly_bottom && local.is_sheaf;
    if (!exactly_bottom || !local.is_sheaf) rep << "FAIL " << inst.name << "\n";
  }
  // certified pullbacks
  for (int k = 1; k <= 2; ++k) {
    IdealQuantale iq = ideal_quantale(function_ring(2, k));
    SpaceLocale loc = locale_of_space(discrete_space(k));
    AbPresheaf pulled = pullback_presheaf(
        locally_constant_sheaf(loc, FgAbGroup({Int(0), Int(6)})), tau_map(iq, loc));
    ok = ok && sheaf_check(pulled).is_sheaf;
  }
  rep << "sheaf condition checked on " << corpus::sheaf_corpus().size()
      << " corpus quantales\n";
  return ok;
}

bool homotopy_suite(std::ostream& rep) {
  int pairs = 0, defects = 0;
  for (const auto& inst : corpus::sheaf_corpus()) {
    std::vector<Cover> covers = enumerate_covers(inst.q, inst.q->top);
    if (covers.size() > 12) continue;  // keep the quadratic sweep bounded
    for (const Cover& fine : covers)
      for (const Cover& coarse : covers) {
        if (!find_refinement(fine, coarse)) continue;
        HomotopyCheckResult h = homotopy_uniqueness_check(fine, coarse, inst.sheaf);
        if (h.witnesses < 2) continue;
        ++pairs;
        if (!h.all_equal) ++defects;
      }
  }
  rep << pairs << " multi-witness cover pairs, " << defects << " disagreements\n";
  return pairs > 0 && defects == 0;
}

bool quotient_suite(std::ostream& rep) {
  int checked = 0, bad = 0;
  for (int n = 2; n <= 12; ++n) {
    RingPtr r = zmod_ring(n);
    for (int g = 2; g < n; ++g) {
      uint64_t mask = ideal_generated_by(*r, uint64_t(1) << g);
      if (mask == 1 || mask == (uint64_t(1) << n) - 1) continue;
      TheoremReport rep2 = verify_quotient_direct_image(r, mask);
      ++checked;
      if (!rep2.passed()) ++bad;
    }
  }
  rep << checked << " (R, I) pairs, " << bad << " failures\n";
  return checked > 0 && bad == 0;
}

std::string run_criteria(Gate* gate) {
  std::ostringstream rep;
  struct Entry {
    std::string name;
    bool (*fn)(std::ostream&);
  };
  const Entry entries[] = {
      {"pseudocircle benchmark [Z, Z, 0] with hand-built oracle", circle_benchmark},
      {"components = rank H0, 2^k idempotents on F_2^k", components_idempotents},
      {"tau/theta adjunction suite", tau_theta_suite},
      {"cochain identity on all covers of the unit ideal", cover_iso_suite},
      {"invariance corpus >= 50 instances, 0 failures", main_iso_suite},
      {"d o d = 0, SNF recomposition, subquotient oracle", homological_core},
      {"sheaf condition: constant fails only at bottom", sheaf_condition_suite},
      {"homotopy uniqueness across witness choices", homotopy_suite},
      {"quotient direct image J + I for all Z/n", quotient_suite},
  };
  int id = 1;
  for (const auto& e : entries) {
    auto t0 = Clock::now();
    bool pass = e.fn(rep);
    if (gate) gate->line(id, e.name, pass, elapsed(t0));
    ++id;
  }
  return rep.str();
}

}  // namespace

int main() {
  std::cout.setf(std::ios::fixed);
  std::cout.precision(2);
  Gate gate;
  auto t0 = Clock::now();
  std::string first = run_criteria(&gate);
  std::string second = run_criteria(nullptr);
  gate.line(10, "byte-identical reports across repeated runs", first == second,
            elapsed(t0));
  return gate.failures == 0 ? 0 : 1;
}
