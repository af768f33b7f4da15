#include <catch2/catch_amalgamated.hpp>

#include "qcech/rings.hpp"
#include "qcech/spaces.hpp"

using namespace qcech;

TEST_CASE("topology validation") {
  REQUIRE_THROWS_AS(make_space({"x", "y"}, {0b01, 0b11}), error);  // no empty set
  REQUIRE_THROWS_AS(make_space({"x", "y"}, {0, 0b01}), error);     // no full set
  // union of {x} and {y} missing
  REQUIRE_THROWS_AS(make_space({"x", "y", "z"}, {0, 0b001, 0b010, 0b111}), error);
  FiniteSpace s = sierpinski_space();
  REQUIRE(s.opens == std::vector<uint64_t>{0, 0b01, 0b11});
  REQUIRE(s.min_neighborhood(0) == 0b01);
  REQUIRE(s.min_neighborhood(1) == 0b11);
}

TEST_CASE("pseudocircle components") {
  FiniteSpace x = pseudocircle();
  REQUIRE(x.opens.size() == 7);
  // {a,b} is two components, each open {a,b,c} and {a,b,d} is connected
  REQUIRE(components(x, 0b0011) ==
          std::vector<uint64_t>{0b0001, 0b0010});
  REQUIRE(components(x, 0b0111) == std::vector<uint64_t>{0b0111});
  REQUIRE(components(x, 0b1111) == std::vector<uint64_t>{0b1111});
  REQUIRE(components(x, 0).empty());
}

TEST_CASE("discrete space components are singletons") {
  FiniteSpace x = discrete_space(3);
  REQUIRE(components(x, 0b111) ==
          std::vector<uint64_t>{0b001, 0b010, 0b100});
}

TEST_CASE("locale of a space is a geometric locale") {
  SpaceLocale loc = locale_of_space(pseudocircle());
  REQUIRE(loc.quantale->n == 7);
  REQUIRE(loc.quantale->flags.locale);
  REQUIRE(loc.quantale->flags.geometric);
  int u = loc.index_of(0b0111);
  int v = loc.index_of(0b1011);
  REQUIRE(loc.quantale->times(u, v) == loc.index_of(0b0011));
  REQUIRE(loc.quantale->join_pair(u, v) == loc.index_of(0b1111));
}

TEST_CASE("ring constructions and validation") {
  RingPtr z6 = zmod_ring(6);
  REQUIRE(z6->n == 6);
  REQUIRE(z6->mul[2][3] == 0);
  REQUIRE_THROWS_AS(function_ring(4, 1), error);  // 4 is not prime
  RingPtr f22 = function_ring(2, 2);
  REQUIRE(f22->n == 4);
  REQUIRE(f22->is_function_ring());
  int idems = 0;
  for (int e = 0; e < f22->n; ++e)
    if (f22->mul[e][e] == e) ++idems;
  REQUIRE(idems == 4);
}

TEST_CASE("ideal enumeration") {
  RingPtr z6 = zmod_ring(6);
  REQUIRE(enumerate_ideals(*z6).size() == 4);  // (0), (2), (3), (1)
  RingPtr z4 = zmod_ring(4);
  IdealQuantale iq = ideal_quantale(z4);
  REQUIRE(iq.quantale->n == 3);  // the chain (0) < (2) < (1)
  // the chain structure
  REQUIRE(iq.quantale->bottom == iq.index_of(0b0001));
  REQUIRE(iq.quantale->top == iq.index_of(0b1111));
  int mid = iq.index_of(0b0101);  // {0, 2}
  REQUIRE(iq.quantale->le(iq.quantale->bottom, mid));
  REQUIRE(iq.quantale->le(mid, iq.quantale->top));
  // (2)*(2) = (0) in Z/4
  REQUIRE(iq.quantale->times(mid, mid) == iq.quantale->bottom);
  REQUIRE(iq.quantale->flags.semicartesian);
  REQUIRE(iq.quantale->flags.commutative);
  REQUIRE(iq.quantale->flags.unital);
  REQUIRE_FALSE(iq.quantale->flags.idempotent);
}

TEST_CASE("divisor model of the ideals of Z/n matches the generic one") {
  for (int n : {4, 6, 12}) {
    ZmodIdeals zi = ideals_of_zmod(n);
    IdealQuantale iq = ideal_quantale(zmod_ring(n));
    REQUIRE(zi.quantale->n == iq.quantale->n);
    // both are lattices of divisors; compare full tables through the
    // divisor <-> ideal-mask correspondence
    std::vector<int> match(zi.quantale->n);
    for (int i = 0; i < zi.quantale->n; ++i) {
      uint64_t mask = 0;
      for (int e = 0; e < n; ++e)
        if (e % zi.divisors[i] == 0) mask |= uint64_t(1) << e;
      match[i] = iq.index_of(mask);
    }
    for (int i = 0; i < zi.quantale->n; ++i)
      for (int j = 0; j < zi.quantale->n; ++j) {
        REQUIRE(zi.quantale->le(i, j) == iq.quantale->le(match[i], match[j]));
        REQUIRE(match[zi.quantale->times(i, j)] ==
                iq.quantale->times(match[i], match[j]));
      }
  }
}

TEST_CASE("tau and theta on F_2^2") {
  RingPtr r = function_ring(2, 2);
  // elements are pairs over F_2: index = a + 2b for (a, b)
  REQUIRE(tau_open(*r, 0b0001) == 0);           // zero ideal -> empty set
  REQUIRE(tau_open(*r, 0b0011) == 0b01);        // {(0,0),(1,0)} -> first coord
  REQUIRE(tau_open(*r, 0b1111) == 0b11);        // unit ideal -> whole space
  REQUIRE(theta_ideal(*r, 0) == 0b0001);
  REQUIRE(theta_ideal(*r, 0b01) == 0b0011);
  REQUIRE(theta_ideal(*r, 0b11) == 0b1111);
}

TEST_CASE("quotient ring and induced morphism") {
  RingPtr z4 = zmod_ring(4);
  uint64_t two = ideal_generated_by(*z4, 0b0100);  // (2) = {0,2}
  REQUIRE(two == 0b0101);
  QuotientRing qr = quotient_ring(z4, two);
  REQUIRE(qr.ring->n == 2);
  RingHom h = quotient_hom(z4, qr);
  REQUIRE(h.surjective());
  IdealQuantale src = ideal_quantale(z4);
  IdealQuantale tgt = ideal_quantale(qr.ring);
  MonotoneMap f = induced_surjection_morphism(h, src, tgt);
  REQUIRE(f(src.quantale->bottom) == tgt.quantale->bottom);
  REQUIRE(f(src.quantale->top) == tgt.quantale->top);
  // (2) maps to the zero ideal of Z/2
  REQUIRE(f(src.index_of(two)) == tgt.quantale->bottom);
}

TEST_CASE("ring caps") {
  REQUIRE_THROWS_AS(zmod_ring(65), error);
  try {
    function_ring(3, 4);
    FAIL("expected cap rejection");
  } catch (const error& e) {
    REQUIRE(e.kind() == errc::size_cap_exceeded);
  }
}
