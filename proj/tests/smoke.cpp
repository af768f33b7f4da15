#include <iostream>

#include "qcech/cech.hpp"
#include "qcech/theorems.hpp"

int main() {
  using namespace qcech;
  SpaceLocale loc = locale_of_space(pseudocircle());
  AbPresheaf f = locally_constant_sheaf(loc, FgAbGroup({Int(0)}));
  ElementCohomology h = element_cohomology(loc.quantale, loc.quantale->top, f, 2);
  for (const auto& g : h.result.groups) std::cout << g.to_string() << "\n";
  TheoremReport r = verify_tau_theta(2, 2);
  std::cout << r.to_text();
  return r.passed() ? 0 : 1;
}
