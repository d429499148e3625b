// Socle of Z(F_2 SL(2,3)) and the affine criterion, printed to stdout.

#include <iostream>

#include "soclelab/structure.hpp"

int main() {
  using namespace soclelab;
  const FiniteGroup g = sl2_group(3);
  GroupContext ctx = GroupContext::build(g, 2);
  std::cout << "classes " << ctx.algebra.class_count() << ", dim J " << ctx.jacobson.dim() << ", dim soc "
            << ctx.socle.dim() << "\n";
  std::cout << "soc(ZFG) is an ideal of FG: " << (ctx.ideal.direct ? "yes" : "no") << "\n";
  for (std::size_t r = 0; r < ctx.socle.dim(); ++r) {
    std::cout << "  ";
    for (Residue x : ctx.socle.space.basis().row(r)) std::cout << x;
    std::cout << "\n";
  }
  TheoremCReport c = check_theorem_C(ctx);
  std::cout << "D = AGL(1,4): " << c.cond_agl << ", C_H(G'') != 1: " << c.cond_chg
            << ", G' Camina: " << c.cond_camina << "\n";
  return c.predicted == c.direct ? 0 : 1;
}
