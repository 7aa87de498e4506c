// Functional equation and Hecke average of the RM theta function for
// L = 4 O_K in Q(sqrt 2).

#include <iostream>

#include "rmlab/theta/theta.hpp"

using namespace rmlab;

int main() {
  const PrecisionCtx ctx(128, 1e-30);
  const hp::Bits b = ctx.bits();
  QuadField K(2);
  Pseudolattice L = Pseudolattice(K, QuadElem(K, 1), QuadElem::omega(K)).scaled(QuadElem(K, 4));
  const QuadElem l0(K, 1), m0(K, 0);
  const QuadElem eps = find_theta_unit(L, l0, m0);
  std::cout << "unit " << eps << "\n";
  for (const char* v : {"1", "2"}) {
    const Complex tau(Real(0, b), Real::from_string(v, b));
    RMThetaSpec s{L, l0, m0, Complex(Real(1, b)), eps, tau};
    IdentityCheck fe = functional_equation_Theta(s, ctx);
    HeckeAverage h = hecke_average_check(s, ctx);
    std::cout << "v = " << v << "i\n"
              << "  Theta(v)            " << fe.lhs.to_string(25) << "\n"
              << "  transformed side    " << fe.rhs.to_string(25) << "  residual " << fe.residual.to_double() << "\n"
              << "  average over t      " << h.averaged.to_string(25) << "  residual " << h.residual.to_double()
              << " with " << h.nodes << " nodes\n";
  }
}
