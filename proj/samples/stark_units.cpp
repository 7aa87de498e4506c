// Stark numbers of the narrow ray classes of Q(sqrt 5) modulo 4, and the
// polynomial they satisfy.

#include <iostream>

#include "rmlab/stark/stark.hpp"

using namespace rmlab;

int main() {
  const PrecisionCtx ctx(128, 1e-30);
  QuadField K(5);
  ConjectureReport rep = conjecture_check(K, QuadIdeal::principal(QuadElem(K, 4)), ctx);
  for (const ClassStark& c : rep.classes) {
    std::cout << "class " << c.index << " rep " << c.representative.to_string() << "  S0 = " << c.stark.s0.to_string(30)
              << "  (route gap " << c.stark.route_gap.to_double() << ")\n";
  }
  std::cout << "prod (X - S0):\n";
  for (const CoefficientReport& c : rep.coefficients) {
    std::cout << "  X^" << c.degree << ": " << c.value.to_string(25);
    if (c.recognized) std::cout << "  = " << c.recognized->value(5);
    std::cout << "\n";
  }
  std::cout << "second ideal in class 0: " << rep.second_representative.to_string() << ", |S0 difference| "
            << rep.invariance_gap.to_double() << "\n";
}
