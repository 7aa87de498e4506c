// exp(-2 zeta'(0)) for the classes m mod n next to 4 sin^2(pi m/n), and the
// Gibbs states of e(m/n) at beta = 2.

#include <cstdio>

#include "rmlab/bc/bc.hpp"
#include "rmlab/cyclotomic/cyclotomic.hpp"

using namespace rmlab;

int main() {
  const PrecisionCtx ctx(128, 1e-30);
  const long n = 7;
  const hp::Real beta(2, ctx.bits());
  std::printf("%3s %24s %24s %24s\n", "m", "exp(-2 zeta'(0))", "4 sin^2", "phi_2(e(m/7))");
  for (long m = 1; m < n; ++m) {
    StarkQ q = stark_q({m, n}, ctx);
    mpq_class g(m, n);
    g.canonicalize();
    KMSValue k = kms_state(beta, g, 1, ctx);
    std::printf("%3ld %24.17g %24.17g %24.17g\n", m, q.lhs.to_double(), q.rhs.to_double(), k.value.re.to_double());
  }
}
