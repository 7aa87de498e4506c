#pragma once

// Lattice point enumeration in the (x, x') plane.  Points are l0 + a l1 + b l2
// with integer a, b; the real embeddings are only used to bound the search,
// callers take every decision that matters with exact arithmetic.

#include <cmath>
#include <cstdint>
#include <vector>

#include "rmlab/quadfield/field.hpp"

namespace rmlab {

struct EmbeddedBasis {
  double x0, x0c;  // l0 and l0'
  double x1, x1c;
  double x2, x2c;

  EmbeddedBasis(const QuadElem& l0, const QuadElem& l1, const QuadElem& l2)
      : x0(l0.to_double(0)), x0c(l0.to_double(1)), x1(l1.to_double(0)), x1c(l1.to_double(1)),
        x2(l2.to_double(0)), x2c(l2.to_double(1)) {}
};

namespace detail {

// b-range for fixed a from |c + b m| <= B.
inline bool strip(double c, double m, double B, double& lo, double& hi) {
  if (m == 0.0) {
    if (std::fabs(c) > B) return false;
    lo = -INFINITY;
    hi = INFINITY;
    return true;
  }
  double u = (-B - c) / m, v = (B - c) / m;
  lo = std::min(u, v);
  hi = std::max(u, v);
  return true;
}

}  // namespace detail

/// Calls cb(a, b) for every lattice point with |x| <= Bx and |x'| <= Bxc
/// (plus a small safety margin).
template <class F>
void for_each_box_point(const EmbeddedBasis& e, double Bx, double Bxc, F&& cb) {
  const double det = e.x1 * e.x2c - e.x2 * e.x1c;
  if (det == 0.0) throw DomainError("degenerate lattice basis");
  // a = ( x2c (x - x0) - x2 (x' - x0c) ) / det
  const double ac = (e.x2c * (-e.x0) - e.x2 * (-e.x0c)) / det;
  const double arad = (std::fabs(e.x2c) * Bx + std::fabs(e.x2) * Bxc) / std::fabs(det);
  const long amin = static_cast<long>(std::floor(ac - arad)) - 1;
  const long amax = static_cast<long>(std::ceil(ac + arad)) + 1;
  const double mB = Bx * (1 + 1e-9) + 1e-9, mBc = Bxc * (1 + 1e-9) + 1e-9;
  for (long a = amin; a <= amax; ++a) {
    double lo1, hi1, lo2, hi2;
    if (!detail::strip(e.x0 + a * e.x1, e.x2, mB, lo1, hi1)) continue;
    if (!detail::strip(e.x0c + a * e.x1c, e.x2c, mBc, lo2, hi2)) continue;
    const long bmin = static_cast<long>(std::floor(std::max(lo1, lo2))) - 1;
    const long bmax = static_cast<long>(std::ceil(std::min(hi1, hi2))) + 1;
    for (long b = bmin; b <= bmax; ++b) cb(a, b);
  }
}

/// Calls cb(a, b) once for every lattice point with |x x'| <= Nmax whose
/// ratio |x / x'| lies in [rlo, rhi] up to a relative margin.  The region is
/// covered by slices of ratio 4, and each point is assigned to one slice.
template <class F>
void for_each_hyperbolic_point(const EmbeddedBasis& e, double Nmax, double rlo, double rhi, F&& cb) {
  if (!(rlo > 0) || !(rhi >= rlo)) throw DomainError("bad ratio window");
  const double lo = rlo * (1 - 1e-9), hi = rhi * (1 + 1e-9);
  std::vector<double> cuts{lo};
  while (cuts.back() * 4 < hi) cuts.push_back(cuts.back() * 4);
  cuts.push_back(hi);
  const double Nm = Nmax * (1 + 1e-9) + 1e-12;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double r0 = cuts[j], r1 = cuts[j + 1];
    const bool last = j + 2 == cuts.size();
    const double Bx = std::sqrt(r1 * Nm), Bxc = std::sqrt(Nm / r0);
    for_each_box_point(e, Bx, Bxc, [&](long a, long b) {
      const double x = e.x0 + a * e.x1 + b * e.x2;
      const double xc = e.x0c + a * e.x1c + b * e.x2c;
      if (x == 0.0 && xc == 0.0) {
        if (j == 0) cb(a, b);  // the zero element, reported once
        return;
      }
      if (std::fabs(x * xc) > Nm) return;
      const double rho = std::fabs(x) / std::fabs(xc);
      if (rho < r0) return;
      if (last ? rho > r1 : rho >= r1) return;
      cb(a, b);
    });
  }
}

}  // namespace rmlab
