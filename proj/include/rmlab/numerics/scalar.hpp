#pragma once

// Small helpers that let numeric templates work on Real and Complex alike.

#include "rmlab/numerics/complex.hpp"

namespace rmlab::hp {

inline double magnitude(const Real& x) { return std::fabs(x.to_double()); }
inline double magnitude(const Complex& z) { return abs(z).to_double(); }

template <class T>
T zero_like(Bits b);
template <>
inline Real zero_like<Real>(Bits b) {
  return Real(b);
}
template <>
inline Complex zero_like<Complex>(Bits b) {
  return Complex(b);
}

}  // namespace rmlab::hp
